#include "qseed/families.hpp"
#include "qseed/linalg.hpp"
#include "qseed/serialize.hpp"
#include "qseed/skew_form.hpp"
#include "support/properties.hpp"

#include <gtest/gtest.h>

namespace qseed {
namespace {

TEST(Det, Identity) { EXPECT_EQ(det(IntMatrix::identity(3)), 1); }

TEST(Det, DipperDonkinFourByFour) { EXPECT_EQ(det(build_H(FamilySpec::dd(4, 4))), 1); }

TEST(Det, FrtThreeByTwo) { EXPECT_EQ(det(build_H(FamilySpec::frt(3, 2))), 4); }

TEST(Det, NonSquareThrows) { EXPECT_THROW(det(IntMatrix(2, 3)), DimensionError); }

TEST(Det, MatchesCofactorExpansionUpToFive) {
  std::mt19937 rng(11);
  for (int k = 0; k < 300; ++k) {
    const auto size = static_cast<std::size_t>(testing::pick(rng, 1, 5));
    const IntMatrix m = testing::random_matrix(rng, size, size, 9);
    ASSERT_EQ(det(m), testing::cofactor_det(m));
  }
}

TEST(Det, LargeEntriesStayExact) {
  IntMatrix m{{BigInt("123456789012345678901234567890"), 1}, {1, BigInt("98765432109876543210")}};
  EXPECT_EQ(det(m), BigInt("123456789012345678901234567890") * BigInt("98765432109876543210") - 1);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(IntMatrix(2, 2)), 0u);
  EXPECT_EQ(rank(build_H(FamilySpec::dd(3, 3))), 8u);
  EXPECT_EQ(rank(build_H(FamilySpec::frt(4, 4))), 12u);
}

TEST(Inverse, Identity) { EXPECT_EQ(*inverse(IntMatrix::identity(4)), RatMatrix::identity(4)); }

TEST(Inverse, DipperDonkinFirstRow) {
  const auto inv = inverse(build_H(FamilySpec::dd(4, 4)));
  ASSERT_TRUE(inv);
  const std::vector<long> row{0, 0, -1, 1, -1, 1, 0, -1, 1, -1, 1, 0, -1, 1, -1, 1};
  for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ((*inv)(0, j), Rational(row[j])) << j;
}

TEST(Inverse, SingularFlag) { EXPECT_FALSE(inverse(build_H(FamilySpec::dd(3, 3)))); }

TEST(Inverse, ProductIsIdentity) {
  const IntMatrix h = build_H(FamilySpec::frt(3, 2));
  EXPECT_EQ(to_rational(h) * *inverse(h), RatMatrix::identity(6));
}

TEST(Kernel, IdentityIsEmpty) { EXPECT_EQ(kernel(IntMatrix::identity(3)).dimension(), 0u); }

TEST(Kernel, DipperDonkinThreeByThree) {
  const KernelBasis k = kernel(build_H(FamilySpec::dd(3, 3)));
  ASSERT_EQ(k.dimension(), 1u);
  EXPECT_EQ(k.vectors[0], (IntVector{1, -1, 1, -1, 1, -1, 1, -1, 1}));
}

TEST(Kernel, DipperDonkinLambda) {
  const KernelBasis k = kernel(build_lambda(FamilySpec::dd(3, 3)));
  ASSERT_EQ(k.dimension(), 1u);
  EXPECT_EQ(k.vectors[0], (IntVector{0, 0, 1, 0, 0, -1, 1, -1, 1}));
}

TEST(Kernel, VectorsArePrimitiveWithPositiveLead) {
  const KernelBasis k = kernel(IntMatrix{{2, 4, 6}, {1, 2, 3}});
  ASSERT_EQ(k.dimension(), 2u);
  for (const auto& v : k.vectors) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x);
    EXPECT_EQ(g, 1);
    auto lead = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    EXPECT_GT(*lead, 0);
  }
}

TEST(SkewNormalForm, AlreadyCanonical) {
  const SkewForm f = skew_normal_form(IntMatrix{{0, 1}, {-1, 0}});
  EXPECT_EQ(f.blockValues, (std::vector<BigInt>{1}));
  EXPECT_EQ(f.corank, 0u);
}

TEST(SkewNormalForm, DipperDonkinAllOnes) {
  const IntMatrix h = build_H(FamilySpec::dd(4, 4));
  const SkewForm f = skew_normal_form(h);
  EXPECT_EQ(f.blockValues, std::vector<BigInt>(8, 1));
  EXPECT_EQ(f.corank, 0u);
  EXPECT_TRUE(verify_skew_form(h, f));
}

TEST(SkewNormalForm, FrtThreeByThree) {
  const IntMatrix h = build_H(FamilySpec::frt(3, 3));
  const SkewForm f = skew_normal_form(h);
  EXPECT_EQ(f.blockValues, (std::vector<BigInt>{1, 1, 2}));
  EXPECT_EQ(f.corank, 3u);
  EXPECT_TRUE(verify_skew_form(h, f));
}

TEST(SkewNormalForm, DivisorChainEnforced) {
  // Diag(2, 3) must become Diag(1, 6).
  IntMatrix j(4, 4);
  j(0, 1) = 2;
  j(1, 0) = -2;
  j(2, 3) = 3;
  j(3, 2) = -3;
  const SkewForm f = skew_normal_form(j);
  EXPECT_EQ(f.blockValues, (std::vector<BigInt>{1, 6}));
  EXPECT_TRUE(verify_skew_form(j, f));
}

TEST(SkewNormalForm, BlockProductSquaredIsDeterminant) {
  std::mt19937 rng(5);
  for (int k = 0; k < 100; ++k) {
    const IntMatrix j = testing::random_skew(rng, 2 * static_cast<std::size_t>(testing::pick(rng, 1, 3)), 4);
    const SkewForm f = skew_normal_form(j);
    if (f.corank) continue;
    BigInt p = 1;
    for (const auto& d : f.blockValues) p *= d * d;
    BigInt d = det(j);
    EXPECT_EQ(p, d < 0 ? BigInt(-d) : d);
  }
}

TEST(SkewNormalForm, RejectsNonSkew) { EXPECT_THROW(skew_normal_form(IntMatrix{{1, 0}, {0, 0}}), DomainError); }

TEST(BlockAssemble, SingleBlock) {
  EXPECT_EQ(block_assemble<BigInt>({{IntMatrix::identity(2)}}), IntMatrix::identity(2));
}

TEST(BlockAssemble, DipperDonkinTwoByTwo) {
  const IntMatrix z(2, 2);
  EXPECT_EQ(block_assemble<BigInt>({{z, M_r(2)}, {N_r(2), z}}), build_H(FamilySpec::dd(2, 2)));
}

TEST(BlockAssemble, ThreeRowBlocks) {
  const FamilySpec s = FamilySpec::c1(3, 2);
  const auto [a, m] = family_blocks(s);
  const IntMatrix n = -m.transpose();
  EXPECT_EQ(block_assemble<BigInt>({{a, m, m}, {n, a, m}, {n, n, a}}), build_H(s));
}

TEST(BlockAssemble, RaggedThrows) {
  EXPECT_THROW(block_assemble<BigInt>({{IntMatrix(2, 2), IntMatrix(3, 2)}}), DimensionError);
  EXPECT_THROW(block_assemble<BigInt>({{IntMatrix(2, 2)}, {IntMatrix(2, 2), IntMatrix(2, 2)}}), DimensionError);
}

TEST(Serialize, JsonRoundTrip) {
  const IntMatrix h = build_H(FamilySpec::frt(2, 3));
  EXPECT_EQ(int_matrix_from_json(to_json(h)), h);
  const RatMatrix inv = *inverse(h);
  EXPECT_EQ(rat_matrix_from_json(to_json(inv)), inv);
  EXPECT_EQ(to_json(RatMatrix{{Rational(1, 2)}})["entries"][0], "1/2");
}

}  // namespace
}  // namespace qseed
