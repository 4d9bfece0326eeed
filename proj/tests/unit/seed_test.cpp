#include "qseed/seed.hpp"

#include <gtest/gtest.h>

namespace qseed {
namespace {

auto reduced_form(const LeftReduction& red, std::size_t N) -> RatMatrix {
  const std::size_t c = N - red.s;
  RatMatrix m(N, N);
  m.set_block(0, 0, RatMatrix::identity(c));
  if (red.s) m.set_block(0, c, red.Y);
  return m;
}

TEST(LeftReduce, FullRank) {
  const IntMatrix h = build_H(FamilySpec::dd(4, 4));
  const LeftReduction red = left_reduce(h);
  EXPECT_EQ(red.s, 0u);
  EXPECT_EQ(red.K, *inverse(h));
}

TEST(LeftReduce, SingularShapes) {
  for (const FamilySpec& s : {FamilySpec::dd(3, 3), FamilySpec::frt(2, 2), FamilySpec::frt(3, 3)}) {
    const IntMatrix h = build_H(s);
    const LeftReduction red = left_reduce(h);
    EXPECT_EQ(red.s, h.rows() - rank(h)) << s.label();
    EXPECT_EQ(red.K * to_rational(h), reduced_form(red, h.rows())) << s.label();
    EXPECT_TRUE(inverse(red.K)) << s.label();
  }
}

TEST(CompatiblePair, Trivial) {
  EXPECT_EQ(build_lambda(FamilySpec::dd(1, 1)), IntMatrix(1, 1));
  EXPECT_THROW(compatible_pair(FamilySpec::ext(2, 2)), NotApplicable);
}

TEST(CompatiblePair, FullRankDipperDonkin) {
  const FamilySpec s = FamilySpec::dd(4, 4);
  const CompatiblePair p = compatible_pair(s);
  EXPECT_EQ(p.c, 16u);
  EXPECT_EQ(p.lambda, build_lambda(s));
  EXPECT_EQ(to_rational(p.lambda) * p.bTilde, Rational(-2) * RatMatrix::identity(16));
  EXPECT_TRUE(is_integral(p.bTilde));
}

TEST(CompatiblePair, SingularDipperDonkin) {
  const CompatiblePair p = compatible_pair(FamilySpec::dd(3, 3));
  EXPECT_EQ(p.c, 8u);
  EXPECT_EQ(to_rational(p.lambda) * p.bTilde, compatibility_target(9, 8));
}

TEST(CompatiblePair, FrtThreeByTwo) {
  const CompatiblePair p = compatible_pair(FamilySpec::frt(3, 2));
  EXPECT_EQ(p.c, 6u);
  EXPECT_NO_THROW(certify(p));
}

TEST(CompatiblePair, LambdaMatchesSymbolicShapes) {
  EXPECT_EQ(compatible_pair(FamilySpec::frt(3, 2)).lambda, build_lambda(FamilySpec::frt(3, 2)));
}

TEST(CompatiblePair, CombinedFamilies) {
  for (const FamilySpec& s : {FamilySpec::c1(3, 3), FamilySpec::c2(2, 4), FamilySpec::c1(2, 2)})
    EXPECT_NO_THROW(certify(compatible_pair(s))) << s.label();
}

TEST(CompatiblePair, RejectsInconsistentParameters) {
  const FamilySpec s = FamilySpec::dd(3, 3);
  const LeftReduction red = left_reduce(build_H(s));
  BlockParams p = default_block_params(s, red);
  p.b(0, 0) += 1;
  try {
    compatible_pair(s, p);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_FALSE(e.residual().is_zero());
  }
  BlockParams wrong = default_block_params(s, red);
  wrong.a = RatMatrix::identity(3);
  EXPECT_THROW(compatible_pair(s, wrong), DimensionError);
}

TEST(CompatiblePair, CustomParameters) {
  const FamilySpec s = FamilySpec::dd(3, 3);
  const LeftReduction red = left_reduce(build_H(s));
  BlockParams p;
  p.a = RatMatrix::identity(8);
  p.d = RatMatrix{{Rational(3)}};
  p.b = -(red.Y * p.d);
  const CompatiblePair pair = compatible_pair(s, p);
  EXPECT_NO_THROW(certify(pair));
}

TEST(Truncate, DipperDonkinDefaultFrozen) {
  const CompatiblePair p = compatible_pair(FamilySpec::dd(4, 4));
  const auto frozen = default_frozen(4, 4);
  EXPECT_EQ(frozen.size(), 7u);
  const TruncatedPair t = truncate_nonmutable(p, 4, 4, frozen);
  EXPECT_EQ(t.b.rows(), 16u);
  EXPECT_EQ(t.b.cols(), 9u);
}

TEST(Truncate, EmptyFrozenKeepsPair) {
  const CompatiblePair p = compatible_pair(FamilySpec::dd(4, 4));
  const TruncatedPair t = truncate_nonmutable(p, 4, 4, {});
  EXPECT_EQ(t.b, p.bTilde);
  EXPECT_EQ(t.lambda, p.lambda);
}

TEST(Truncate, EverythingFrozenThrows) {
  const CompatiblePair p = compatible_pair(FamilySpec::dd(2, 2));
  EXPECT_THROW(truncate_nonmutable(p, 2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}), DomainError);
  EXPECT_THROW(truncate_nonmutable(p, 2, 2, {{3, 1}}), DomainError);
}

TEST(SeedJson, Shape) {
  const FamilySpec s = FamilySpec::frt(2, 2);
  const json j = seed_json(s, compatible_pair(s), default_frozen(2, 2));
  EXPECT_EQ(j["c"], 2);
  EXPECT_EQ(j["lambda"]["rows"], 4);
  EXPECT_EQ(j["bTilde"]["cols"], 2);
  EXPECT_EQ(j["frozen"].size(), 3u);
}

}  // namespace
}  // namespace qseed
