#include "support/properties.hpp"

#include <gtest/gtest.h>

namespace qseed::testing {
namespace {

constexpr std::size_t kCases = 250;

void expect_clean(const SuiteResult& r) {
  EXPECT_GE(r.cases, 200u);
  EXPECT_EQ(r.failures, 0u) << r.name << ": " << r.firstFailure;
}

TEST(Properties, NormalFormIdempotence) { expect_clean(normal_form_idempotence(kCases)); }
TEST(Properties, NormalFormLinearity) { expect_clean(normal_form_linearity(kCases)); }
TEST(Properties, MultiplicationAssociativity) { expect_clean(multiplication_associativity(kCases)); }
TEST(Properties, BarInvolution) { expect_clean(bar_involution(kCases)); }
TEST(Properties, BarAntiAutomorphism) { expect_clean(bar_anti_automorphism(kCases)); }
TEST(Properties, SkewFormFixpoint) { expect_clean(skew_form_fixpoint(kCases)); }
TEST(Properties, SkewFormCongruenceInvariance) { expect_clean(skew_form_congruence_invariance(kCases)); }
TEST(Properties, TransformUnimodularity) { expect_clean(transform_unimodularity(kCases)); }
TEST(Properties, BareissVsCofactor) { expect_clean(bareiss_vs_cofactor(kCases)); }
TEST(Properties, RankNullity) { expect_clean(rank_nullity(kCases)); }

}  // namespace
}  // namespace qseed::testing
