#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "graphon_lab/bifurcation.hpp"
#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "graphon_lab/optimizer/hessian.hpp"
#include "test_support.hpp"

namespace gl = graphon_lab;
namespace bif = graphon_lab::bifurcation;
using gl::testing::expect_code;

namespace {

double asymptote(double mu) { return -64.0 * std::pow(mu, 4) / 3.0; }

// The entropy change written as a sum of H-derivatives at the two pode values.
double h_expansion(double mu) {
  const double nu = bif::nu_opt(mu), u = 0.5 + 2 * mu;
  return -6 * mu * gl::core::entropy_H_prime(u) + 0.25 * (nu - 4 * mu) * (nu - 4 * mu) * gl::core::entropy_H_second(u) +
         0.25 * (nu + 4 * mu) * (nu + 4 * mu) * gl::core::entropy_H_second(0.5) +
         2 * (gl::core::entropy_H(u) - gl::core::entropy_H(0.5));
}

// Direct evaluation of the perturbed symmetric graphon at the point (x, y).
double family_value(const bif::SymmetricFamilyPoint& pt, bool x_first, bool y_first) {
  const double c = 0.5 + pt.delta;
  const double hi = std::sqrt((1 - c) / c), lo = -std::sqrt(c / (1 - c));
  const double vx = x_first ? hi : lo, vy = y_first ? hi : lo;
  return 0.5 + pt.mu * (vx + vy) + pt.nu * pt.delta * vx * vy;
}

}  // namespace

TEST(FamilyParams, Examples) {
  const auto p = bif::family_params({0.2, 0.0, 0.37});
  EXPECT_NEAR(p.a, 0.9, 1e-15);
  EXPECT_NEAR(p.b, 0.1, 1e-15);
  EXPECT_EQ(p.c, 0.5);
  EXPECT_NEAR(p.d, 0.5, 1e-15);
  EXPECT_EQ(p, gl::region::symmetric_graphon(0.04));

  const auto flat = bif::family_params({0.0, 0.1, 0.0});
  EXPECT_NEAR(flat.c, 0.6, 1e-15);
  EXPECT_EQ(flat.a, 0.5);
  EXPECT_EQ(flat.b, 0.5);
  EXPECT_EQ(flat.d, 0.5);

  const bif::SymmetricFamilyPoint pt{0.2, 0.01, bif::nu_opt(0.2)};
  EXPECT_NEAR(gl::core::edge_density(bif::family_params(pt).to_graphon()), 0.5, 1e-3);
}

TEST(FamilyParams, MatchesDirectEvaluation) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> um(0.0, 0.2), ud(-0.05, 0.05), un(-0.2, 0.2);
  for (int k = 0; k < 100; ++k) {
    const bif::SymmetricFamilyPoint pt{um(rng), ud(rng), un(rng)};
    const auto p = bif::family_params(pt);
    EXPECT_NEAR(p.c, 0.5 + pt.delta, 1e-15);
    EXPECT_NEAR(p.a, family_value(pt, true, true), 1e-14);
    EXPECT_NEAR(p.b, family_value(pt, false, false), 1e-14);
    EXPECT_NEAR(p.d, family_value(pt, true, false), 1e-14);
  }
}

TEST(FamilyParams, Errors) {
  expect_code(gl::ErrorCode::InfeasibleAnsatz, [] { bif::family_params({0.3, 0.0, 0.0}); });
  expect_code(gl::ErrorCode::InfeasibleAnsatz, [] { bif::family_params({0.1, 0.5, 0.0}); });
  expect_code(gl::ErrorCode::InfeasibleAnsatz, [] { bif::family_params({0.24, 0.1, 0.0}); });
}

TEST(NuOpt, Examples) {
  EXPECT_EQ(bif::nu_opt(0.0), 0.0);
  EXPECT_NEAR(bif::nu_opt(0.1), 0.032 / 0.92, 1e-15);
  EXPECT_NEAR(bif::nu_opt(0.1), 0.0347826, 1e-7);
  expect_code(gl::ErrorCode::Domain, [] { bif::nu_opt(std::sqrt(0.125)); });
}

TEST(NuOpt, FormsAgree) {
  for (int k = 0; k < 100; ++k) {
    const double mu = 0.2499 * k / 99.0;
    EXPECT_NEAR(bif::nu_opt(mu), bif::nu_opt_simplified(mu), 1e-12) << mu;
    EXPECT_NEAR(bif::nu_opt_simplified(mu), 4 * mu * 8 * mu * mu / (1 - 8 * mu * mu), 1e-15);
  }
}

TEST(DeltaSRatio, Examples) {
  EXPECT_EQ(bif::delta_s_ratio(0.0), 0.0);
  const double v = bif::delta_s_ratio(0.05);
  EXPECT_LT(v, 0.0);
  EXPECT_NEAR(v / asymptote(0.05), 1.0, 0.05);
  EXPECT_GT(bif::delta_s_ratio(0.24), 0.0);
  expect_code(gl::ErrorCode::Domain, [] { bif::delta_s_ratio(0.25); });
  expect_code(gl::ErrorCode::Domain, [] { bif::delta_s_ratio(0.24995); });
  expect_code(gl::ErrorCode::Domain, [] { bif::delta_s_ratio(-0.01); });
}

TEST(DeltaSRatio, MatchesHExpansion) {
  for (int k = 1; k <= 100; ++k) {
    const double mu = 0.2499 * k / 100.0;
    const double ref = h_expansion(mu);
    EXPECT_NEAR(bif::delta_s_ratio(mu), ref, 1e-12 * std::max(1.0, std::abs(ref))) << mu;
  }
}

TEST(DeltaSRatio, SmallMuAsymptote) {
  EXPECT_NEAR(bif::delta_s_ratio(0.02) / asymptote(0.02), 1.0, 0.02);
  double prev = std::abs(bif::delta_s_ratio(0.04) / asymptote(0.04) - 1);
  for (double mu : {0.02, 0.01, 0.005}) {
    const double gap = std::abs(bif::delta_s_ratio(mu) / asymptote(mu) - 1);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(DeltaSRatio, SignStructure) {
  const double mu_star = bif::find_critical().mu_star;
  for (int k = 1; k <= 500; ++k) {
    const double below = (mu_star - 1e-4) * k / 500.0;
    EXPECT_LT(bif::delta_s_ratio(below), 0.0) << below;
    const double above = mu_star + 1e-4 + (bif::kMuLimit - mu_star - 1e-4) * (k - 1) / 499.0;
    EXPECT_GT(bif::delta_s_ratio(above), 0.0) << above;
  }
}

TEST(FindCritical, PublishedConstants) {
  const auto cp = bif::find_critical(1e-10);
  EXPECT_NEAR(cp.mu_star, 0.1930708944, 1e-9);
  EXPECT_NEAR(cp.t_tilde_star, 0.0372763703, 1e-9);
  EXPECT_EQ(cp.t_tilde_star, cp.mu_star * cp.mu_star);
  EXPECT_LE(cp.bracket_hi - cp.bracket_lo, 1e-10);
  EXPECT_LE(cp.bracket_lo, cp.mu_star);
  EXPECT_GE(cp.bracket_hi, cp.mu_star);
  EXPECT_LE(std::abs(bif::delta_s_ratio(cp.mu_star)), 1e-10);
  EXPECT_EQ(cp.residual, std::abs(bif::delta_s_ratio(cp.mu_star)));

  const auto fine = bif::find_critical(1e-14);
  EXPECT_NEAR(fine.mu_star, cp.mu_star, 1e-10);
  expect_code(gl::ErrorCode::InvalidInput, [] { bif::find_critical(1e-15); });
}

TEST(SecondVariation, Examples) {
  const double ref = bif::delta_s_ratio(0.05);
  EXPECT_NEAR(bif::second_variation_numeric(0.05, 1e-3), ref, 1e-3 * std::abs(ref) + 1e-3);
  const double mu_star = bif::find_critical().mu_star;
  EXPECT_NEAR(bif::second_variation_numeric(mu_star, 1e-3), 0.0, 1e-3);
  EXPECT_GT(bif::second_variation_numeric(0.23, 1e-3), 0.0);
  EXPECT_GT(bif::delta_s_ratio(0.23), 0.0);
  expect_code(gl::ErrorCode::InfeasibleAnsatz, [] { bif::second_variation_numeric(0.24, 0.3); });
}

TEST(SecondVariation, RichardsonAgreesWithClosedForm) {
  // The symmetric difference is even in delta: errors in delta^2 and delta^4.
  for (int k = 0; k < 10; ++k) {
    const double mu = 0.02 + 0.022 * k;
    const double f1 = bif::second_variation_numeric(mu, 1e-2);
    const double f2 = bif::second_variation_numeric(mu, 5e-3);
    const double f3 = bif::second_variation_numeric(mu, 2.5e-3);
    const double r12 = (4 * f2 - f1) / 3, r23 = (4 * f3 - f2) / 3;
    const double extrapolated = (16 * r23 - r12) / 15;
    EXPECT_NEAR(extrapolated, bif::delta_s_ratio(mu), 1e-6) << mu;
  }
}

TEST(Stability, HessianSignMatchesRatio) {
  for (double mu : {0.1, 0.15, 0.21, 0.23}) {
    const double tt = mu * mu;
    const auto spectrum = gl::opt::constrained_hessian(gl::region::symmetric_graphon(tt), 0.5, tt);
    ASSERT_FALSE(spectrum.eigenvalues.empty());
    EXPECT_EQ(spectrum.max() > 0, bif::delta_s_ratio(mu) > 0) << mu;
  }
}

TEST(Stability, Verdicts) {
  EXPECT_EQ(bif::stability(0.03).verdict, bif::StabilityVerdict::LocalMax);
  EXPECT_EQ(bif::stability(0.05).verdict, bif::StabilityVerdict::NotLocalMax);
  const auto none = bif::stability(0.07);
  EXPECT_EQ(none.verdict, bif::StabilityVerdict::Nonexistent);
  EXPECT_TRUE(none.eigenvalues.empty());
  const auto cp = bif::find_critical();
  EXPECT_EQ(bif::stability(cp.t_tilde_star * 0.98).verdict, bif::StabilityVerdict::LocalMax);
  EXPECT_EQ(bif::stability(cp.t_tilde_star * 1.02).verdict, bif::StabilityVerdict::NotLocalMax);
  const auto r = bif::stability(0.03);
  EXPECT_NEAR(r.mu, std::sqrt(0.03), 1e-15);
  EXPECT_EQ(r.delta_s_ratio, bif::delta_s_ratio(r.mu));
  EXPECT_STREQ(bif::to_string(bif::StabilityVerdict::NotLocalMax), "NotLocalMax");
}
