#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "graphon_lab/core/entropy.hpp"
#include "graphon_lab/core/functionals.hpp"
#include "graphon_lab/core/json_io.hpp"
#include "graphon_lab/errors.hpp"
#include "graphon_lab/feasible_region.hpp"
#include "test_support.hpp"

namespace gl = graphon_lab;
using gl::core::BipodalParams;
using gl::core::StepGraphon;
using gl::testing::expect_code;
using gl::testing::random_graphon;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

// H evaluated in 50-digit arithmetic.
double H_reference(double u) {
  const big x(u);
  return static_cast<double>(-(x * log(x) + (1 - x) * log(1 - x)) / 2);
}

}  // namespace

TEST(Entropy, EndpointsAndKnownValues) {
  EXPECT_EQ(gl::core::entropy_H(0.0), 0.0);
  EXPECT_EQ(gl::core::entropy_H(1.0), 0.0);
  EXPECT_NEAR(gl::core::entropy_H(0.5), 0.5 * std::log(2.0), 1e-16);
  EXPECT_NEAR(gl::core::entropy_H(0.9), H_reference(0.9), 1e-15);
  EXPECT_NEAR(gl::core::entropy_H(0.9), 0.16254, 5e-6);
}

TEST(Entropy, DomainErrors) {
  expect_code(gl::ErrorCode::Domain, [] { gl::core::entropy_H(-1e-9); });
  expect_code(gl::ErrorCode::Domain, [] { gl::core::entropy_H(1.0 + 1e-9); });
  expect_code(gl::ErrorCode::Domain, [] { gl::core::entropy_H(std::nan("")); });
}

TEST(Entropy, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double u : {0.1, 0.3, 0.5, 0.62, 0.9}) {
    const double fd1 = (gl::core::entropy_H(u + h) - gl::core::entropy_H(u - h)) / (2 * h);
    EXPECT_NEAR(gl::core::entropy_H_prime(u), fd1, 1e-8) << u;
    const double fd2 = (gl::core::entropy_H_prime(u + h) - gl::core::entropy_H_prime(u - h)) / (2 * h);
    EXPECT_NEAR(gl::core::entropy_H_second(u), fd2, 1e-6) << u;
    for (int n = 3; n <= 8; ++n) {
      const double lo = gl::core::entropy_H_derivative(n - 1, u - h);
      const double hi = gl::core::entropy_H_derivative(n - 1, u + h);
      const double exact = gl::core::entropy_H_derivative(n, u);
      EXPECT_NEAR(exact, (hi - lo) / (2 * h), 1e-6 * std::max(1.0, std::abs(exact))) << n << " " << u;
    }
  }
}

TEST(Entropy, EvenDerivativesAtHalf) {
  EXPECT_NEAR(gl::core::entropy_H_even_derivative_at_half(0), 0.5 * std::log(2.0), 1e-16);
  EXPECT_DOUBLE_EQ(gl::core::entropy_H_even_derivative_at_half(1), -2.0);
  double factorial = 1.0;
  for (int k = 1; k <= 10; ++k) {
    factorial *= (2 * k - 1) * (2 * k);
    const double direct = gl::core::entropy_H_derivative(2 * k, 0.5);
    const double recur = gl::core::entropy_H_even_derivative_at_half(k);
    EXPECT_NEAR(recur, direct, 1e-12 * std::abs(direct)) << k;
    EXPECT_NEAR(gl::core::entropy_series_coefficient(k), direct / factorial, 1e-12 * std::abs(direct / factorial));
  }
}

TEST(EntropyS, Examples) {
  EXPECT_NEAR(gl::core::entropy_S(StepGraphon::constant(0.5)), 0.5 * std::log(2.0), 1e-16);
  const double oracle = 0.25 * H_reference(0.9) + 0.25 * H_reference(0.1) + 0.5 * H_reference(0.5);
  const double s = gl::core::entropy_S(BipodalParams{0.9, 0.1, 0.5, 0.5}.to_graphon());
  EXPECT_NEAR(s, oracle, 1e-15);
  EXPECT_EQ(gl::core::entropy_S(gl::region::clique_graphon(0.64)), 0.0);
}

TEST(Degree, Examples) {
  const auto c = gl::core::degree_function(StepGraphon::constant(0.3));
  ASSERT_EQ(c.values.size(), 1u);
  EXPECT_DOUBLE_EQ(c.values[0], 0.3);

  const auto a = gl::core::degree_function(BipodalParams{0.3, 0.7, 0.5, 0.5}.to_graphon());
  EXPECT_NEAR(a.values[0], 0.4, 1e-15);
  EXPECT_NEAR(a.values[1], 0.6, 1e-15);

  const auto g = gl::region::clique_graphon(0.64);
  const auto d = gl::core::degree_function(g);
  ASSERT_EQ(d.values.size(), 2u);
  EXPECT_NEAR(d.values[0], 0.8, 1e-15);
  EXPECT_NEAR(g.measure(0), 0.8, 1e-15);
  EXPECT_EQ(d.values[1], 0.0);
}

TEST(Densities, Examples) {
  const auto er = gl::core::twostar_density(StepGraphon::constant(0.3));
  EXPECT_DOUBLE_EQ(er.e, 0.3);
  EXPECT_NEAR(er.t, 0.09, 1e-16);
  EXPECT_EQ(er.t_tilde, 0.0);
  EXPECT_NEAR(gl::core::twostar_density(gl::region::clique_graphon(0.64)).t, 0.512, 1e-15);
  EXPECT_NEAR(gl::core::twostar_density(gl::region::anticlique_graphon(0.36)).t, 0.232, 1e-15);
}

TEST(Densities, ReducedDensityIsDegreeVariance) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_graphon(rng, 1 + k % 5);
    const auto p = gl::core::twostar_density(g);
    EXPECT_GE(p.t_tilde, 0.0);
    EXPECT_NEAR(p.t_tilde, p.t - p.e * p.e, 1e-15);
  }
  // Constant degree (every row sums alike) gives t~ = 0.
  Eigen::MatrixXd v(2, 2);
  v << 0.2, 0.6, 0.6, 0.2;
  EXPECT_LE(gl::core::twostar_density(StepGraphon::create({0.5}, v)).t_tilde, 1e-16);
}

TEST(Subgraph, ConsistencyWithDensities) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_graphon(rng, 1 + k % 4);
    const auto p = gl::core::twostar_density(g);
    EXPECT_NEAR(gl::core::subgraph_density(g, gl::core::SubgraphPattern::edge()), p.e, 1e-12);
    EXPECT_NEAR(gl::core::subgraph_density(g, gl::core::SubgraphPattern::two_star()), p.t, 1e-12);
  }
  EXPECT_NEAR(gl::core::subgraph_density(StepGraphon::constant(0.4), gl::core::SubgraphPattern::two_star()), 0.16,
              1e-15);
  EXPECT_NEAR(gl::core::subgraph_density(gl::region::clique_graphon(0.64), gl::core::SubgraphPattern::triangle()),
              0.512, 1e-14);
}

TEST(Subgraph, PatternValidationAndCostGuard) {
  using gl::core::SubgraphPattern;
  expect_code(gl::ErrorCode::InvalidInput, [] { SubgraphPattern(3, {{1, 1}}); });
  expect_code(gl::ErrorCode::InvalidInput, [] { SubgraphPattern(3, {{1, 4}}); });
  expect_code(gl::ErrorCode::InvalidInput, [] { SubgraphPattern(3, {{1, 2}, {2, 1}}); });
  std::vector<std::pair<int, int>> path;
  for (int v = 1; v < 11; ++v) path.push_back({v, v + 1});
  const SubgraphPattern big_path(11, path);
  expect_code(gl::ErrorCode::CostGuard,
              [&] { gl::core::subgraph_density(StepGraphon::constant(0.5), big_path); });
}

TEST(Complement, SymmetryOnRandomGraphons) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_graphon(rng, 1 + k % 5);
    const auto h = gl::core::complement(g);
    const auto pg = gl::core::twostar_density(g), ph = gl::core::twostar_density(h);
    EXPECT_NEAR(gl::core::entropy_S(g), gl::core::entropy_S(h), 1e-14);
    EXPECT_NEAR(ph.e, 1.0 - pg.e, 1e-14);
    EXPECT_NEAR(ph.t_tilde, pg.t_tilde, 1e-14);
    EXPECT_LE((gl::core::complement(h).values() - g.values()).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_EQ(gl::core::complement(StepGraphon::constant(0.3)).value(0, 0), 0.7);
  const auto dyadic = BipodalParams{0.25, 0.5, 0.375, 0.875}.to_graphon();
  EXPECT_EQ(gl::core::complement(gl::core::complement(dyadic)), dyadic);
}

TEST(Moments, Identities) {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_graphon(rng, 1 + k % 5);
    const auto p = gl::core::twostar_density(g);
    const auto m = gl::core::moments(g, 4);
    ASSERT_EQ(m.nu.size(), 4u);
    EXPECT_NEAR(m.nu[0], p.e - 0.5, 1e-12);
    EXPECT_NEAR(m.nu[1], p.t_tilde + (p.e - 0.5) * (p.e - 0.5), 1e-12);
    EXPECT_GE(m.nu[3], m.nu[1] * m.nu[1] - 1e-15);
    const double eta = gl::core::decompose(g).eta();
    EXPECT_NEAR(m.mu[0], 2 * m.nu[1] - (p.e - 0.5) * (p.e - 0.5) + eta * eta, 1e-12);
  }
  const auto c = gl::core::moments(StepGraphon::constant(0.8), 2);
  EXPECT_NEAR(c.nu[0], 0.3, 1e-15);
  EXPECT_NEAR(c.mu[0], 0.09, 1e-15);
}

TEST(Series, MatchesDirectEntropy) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_graphon(rng, 1 + k % 5, 0.1, 0.9);
    EXPECT_NEAR(gl::core::entropy_via_series(g, 64), gl::core::entropy_S(g), 1e-8);
  }
  const auto bip = BipodalParams{0.9, 0.1, 0.5, 0.5}.to_graphon();
  EXPECT_NEAR(gl::core::entropy_via_series(bip, 64), gl::core::entropy_S(bip), 1e-8);
  EXPECT_EQ(gl::core::entropy_via_series(StepGraphon::constant(0.5), 7), 0.5 * std::log(2.0));
  EXPECT_EQ(gl::core::entropy_via_series(bip, 0), 0.5 * std::log(2.0));
  expect_code(gl::ErrorCode::Divergence,
              [] { gl::core::entropy_via_series(gl::region::clique_graphon(0.5), 8); });
}

TEST(Decompose, ZeroMarginalsAndReconstruction) {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_graphon(rng, 1 + k % 5);
    const auto dec = gl::core::decompose(g);
    EXPECT_LE(dec.residual.marginals().cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        EXPECT_NEAR(dec.degree.values[i] + dec.degree.values[j] - dec.e +
                        dec.residual.values(Eigen::Index(i), Eigen::Index(j)),
                    g.value(i, j), 1e-15);
  }
  EXPECT_LE(gl::core::decompose(StepGraphon::constant(0.4)).residual.max_abs(), 1e-16);
  // The ansatz graphon has a residual of order zeta^2.
  const auto ansatz = gl::region::ansatz_graphon(0.5, 0.0025).to_graphon();
  EXPECT_LE(gl::core::decompose(ansatz).eta(), 0.01);
}

TEST(Refine, InvarianceOfFunctionals) {
  const auto [g1, g2] = gl::core::refine_common(BipodalParams{0.2, 0.7, 0.3, 0.4}.to_graphon(),
                                                BipodalParams{0.6, 0.1, 0.5, 0.9}.to_graphon());
  EXPECT_EQ(g1.size(), 3u);
  EXPECT_EQ(g1.cuts(), g2.cuts());
  const auto p = gl::core::twostar_density(BipodalParams{0.2, 0.7, 0.3, 0.4}.to_graphon());
  const auto q = gl::core::twostar_density(g1);
  EXPECT_NEAR(p.e, q.e, 1e-14);
  EXPECT_NEAR(p.t, q.t, 1e-14);

  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    const auto a = random_graphon(rng, 1 + k % 4), b = random_graphon(rng, 1 + (k + 1) % 4);
    const auto [ra, rb] = gl::core::refine_common(a, b);
    EXPECT_NEAR(gl::core::entropy_S(ra), gl::core::entropy_S(a), 1e-12);
    EXPECT_NEAR(gl::core::edge_density(ra), gl::core::edge_density(a), 1e-12);
    EXPECT_NEAR(gl::core::twostar_density(ra).t, gl::core::twostar_density(a).t, 1e-12);
    EXPECT_NEAR(gl::core::subgraph_density(ra, gl::core::SubgraphPattern::triangle()),
                gl::core::subgraph_density(a, gl::core::SubgraphPattern::triangle()), 1e-12);
    for (double x : {0.05, 0.33, 0.71, 0.98})
      for (double y : {0.12, 0.5, 0.9}) EXPECT_EQ(ra.evaluate(x, y), a.evaluate(x, y));
  }
  const auto s = gl::core::refine_common(StepGraphon::constant(0.35), BipodalParams{0.2, 0.7, 0.3, 0.4}.to_graphon()).first;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_EQ(s.value(i, j), 0.35);
}

TEST(StepGraphonType, ConstructionRules) {
  Eigen::MatrixXd v(3, 3);
  v << 0.1, 0.2, 0.3, 0.2, 0.4, 0.5, 0.3, 0.5, 0.6;
  const auto g = StepGraphon::create({0.25, 0.25}, v);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.value(1, 1), 0.6);
  Eigen::MatrixXd asym(2, 2);
  asym << 0.1, 0.2, 0.3, 0.4;
  expect_code(gl::ErrorCode::InvalidInput, [&] { StepGraphon::create({0.5}, asym); });
  Eigen::MatrixXd out(1, 1);
  out << 1.5;
  expect_code(gl::ErrorCode::InvalidInput, [&] { StepGraphon::create({}, out); });
  Eigen::MatrixXd two(2, 2);
  two << 0.1, 0.2, 0.2, 0.3;
  expect_code(gl::ErrorCode::InvalidInput, [&] { StepGraphon::create({0.7, 0.2}, v); });
  EXPECT_NEAR(StepGraphon::create({0.3}, two).measures()[1], 0.7, 1e-16);
}

TEST(BipodalType, CanonicalForm) {
  const BipodalParams p{0.2, 0.8, 0.7, 0.4};
  const auto c = p.canonical();
  EXPECT_EQ(c, (BipodalParams{0.8, 0.2, 1.0 - 0.7, 0.4}));
  EXPECT_EQ((BipodalParams{0.2, 0.8, 0.5, 0.4}).canonical(), (BipodalParams{0.8, 0.2, 0.5, 0.4}));
  EXPECT_NEAR(gl::core::entropy_S(p.to_graphon()), gl::core::entropy_S(c.to_graphon()), 1e-15);
  expect_code(gl::ErrorCode::InvalidInput, [] { BipodalParams{1.2, 0.5, 0.5, 0.5}.validate(); });
}

TEST(Json, ExactRoundTrip) {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_graphon(rng, 1 + k % 4);
    const auto text = gl::core::to_json(g).dump();
    EXPECT_EQ(gl::core::graphon_from_json(nlohmann::json::parse(text)), g);
  }
  const BipodalParams p{0.1 + 1e-17, 2.0 / 3.0, std::sqrt(0.5), 1.0 / 7.0};
  EXPECT_EQ(gl::core::bipodal_from_json(nlohmann::json::parse(gl::core::to_json(p).dump())), p);
}
