#include <doctest.h>

#include <cmath>

#include "cprlab/chain.hpp"
#include "cprlab/error.hpp"
#include "cprlab/quadrature.hpp"

using namespace cprlab;

TEST_CASE("chain margins and relative tolerance") {
  const ChainReport r = make_chain({"a", "b", "c"}, {3.0, 2.0, 2.0});
  REQUIRE(r.links() == 2);
  CHECK(r.margins[0] == 1.0);
  CHECK(r.margins[1] == 0.0);
  CHECK(r.passed());
  CHECK(r.min_margin() == 0.0);

  // Within 1e-8 relative of the larger side.
  CHECK(make_chain({"a", "b"}, {1e6, 1e6 + 5e-3}).passed());
  CHECK_FALSE(make_chain({"a", "b"}, {1e6, 1e6 + 2e-2}).passed());
  // Scale never drops below 1.
  CHECK(make_chain({"a", "b"}, {0.0, 5e-9}).passed());
  CHECK_FALSE(make_chain({"a", "b"}, {0.0, 2e-8}).passed());
  CHECK_FALSE(make_chain({"a", "b", "c"}, {1.0, 2.0, 0.0}).link_pass[0]);

  CHECK_THROWS_AS(make_chain({"a"}, {1.0}), LabError);
  CHECK_THROWS_AS(make_chain({"a", "b"}, {1.0}), LabError);
}

TEST_CASE("equality relations") {
  const ChainReport eq = make_relation("l", 2.0, "r", 2.0 + 1e-10, Relation::kEqual,
                                       kEqualityTolerance);
  CHECK(eq.passed());
  CHECK(eq.margins[0] <= 0.0);
  CHECK_FALSE(make_relation("l", 2.0, "r", 2.1, Relation::kEqual, kEqualityTolerance).passed());
  CHECK_FALSE(make_relation("l", 2.1, "r", 2.0, Relation::kEqual, kEqualityTolerance).passed());
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 2, 5, 16, 32, 64}) {
    const GaussLegendre& g = gauss_legendre(n);
    REQUIRE(static_cast<int>(g.nodes.size()) == n);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Exact for polynomials of degree 2n - 1.
    for (int deg = 0; deg <= 2 * n - 1 && deg <= 40; ++deg) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += g.weights[i] * std::pow(g.nodes[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(q - exact) <= 1e-13);
    }
    for (int i = 1; i < n; ++i) CHECK(g.nodes[i - 1] < g.nodes[i]);
  }
  CHECK(gauss_legendre(3).nodes[1] == doctest::Approx(0.0));
  CHECK(gauss_legendre(2).nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), LabError);
}

TEST_CASE("interval means") {
  CHECK(interval_mean(0.0, 1.0, 32, [](double x) { return std::exp(x); }) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(interval_mean(0.2, 0.7, 8, [](double x) { return x * x * x; }) ==
        doctest::Approx((std::pow(0.7, 4) - std::pow(0.2, 4)) / 4.0 / 0.5).epsilon(1e-14));
  // Degenerate interval: the integrand at the lower end.
  const MeanRule r = mean_rule(0.5, 0.5, 32);
  REQUIRE(r.nodes.size() == 1);
  CHECK(r.nodes[0] == 0.5);
  CHECK(r.weights[0] == 1.0);
  CHECK(interval_mean(0.3, 0.3 + 1e-12, 32, [](double x) { return x; }) == 0.3);
  CHECK_THROWS_AS(mean_rule(1.0, 0.0, 8), LabError);
}
