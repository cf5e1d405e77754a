#include <doctest.h>

#include "cprlab/norms.hpp"
#include "cprlab/random.hpp"
#include "oracles.hpp"

using namespace cprlab;

namespace {

double oracle_norm(const CMatrix& a, const NormKind& kind) {
  switch (kind.family()) {
    case NormKind::Family::kOperator: return oracle::op_norm(a);
    case NormKind::Family::kSchatten: return oracle::schatten(a, kind.p());
    case NormKind::Family::kKyFan: return oracle::kyfan(a, kind.k());
  }
  return 0.0;
}

std::vector<NormKind> sample_kinds() {
  return {NormKind::op(), NormKind::trace(), NormKind::frobenius(), NormKind::schatten(3.0),
          NormKind::schatten(1.5), NormKind::kyfan(1), NormKind::kyfan(2), NormKind::kyfan(5)};
}

}  // namespace

TEST_CASE("norm examples") {
  CHECK(norm(diag({3.0, 1.0, 2.0}), NormKind::op()) == doctest::Approx(3.0));
  CHECK(norm(diag({1.0, 2.0, 3.0}), NormKind::schatten(1.0)) == doctest::Approx(6.0));
  CHECK(norm(diag({3.0, 2.0, 1.0}), NormKind::kyfan(2)) == doctest::Approx(5.0));
  CHECK(norm(diag({3.0, 4.0}), NormKind::frobenius()) == doctest::Approx(5.0));
  CHECK(norm(CMatrix::Zero(3, 3), NormKind::schatten(2.5)) == 0.0);
  CHECK(norm(diag({1.0, 2.0}), NormKind::kyfan(7)) == doctest::Approx(3.0));
}

TEST_CASE("norm selector grammar") {
  CHECK(NormKind::parse("op") == NormKind::op());
  CHECK(NormKind::parse(" op ") == NormKind::op());
  CHECK(NormKind::parse("fro") == NormKind::schatten(2.0));
  CHECK(NormKind::parse("tr") == NormKind::schatten(1.0));
  CHECK(NormKind::parse("schatten:3") == NormKind::schatten(3.0));
  CHECK(NormKind::parse("schatten:2.5").p() == 2.5);
  CHECK(NormKind::parse("kyfan:2") == NormKind::kyfan(2));
  for (const char* bad : {"", "max", "schatten:", "schatten:0.5", "schatten:inf", "kyfan:0",
                          "kyfan:1.5", "kyfan:x", "o p"}) {
    CHECK_THROWS_AS(NormKind::parse(bad), LabError);
  }
  const auto list = parse_norm_list("op,tr,schatten:3");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == NormKind::schatten(3.0));
  for (const NormKind& k : sample_kinds()) CHECK(NormKind::parse(k.to_string()) == k);
}

TEST_CASE("norms agree with the Eigen SVD oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const CMatrix a = ginibre(n, n, rng);
    for (const NormKind& k : sample_kinds()) {
      CHECK(norm(a, k) == doctest::Approx(oracle_norm(a, k)).epsilon(1e-10));
    }
  }
}

TEST_CASE("unitary invariance, triangle inequality, homogeneity") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 + trial % 6;
    const CMatrix a = ginibre(n, n, rng);
    const CMatrix b = ginibre(n, n, rng);
    const CMatrix u = haar_unitary(n, rng);
    const CMatrix v = haar_unitary(n, rng);
    const Complex c = rng.complex_normal();
    for (const NormKind& k : sample_kinds()) {
      const double na = norm(a, k);
      CHECK(std::abs(norm(u * a * v, k) - na) <= 1e-9 * std::max(1.0, na));
      CHECK(norm(a + b, k) <= (na + norm(b, k)) * (1.0 + 1e-10));
      CHECK(norm(c * a, k) == doctest::Approx(std::abs(c) * na).epsilon(1e-10));
    }
    CHECK(norm(a, NormKind::frobenius()) == doctest::Approx(a.norm()).epsilon(1e-10));
    CHECK(norm(a, NormKind::kyfan(1)) == doctest::Approx(norm(a, NormKind::op())).epsilon(1e-14));
  }
}

TEST_CASE("direct sum identities") {
  CHECK(direct_sum_norm(diag({3.0}), diag({4.0}), NormKind::op()) == doctest::Approx(4.0));
  CHECK(direct_sum_norm(diag({3.0}), diag({4.0}), NormKind::frobenius()) ==
        doctest::Approx(5.0));
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix a = ginibre(1 + trial % 4, 1 + trial % 4, rng);
    const CMatrix b = ginibre(1 + trial % 5, 1 + trial % 5, rng);
    const double op = direct_sum_norm(a, b, NormKind::op());
    CHECK(op == doctest::Approx(std::max(norm(a, NormKind::op()), norm(b, NormKind::op())))
                    .epsilon(1e-12));
    for (double p : {1.0, 2.0, 3.0, 1.7}) {
      const NormKind k = NormKind::schatten(p);
      const double expect = std::pow(std::pow(norm(a, k), p) + std::pow(norm(b, k), p), 1.0 / p);
      CHECK(direct_sum_norm(a, b, k) == doctest::Approx(expect).epsilon(1e-12));
    }
    for (const NormKind& k : sample_kinds()) {
      const CMatrix zero = CMatrix::Zero(b.rows(), b.cols());
      CHECK(direct_sum_norm(a, zero, k) == doctest::Approx(norm(a, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("schatten power") {
  CHECK(schatten_power(diag({1.0, 2.0}), 3.0) == doctest::Approx(9.0));
  // Values far below sigma_1 are floored to zero.
  const RVector s = (RVector(2) << 1.0, 1e-16).finished();
  CHECK(schatten_power_from_singular_values(s, 1.0) == 1.0);
}
