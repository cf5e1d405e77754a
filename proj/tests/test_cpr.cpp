#include <doctest.h>

#include "cprlab/cpr.hpp"
#include "cprlab/random.hpp"
#include "oracles.hpp"

using namespace cprlab;

namespace {

const std::vector<NormKind>& all_kinds() {
  static const std::vector<NormKind> kinds = parse_norm_list("op,tr,fro,kyfan:2,schatten:3");
  return kinds;
}

CMatrix nilpotent() {
  CMatrix e = CMatrix::Zero(2, 2);
  e(0, 1) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("cpr_check examples") {
  Rng rng(1);
  const CMatrix x = ginibre(3, 3, rng);
  const ChainReport id = cpr_check(CMatrix::Identity(3, 3), x, NormKind::op());
  CHECK(id.values[0] == doctest::Approx(2.0 * oracle::op_norm(x)));
  CHECK(id.values[1] == doctest::Approx(2.0 * oracle::op_norm(x)));

  const CMatrix r = random_unitary_reflection(3, rng);
  const ChainReport refl = cpr_check(r, x, NormKind::trace());
  CHECK(refl.values[0] == doctest::Approx(refl.values[1]).epsilon(1e-10));

  const ChainReport hand = cpr_check(diag({2.0, 1.0}), nilpotent(), NormKind::op());
  CHECK(hand.values[0] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(hand.values[1] == doctest::Approx(2.0));

  CMatrix not_sa = CMatrix::Identity(2, 2);
  not_sa(0, 1) = 1.0;
  try {
    cpr_check(not_sa, nilpotent(), NormKind::op());
    FAIL("expected NotHermitian");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kNotHermitian);
  }
  CHECK_THROWS_AS(cpr_check(diag({1.0, 0.0}), nilpotent(), NormKind::op()), LabError);
}

TEST_CASE("two-sided and star variants") {
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const CMatrix s = random_selfadjoint_invertible(n, 100.0, rng).matrix;
    const CMatrix t = random_selfadjoint_invertible(n, 100.0, rng).matrix;
    const CMatrix g = random_invertible(n, 100.0, rng);
    const CMatrix x = ginibre(n, n, rng);
    for (const NormKind& k : all_kinds()) {
      const ChainReport same = cpr_two_sided_check(s, s, x, k);
      const ChainReport base = cpr_check(s, x, k);
      CHECK(same.values[0] == doctest::Approx(base.values[0]).epsilon(1e-12));
      CHECK(cpr_two_sided_check(s, t, x, k).passed());
      const ChainReport right_id = cpr_two_sided_check(s, CMatrix::Identity(n, n), x, k);
      CHECK(right_id.values[0] == doctest::Approx(norm(s * x + inverse(s) * x, k)).epsilon(1e-10));
      CHECK(cpr_star_check(g, x, k).passed());
      const ChainReport star_sa = cpr_star_check(s, x, k);
      CHECK(star_sa.values[0] == doctest::Approx(base.values[0]).epsilon(1e-10));
      const CMatrix u = haar_unitary(n, rng);
      const ChainReport star_u = cpr_star_check(u, x, k);
      CHECK(star_u.values[0] == doctest::Approx(star_u.values[1]).epsilon(1e-10));
    }
  }
  const CMatrix x = ginibre(2, 2, rng);
  const ChainReport ids = cpr_two_sided_check(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2),
                                              x, NormKind::op());
  CHECK(ids.values[0] == doctest::Approx(ids.values[1]));
}

TEST_CASE("zhan params") {
  CHECK(ZhanParams{0.0, 0.75}.regime() == 1);
  CHECK(ZhanParams{0.0, 1.0}.regime() == 1);
  CHECK(ZhanParams{0.0, 1.25}.regime() == 2);
  CHECK_THROWS_AS((ZhanParams{2.5, 1.0}.validate()), LabError);
  CHECK_THROWS_AS((ZhanParams{0.0, 0.4}.validate()), LabError);
  CHECK_THROWS_AS((ZhanParams{0.0, 1.6}.validate()), LabError);
  CHECK_NOTHROW((ZhanParams{-7.0, 0.5}.validate()));
}

TEST_CASE("zhan_chain trivial cases") {
  Rng rng(3);
  const PositiveOperator id(CMatrix::Identity(3, 3));
  const CMatrix x = ginibre(3, 3, rng);
  for (double r : {0.5, 0.75, 1.0, 1.25, 1.5}) {
    const ChainReport c = zhan_chain(id, id, x, ZhanParams{0.0, r}, NormKind::op());
    REQUIRE(c.values.size() == 8);
    for (double v : c.values) CHECK(v == doctest::Approx(4.0 * oracle::op_norm(x)).epsilon(1e-12));
  }
  const PositiveOperator a = random_posdef(3, 100.0, rng);
  const PositiveOperator b = random_posdef(3, 100.0, rng);
  const ChainReport t2 = zhan_chain(a, b, x, ZhanParams{2.0, 1.0}, NormKind::op());
  const double quad = oracle::op_norm(a.matrix() * a.matrix() * x + x * b.matrix() * b.matrix() +
                                      2.0 * a.matrix() * x * b.matrix());
  CHECK(t2.values[0] == doctest::Approx(2.0 * quad).epsilon(1e-10));
  CHECK(t2.values[1] == doctest::Approx(2.0 * quad).epsilon(1e-10));
  // (t + 2) |||AXB + AXB||| = 8 |||AXB||| at t = 2, r = 1.
  CHECK(t2.values[7] == doctest::Approx(8.0 * oracle::op_norm(a.matrix() * x * b.matrix()))
                            .epsilon(1e-10));
  CHECK(t2.passed());
}

TEST_CASE("zhan_chain members against direct evaluation") {
  Rng rng(4);
  const PositiveOperator a = random_posdef(3, 100.0, rng);
  const PositiveOperator b = random_posdef(3, 100.0, rng);
  const CMatrix x = ginibre(3, 3, rng);
  const CMatrix am = a.matrix(), bm = b.matrix();
  const auto m = [&](double p, double q) {
    return oracle::schatten(oracle::power(am, p) * x * oracle::power(bm, q) +
                                oracle::power(am, q) * x * oracle::power(bm, p),
                            2.0);
  };
  for (double r : {0.75, 1.25}) {
    const double t = 1.0;
    const ChainReport c = zhan_chain(a, b, x, ZhanParams{t, r}, NormKind::frobenius());
    const double corr = (4.0 - 2.0 * t) * oracle::schatten(am * x * bm, 2.0);
    const bool first = r <= 1.0;
    const double lo = first ? 0.0 : r - 0.5;
    const double hi = first ? r - 0.5 : 1.0;
    double integral = 0.0;
    const int panels = 400;
    const double h = (hi - lo) / panels;
    for (int i = 0; i <= panels; ++i) {
      const double nu = lo + i * h;
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      integral += w * m(nu + 0.5, 1.5 - nu);
    }
    integral *= h / 3.0 / (hi - lo);
    const double e1 = first ? (2 * r + 1) / 4 : (2 * r + 3) / 4;
    const double e2 = first ? (7 - 2 * r) / 4 : (5 - 2 * r) / 4;
    const double expect[8] = {
        2.0 * oracle::schatten(am * am * x + x * bm * bm + t * am * x * bm, 2.0),
        2.0 * oracle::schatten(am * am * x + x * bm * bm + 2.0 * am * x * bm, 2.0) - corr,
        4.0 * m(1.5, 0.5) - corr,
        2.0 * m(1.5, 0.5) + 2.0 * m(r, 2.0 - r) - corr,
        4.0 * integral - corr,
        4.0 * m(e1, e2) - corr,
        4.0 * m(r, 2.0 - r) - corr,
        (t + 2.0) * m(r, 2.0 - r)};
    for (int i = 0; i < 8; ++i) {
      CHECK(c.values[i] == doctest::Approx(expect[i]).epsilon(1e-8));
    }
    CHECK(c.passed());
  }
}

TEST_CASE("zhan_check is the chain's first and last member") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PositiveOperator a = random_posdef(3, 100.0, rng);
    const PositiveOperator b = random_posdef(3, 100.0, rng);
    const CMatrix x = ginibre(3, 3, rng);
    const ZhanParams p{rng.uniform(-3.0, 2.0), rng.uniform(0.5, 1.5)};
    for (const NormKind& k : all_kinds()) {
      const ChainReport chain = zhan_chain(a, b, x, p, k);
      const ChainReport check = zhan_check(a, b, x, p, k);
      CHECK(check.values[0] == chain.values[0]);
      CHECK(check.values[1] == chain.values[7]);
      CHECK(check.passed());
    }
  }
  const PositiveOperator id(CMatrix::Identity(2, 2));
  const CMatrix x = ginibre(2, 2, rng);
  const ChainReport eq = zhan_check(id, id, x, ZhanParams{0.5, 0.8}, NormKind::op());
  CHECK(eq.values[0] == doctest::Approx(eq.values[1]));
  // t <= -2: the right side is nonpositive.
  const PositiveOperator a = random_posdef(2, 10.0, rng);
  const ChainReport triv = zhan_check(a, a, x, ZhanParams{-3.0, 1.0}, NormKind::op());
  CHECK(triv.values[1] <= 0.0);
  CHECK(triv.passed());
}

TEST_CASE("zhan chain continuity at r = 1") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const PositiveOperator a = random_posdef(4, 1e3, rng);
    const PositiveOperator b = random_posdef(4, 1e3, rng);
    const CMatrix x = ginibre(4, 4, rng);
    const ZhanParams p{0.5, 1.0};
    const auto c1 = zhan_chains(a, b, x, p, all_kinds(), 1);
    const auto c2 = zhan_chains(a, b, x, p, all_kinds(), 2);
    for (size_t k = 0; k < c1.size(); ++k) {
      for (size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(c1[k].values[i] - c2[k].values[i]) <=
              1e-10 * std::max(1.0, std::abs(c1[k].values[i])));
      }
    }
  }
  Rng r2(1);
  const PositiveOperator a = random_posdef(2, 10.0, r2);
  CHECK_THROWS_AS(zhan_chains(a, a, ginibre(2, 2, r2), ZhanParams{0.0, 0.75}, all_kinds(), 2),
                  LabError);
}

TEST_CASE("zhan chains pass on random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const PositiveOperator a = random_posdef(n, 100.0, rng);
    const PositiveOperator b = random_posdef(n, 100.0, rng);
    const CMatrix x = random_x(n, x_kind_for_instance(trial), rng);
    for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      for (double r : {0.5, 0.75, 1.0, 1.25, 1.5}) {
        for (const ChainReport& c : zhan_chains(a, b, x, ZhanParams{t, r}, all_kinds())) {
          CHECK(c.passed());
        }
      }
    }
  }
}

TEST_CASE("cor23 examples and the modulus placement") {
  Rng rng(8);
  const CMatrix x = ginibre(3, 3, rng);
  const CMatrix id = CMatrix::Identity(3, 3);
  const ChainReport eq = cor23_check(id, id, x, 0.0, NormKind::op());
  CHECK(eq.values[0] == doctest::Approx(2.0 * oracle::op_norm(x)));
  CHECK(eq.values[1] == doctest::Approx(2.0 * oracle::op_norm(x)));
  const CMatrix b = ginibre(3, 3, rng);
  const ChainReport zero = cor23_check(CMatrix::Zero(3, 3), b, x, 1.0, NormKind::op());
  CHECK(zero.values[0] == doctest::Approx(oracle::op_norm(x * b * b.adjoint())));
  CHECK(zero.values[1] == 0.0);

  // Written with AXB* on the right, the inequality fails for A = I,
  // X = B nilpotent, t = 0. The implemented form holds there.
  const CMatrix e = nilpotent();
  const CMatrix i2 = CMatrix::Identity(2, 2);
  const double literal_lhs = oracle::op_norm(e + e * e * e.adjoint());
  const double literal_rhs = 2.0 * oracle::op_norm(e * e.adjoint());
  CHECK(literal_lhs == doctest::Approx(1.0));
  CHECK(literal_rhs == doctest::Approx(2.0));
  CHECK(literal_lhs < literal_rhs);
  CHECK(cor23_check(i2, e, e, 0.0, NormKind::op()).passed());

  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix a = ginibre(3, 3, rng);
    const CMatrix c = ginibre(3, 3, rng);
    const CMatrix y = ginibre(3, 3, rng);
    for (double t : {-1.0, 0.0, 0.5, 1.0, 1.5, 2.0}) {
      for (const NormKind& k : all_kinds()) CHECK(cor23_check(a, c, y, t, k).passed());
    }
  }
  CHECK_THROWS_AS(cor23_check(id, id, x, 2.5, NormKind::op()), LabError);
}

TEST_CASE("cor23 with positive A, B reproduces zhan_check at r = 1") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const PositiveOperator a = random_posdef(3, 100.0, rng);
    const PositiveOperator b = random_posdef(3, 100.0, rng);
    const CMatrix x = ginibre(3, 3, rng);
    const double t = rng.uniform(-1.0, 2.0);
    for (const NormKind& k : all_kinds()) {
      const ChainReport c = cor23_check(a.matrix(), b.matrix(), x, t, k);
      const ChainReport z = zhan_check(a, b, x, ZhanParams{t, 1.0}, k);
      CHECK(std::abs(2.0 * c.values[0] - z.values[0]) <= 1e-10 * z.values[0]);
      CHECK(std::abs(2.0 * c.values[1] - z.values[1]) <= 1e-10 * std::abs(z.values[1]) + 1e-12);
    }
  }
}

TEST_CASE("cor24") {
  Rng rng(10);
  const PositiveOperator id(CMatrix::Identity(3, 3));
  const CMatrix x = ginibre(3, 3, rng);
  const ChainReport eq = cor24_check(id, id, x, 0.7, NormKind::op());
  CHECK(eq.values[0] == doctest::Approx(2.7 * oracle::op_norm(x)));
  CHECK(eq.values[1] == doctest::Approx(2.7 * oracle::op_norm(x)));
  for (int trial = 0; trial < 40; ++trial) {
    const PositiveOperator p = random_posdef(3, 100.0, rng);
    const PositiveOperator q = random_posdef(3, 100.0, rng);
    const CMatrix y = ginibre(3, 3, rng);
    const ChainReport same = cor24_check(p, p, y, 0.0, NormKind::op());
    const ChainReport base = cpr_check(p.matrix(), y, NormKind::op());
    CHECK(same.values[0] == doctest::Approx(base.values[0]).epsilon(1e-10));
    for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      for (const NormKind& k : all_kinds()) CHECK(cor24_check(p, q, y, t, k).passed());
    }
  }
}

TEST_CASE("mos1 and mos2 match C-P-R for the self-adjoint dilation") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const CMatrix s = random_invertible(n, 100.0, rng);
    const CMatrix x = ginibre(n, n, rng);
    const CMatrix y = ginibre(n, n, rng);
    CMatrix t = CMatrix::Zero(2 * n, 2 * n);
    t.topRightCorner(n, n) = s;
    t.bottomLeftCorner(n, n) = s.adjoint();
    CMatrix zd = CMatrix::Zero(2 * n, 2 * n);
    zd.topLeftCorner(n, n) = x;
    zd.bottomRightCorner(n, n) = y;
    CMatrix za = CMatrix::Zero(2 * n, 2 * n);
    za.topRightCorner(n, n) = x;
    za.bottomLeftCorner(n, n) = y;
    for (const NormKind& k : all_kinds()) {
      const ChainReport m1 = mos1_check(s, x, y, k);
      const ChainReport m2 = mos2_check(s, x, y, k);
      CHECK(m1.passed());
      CHECK(m2.passed());
      CHECK(m1.values[0] == doctest::Approx(cpr_check(t, zd, k).values[0]).epsilon(1e-9));
      CHECK(m2.values[0] == doctest::Approx(cpr_check(t, za, k).values[0]).epsilon(1e-9));
      CHECK(m1.values[1] == doctest::Approx(2.0 * norm(zd, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("mos reductions and final corollary") {
  Rng rng(12);
  const CMatrix x = ginibre(3, 3, rng);
  const CMatrix y = ginibre(3, 3, rng);
  const CMatrix id = CMatrix::Identity(3, 3);
  for (const NormKind& k : all_kinds()) {
    const ChainReport m1 = mos1_check(id, x, y, k);
    CHECK(m1.values[0] == doctest::Approx(m1.values[1]).epsilon(1e-12));
    const ChainReport m2 = mos2_check(id, x, y, k);
    CHECK(m2.values[0] == doctest::Approx(m2.values[1]).epsilon(1e-12));
  }
  const CMatrix zero = CMatrix::Zero(3, 3);
  const CMatrix s = random_invertible(3, 50.0, rng);
  const ChainReport block = mos1_check(s, x, zero, NormKind::op());
  CHECK(block.values[0] ==
        doctest::Approx(oracle::op_norm(s.adjoint() * x * inverse(s).adjoint() + inverse(s) * x * s))
            .epsilon(1e-10));

  const CMatrix h = random_selfadjoint_invertible(3, 50.0, rng).matrix;
  const ChainReport red = mos2_check(h, x, x, NormKind::trace());
  const double cpr = norm(h * x * inverse(h) + inverse(h) * x * h, NormKind::trace());
  CHECK(red.values[0] == doctest::Approx(2.0 * cpr).epsilon(1e-10));

  for (double p : {1.0, 2.0, 3.0}) {
    const FinalCorollaryReport f = final_cor_check(id, x, p);
    CHECK(f.schatten_form.values[0] == doctest::Approx(f.schatten_form.values[1]).epsilon(1e-12));
    CHECK(f.schatten_form.values[1] ==
          doctest::Approx(std::pow(2.0, p + 1) * std::pow(oracle::schatten(x, p), p)).epsilon(1e-10));
    const CMatrix u = haar_unitary(3, rng);
    const FinalCorollaryReport fu = final_cor_check(u, x, p);
    CHECK(fu.operator_form.values[0] == doctest::Approx(2.0 * oracle::op_norm(x)).epsilon(1e-10));
  }
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix g = random_invertible(4, 100.0, rng);
    const CMatrix z = ginibre(4, 4, rng);
    const FinalCorollaryReport f = final_cor_check(g, z, 3.0);
    CHECK(f.passed());
    const ChainReport m1 = mos1_check(g, z, z, NormKind::op());
    CHECK(std::abs(m1.values[0] - f.operator_form.values[0]) <= 1e-12 * m1.values[0]);
  }
  CHECK_THROWS_AS(final_cor_check(id, x, 0.5), LabError);
  CHECK_THROWS_AS(mos1_check(CMatrix::Zero(3, 3), x, y, NormKind::op()), LabError);
}
