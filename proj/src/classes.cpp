#include "cprlab/classes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cprlab/random.hpp"

namespace cprlab {
namespace {

constexpr double kSpectralSlack = 1e-12;
constexpr double kPsdSlack = 1e-10;
constexpr double kViolationSlack = 1e-9;

void require_self_adjoint_invertible(const CMatrix& s) {
  require_square(s, "S");
  if (!is_hermitian(s)) {
    throw LabError(ErrorCode::kNotHermitian, "S must be self-adjoint");
  }
}

double op_norm(const CMatrix& a) { return singular_values(a)(0); }

struct FormInfo {
  CharacterizationForm form;
  std::string_view name;
  OperatorClass cls;
};

constexpr std::array<FormInfo, 14> kForms = {{
    {CharacterizationForm::kIneq6, "ineq6", OperatorClass::kComplexScaledSelfAdjoint},
    {CharacterizationForm::kEq7, "eq7", OperatorClass::kComplexScaledSelfAdjoint},
    {CharacterizationForm::kIneq8, "ineq8", OperatorClass::kComplexScaledSelfAdjoint},
    {CharacterizationForm::kIneq9, "ineq9", OperatorClass::kNormal},
    {CharacterizationForm::kEq10, "eq10", OperatorClass::kNormal},
    {CharacterizationForm::kIneq11, "ineq11", OperatorClass::kNormal},
    {CharacterizationForm::kIneq12, "ineq12", OperatorClass::kNormal},
    {CharacterizationForm::kIneq13, "ineq13", OperatorClass::kRealScaledUnitary},
    {CharacterizationForm::kEq14, "eq14", OperatorClass::kComplexScaledReflection},
    {CharacterizationForm::kIneq15, "ineq15", OperatorClass::kComplexScaledSelfAdjoint},
    {CharacterizationForm::kEq16, "eq16", OperatorClass::kRealScaledUnitary},
    {CharacterizationForm::kIneq17, "ineq17", OperatorClass::kRealScaledUnitary},
    {CharacterizationForm::kEq18, "eq18", OperatorClass::kRealScaledUnitary},
    {CharacterizationForm::kEq19, "eq19", OperatorClass::kRealScaledUnitary},
}};

const FormInfo& info(CharacterizationForm form) {
  for (const FormInfo& f : kForms) {
    if (f.form == form) return f;
  }
  throw LabError(ErrorCode::kInvalidParams, "unknown characterization form");
}

}  // namespace

CMatrix phi(const CMatrix& s, double k, const CMatrix& x) {
  require_square(s, "S");
  if (x.rows() != s.rows() || x.cols() != s.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "X must match S");
  }
  const CMatrix s_inv = inverse(s);
  return s * x * s_inv + s_inv * x * s + k * x;
}

double phi_ratio(const CMatrix& s, const CMatrix& s_inv, double k, const CMatrix& x) {
  const CMatrix y = s * x * s_inv + s_inv * x * s + k * x;
  return op_norm(y) / op_norm(x);
}

DkSpectralResult dk_spectral_test(const RVector& eigenvalues, double k) {
  const Eigen::Index n = eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eigenvalues(i) == 0.0 || !std::isfinite(eigenvalues(i))) {
      throw LabError(ErrorCode::kZeroEigenvalue, "eigenvalues must be finite and nonzero");
    }
  }
  DkSpectralResult out;
  out.k_in_guarantee = k >= 0.0;
  out.pair_values.resize(n, n);
  out.worst_abs = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ratio = eigenvalues(i) / eigenvalues(j);
      const double m = ratio + 1.0 / ratio + k;
      out.pair_values(i, j) = m;
      if (std::abs(m) < out.worst_abs) {
        out.worst_abs = std::abs(m);
        out.worst_i = i;
        out.worst_j = j;
      }
    }
  }
  out.ok = out.worst_abs >= k + 2.0 - kSpectralSlack;
  return out;
}

double schur_rep_residual(const CMatrix& s, double k, const CMatrix& x) {
  require_self_adjoint_invertible(s);
  const HermEigen<Complex> eig = herm_eigen(s);
  const Eigen::Index n = s.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eig.eigenvalues(i) == 0.0) throw LabError(ErrorCode::kSingular, "S has a zero eigenvalue");
  }
  CMatrix multiplier(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double li = eig.eigenvalues(i);
      const double lj = eig.eigenvalues(j);
      multiplier(i, j) = li / lj + lj / li + k;
    }
  }
  const CMatrix& q = eig.vectors;
  const CMatrix direct = phi(s, k, x);
  const CMatrix via_schur = q * multiplier.cwiseProduct(q.adjoint() * x * q) * q.adjoint();
  return (direct - via_schur).norm() / std::max(1.0, direct.norm());
}

ChainReport schur_theorem_bound_check(const CMatrix& n, const CMatrix& x, double tol) {
  require_square(n, "N");
  if (x.rows() != n.rows() || x.cols() != n.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "X must match N");
  }
  if (!is_hermitian(n)) throw LabError(ErrorCode::kNotPSD, "N is not Hermitian");
  const HermEigen<Complex> eig = herm_eigen(n, /*compute_vectors=*/false);
  const double lo = eig.eigenvalues.minCoeff();
  const double hi = eig.eigenvalues.maxCoeff();
  if (lo < -kPsdSlack * std::max(hi, 0.0)) {
    throw LabError(ErrorCode::kNotPSD, "min eigenvalue " + std::to_string(lo));
  }
  const double max_diag = n.diagonal().real().maxCoeff();
  return make_chain({"max_i N_ii ||X||", "||N o X||"},
                    {max_diag * op_norm(x), op_norm(n.cwiseProduct(x))}, tol);
}

DkProbeResult dk_ratio_minimize(const CMatrix& s, double k,
                                const DkProbeOptions& options, Rng& rng) {
  require_self_adjoint_invertible(s);
  if (options.starts < 0 || options.iters < 0) {
    throw LabError(ErrorCode::kInvalidParams, "starts and iters must be >= 0");
  }
  const Eigen::Index n = s.rows();
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  const CMatrix s_star_inv = s_inv.adjoint();
  const HermEigen<Complex> eig = herm_eigen(s);

  DkProbeResult out;
  out.eigenvalues = eig.eigenvalues;
  out.k = k;
  out.spectral_ok = dk_spectral_test(eig.eigenvalues, k).ok;
  out.best_ratio = std::numeric_limits<double>::infinity();

  std::vector<CMatrix> seeds;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      seeds.push_back(eig.vectors.col(i) * eig.vectors.col(j).adjoint());
    }
  }
  seeds.push_back(CMatrix::Identity(n, n));
  const auto total = std::max<size_t>(seeds.size(), static_cast<size_t>(options.starts));

  const auto consider = [&](const CMatrix& x, double ratio) {
    if (ratio < out.best_ratio) {
      out.best_ratio = ratio;
      out.witness = x / op_norm(x);
    }
  };

  for (size_t start = 0; start < total; ++start) {
    CMatrix x = start < seeds.size() ? seeds[start] : ginibre(n, n, rng);
    x /= x.norm();
    consider(x, phi_ratio(s, s_inv, k, x));
    for (int it = 1; it <= options.iters; ++it) {
      const CMatrix y = s * x * s_inv + s_inv * x * s + k * x;
      const SvdResult dy = svd(y);
      const SvdResult dx = svd(x);
      const double num = dy.singular_values(0);
      const double den = dx.singular_values(0);
      const CMatrix g_num_outer = dy.left.col(0) * dy.right.col(0).adjoint();
      // Adjoint of phi applied to the top singular pair of phi(X).
      const CMatrix g_num = s_star * g_num_outer * s_star_inv +
                            s_star_inv * g_num_outer * s_star + k * g_num_outer;
      const CMatrix g_den = dx.left.col(0) * dx.right.col(0).adjoint();
      CMatrix grad = (g_num * den - num * g_den) / (den * den);
      // Tangent component on the Frobenius sphere.
      grad -= x.cwiseProduct(grad.conjugate()).sum().real() * x;
      const double gnorm = grad.norm();
      if (!(gnorm > 0.0)) break;
      x -= (0.1 / std::sqrt(static_cast<double>(it))) * grad / gnorm;
      x /= x.norm();
      consider(x, phi_ratio(s, s_inv, k, x));
    }
  }
  out.starts_used = static_cast<int>(total);
  return out;
}

std::string_view to_string(DkVerdict verdict) {
  switch (verdict) {
    case DkVerdict::kViolated: return "violated";
    case DkVerdict::kConsistent: return "consistent";
    case DkVerdict::kSpectrallyExcluded: return "spectrally_excluded";
  }
  return "unknown";
}

DkVerdict dk_verdict(const DkProbeResult& result) {
  if (!result.spectral_ok) return DkVerdict::kSpectrallyExcluded;
  if (result.best_ratio < (result.k + 2.0) * (1.0 - kViolationSlack)) {
    return DkVerdict::kViolated;
  }
  return DkVerdict::kConsistent;
}

const std::vector<CharacterizationForm>& all_characterization_forms() {
  static const std::vector<CharacterizationForm> forms = [] {
    std::vector<CharacterizationForm> out;
    for (const FormInfo& f : kForms) out.push_back(f.form);
    return out;
  }();
  return forms;
}

std::string_view to_string(CharacterizationForm form) { return info(form).name; }

std::optional<CharacterizationForm> parse_characterization_form(std::string_view text) {
  for (const FormInfo& f : kForms) {
    if (f.name == text) return f.form;
  }
  return std::nullopt;
}

bool is_equality(CharacterizationForm form) {
  switch (form) {
    case CharacterizationForm::kEq7:
    case CharacterizationForm::kEq10:
    case CharacterizationForm::kEq14:
    case CharacterizationForm::kEq16:
    case CharacterizationForm::kEq18:
    case CharacterizationForm::kEq19:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(OperatorClass cls) {
  switch (cls) {
    case OperatorClass::kComplexScaledSelfAdjoint: return "complex_scaled_selfadjoint";
    case OperatorClass::kNormal: return "normal";
    case OperatorClass::kRealScaledUnitary: return "real_scaled_unitary";
    case OperatorClass::kComplexScaledReflection: return "complex_scaled_reflection";
    case OperatorClass::kComplexScaledPositive: return "complex_scaled_positive";
  }
  return "unknown";
}

OperatorClass characterized_class(CharacterizationForm form) { return info(form).cls; }

CMatrix random_class_member(OperatorClass cls, Eigen::Index n, double cond, Rng& rng) {
  switch (cls) {
    case OperatorClass::kComplexScaledSelfAdjoint: {
      const CMatrix h = random_selfadjoint_invertible(n, cond, rng).matrix;
      return random_nonzero_scalar(rng) * h;
    }
    case OperatorClass::kNormal:
      return random_normal(n, cond, rng);
    case OperatorClass::kRealScaledUnitary: {
      const CMatrix u = haar_unitary(n, rng);
      return random_nonzero_real(rng) * u;
    }
    case OperatorClass::kComplexScaledReflection: {
      const CMatrix r = random_unitary_reflection(n, rng);
      return random_nonzero_scalar(rng) * r;
    }
    case OperatorClass::kComplexScaledPositive: {
      const CMatrix p = random_posdef(n, cond, rng).matrix();
      return random_nonzero_scalar(rng) * p;
    }
  }
  throw LabError(ErrorCode::kInvalidParams, "unknown operator class");
}

ChainReport characterization_check(const CMatrix& s, const CMatrix& x,
                                   CharacterizationForm form, const NormKind& kind) {
  require_square(s, "S");
  if (x.rows() != s.rows() || x.cols() != s.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "X must match S");
  }
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  const CMatrix l = s * x * s_inv;
  const CMatrix r = s_inv * x * s;
  const CMatrix l_star = s_star * x * s_inv;
  const CMatrix r_star = s_inv * x * s_star;
  const auto nk = [&](const CMatrix& m) { return norm(m, kind); };

  const auto geq = [](std::string a, double va, std::string b, double vb) {
    return make_relation(std::move(a), va, std::move(b), vb, Relation::kGreaterEqual,
                         kChainTolerance);
  };
  const auto leq = [](std::string a, double va, std::string b, double vb) {
    return make_relation(std::move(b), vb, std::move(a), va, Relation::kGreaterEqual,
                         kChainTolerance);
  };
  const auto eq = [](std::string a, double va, std::string b, double vb) {
    return make_relation(std::move(a), va, std::move(b), vb, Relation::kEqual,
                         kEqualityTolerance);
  };

  switch (form) {
    case CharacterizationForm::kIneq6:
      return geq("||L+R||", nk(l + r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kEq7:
      return eq("||L+R||", nk(l + r), "||L'+R'||", nk(l_star + r_star));
    case CharacterizationForm::kIneq8:
      return geq("||L+R||", nk(l + r), "||L'+R'||", nk(l_star + r_star));
    case CharacterizationForm::kIneq9:
      return geq("||L||+||R||", nk(l) + nk(r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kEq10:
      return eq("||L||+||R||", nk(l) + nk(r), "||L'||+||R'||", nk(l_star) + nk(r_star));
    case CharacterizationForm::kIneq11:
      return geq("||L||+||R||", nk(l) + nk(r), "||L'||+||R'||", nk(l_star) + nk(r_star));
    case CharacterizationForm::kIneq12:
      return leq("||L||+||R||", nk(l) + nk(r), "||L'||+||R'||", nk(l_star) + nk(r_star));
    case CharacterizationForm::kIneq13:
      return leq("||L+R||", nk(l + r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kEq14:
      return eq("||L+R||", nk(l + r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kIneq15:
      return leq("||L+R||", nk(l + r), "||L'+R'||", nk(l_star + r_star));
    case CharacterizationForm::kEq16:
      return eq("||L||+||R||", nk(l) + nk(r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kIneq17:
      return leq("||L||+||R||", nk(l) + nk(r), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kEq18:
      return eq("||L'+R'||", nk(l_star + r_star), "2||X||", 2.0 * nk(x));
    case CharacterizationForm::kEq19:
      return eq("||L'||+||R'||", nk(l_star) + nk(r_star), "2||X||", 2.0 * nk(x));
  }
  throw LabError(ErrorCode::kInvalidParams, "unknown characterization form");
}

}  // namespace cprlab
