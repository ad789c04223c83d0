#pragma once

// Matrix realizations of the supported real forms: sl(2,R), su(p,q) with
// p + q <= 4, and sp(4,R).  Elements of g are real coordinate vectors in a
// Frobenius-orthonormal basis whose first dim_k members span k and whose
// remaining members span p.  Elements of the complexification are complex
// coordinate vectors in the same basis.

#include "crownkit/errors.hpp"
#include "crownkit/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace crownkit {

/// How the Cartan involution lifts holomorphically to the complex group.
enum class GroupInvolution {
  transpose,           // theta(g) = (g^T)^{-1}
  indefinite_unitary,  // theta(g) = S g S with S = diag(I_p, -I_q)
};

struct LieAlgebraModel {
  std::string name;
  int matrix_size = 0;
  int dim = 0;
  int dim_k = 0;
  std::vector<CMat> basis;
  Mat theta;
  Mat killing;
  /// structure[i] is the matrix of ad(basis[i]).
  std::vector<Mat> structure;
  /// Basis of a maximal abelian subspace of p, in coordinates.
  std::vector<Vec> cartan_seed;
  GroupInvolution involution = GroupInvolution::transpose;
  CMat signature;
  CMat coord_solver;

  int dim_p() const { return dim - dim_k; }

  CMat matrix(const CVec& coords) const {
    CMat m = CMat::Zero(matrix_size, matrix_size);
    for (int i = 0; i < dim; ++i) m += coords(i) * basis[static_cast<std::size_t>(i)];
    return m;
  }
  CMat matrix(const Vec& coords) const { return matrix(CVec(coords.cast<cplx>())); }

  /// Coordinates of a matrix of the complexified algebra (least squares).
  CVec coords(const CMat& m) const {
    const CVec flat = Eigen::Map<const CVec>(m.data(), m.size());
    return coord_solver * flat;
  }

  /// Distance of a matrix from the span of the basis (complex span).
  double span_residual(const CMat& m) const { return (matrix(coords(m)) - m).norm(); }

  Mat ad(const Vec& x) const {
    Mat out = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      if (x(i) != 0.0) out += x(i) * structure[static_cast<std::size_t>(i)];
    return out;
  }
  CMat ad(const CVec& x) const {
    CMat out = CMat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      if (x(i) != cplx(0.0)) out += x(i) * structure[static_cast<std::size_t>(i)].cast<cplx>();
    return out;
  }

  Vec bracket(const Vec& x, const Vec& y) const { return ad(x) * y; }
  CVec bracket(const CVec& x, const CVec& y) const { return ad(x) * y; }

  /// Killing form, extended complex-bilinearly (no conjugation).
  double killing_form(const Vec& x, const Vec& y) const { return x.dot(killing * y); }
  cplx killing_form(const CVec& x, const CVec& y) const {
    return (x.transpose() * killing.cast<cplx>() * y)(0, 0);
  }

  /// Positive definite form B_theta(X, Y) = -B(X, theta Y).
  Mat theta_inner() const { return -killing * theta; }

  /// Holomorphic lift of g -> theta(g)^{-1}.
  CMat group_sigma(const CMat& g) const {
    if (involution == GroupInvolution::transpose) return g.transpose();
    return signature * g.inverse() * signature;
  }

  /// Embedding of G^C / K^C into matrices: g K^C -> g theta(g)^{-1}.
  CMat symmetric_embedding(const CMat& g) const { return g * group_sigma(g); }

  /// Group element exp(X) for X in the complexified algebra.
  CMat exp(const CVec& x) const { return expm(matrix(x)); }
};

namespace detail {

inline CMat unit(int n, int r, int c) {
  CMat m = CMat::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

inline Vec flatten_real(const CMat& m) {
  Vec out(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    out(i) = m.data()[i].real();
    out(m.size() + i) = m.data()[i].imag();
  }
  return out;
}

inline CMat unflatten(const Vec& v, int n) {
  CMat m(n, n);
  const Eigen::Index sz = static_cast<Eigen::Index>(n) * n;
  for (Eigen::Index i = 0; i < sz; ++i) m.data()[i] = cplx(v(i), v(sz + i));
  return m;
}

/// Frobenius-orthonormal basis of the real span of `gens`.
inline std::vector<CMat> frobenius_basis(const std::vector<CMat>& gens, int n) {
  Mat cols(2 * n * n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten_real(gens[i]);
  const Mat q = orthonormalize(cols, Mat::Identity(cols.rows(), cols.rows()));
  std::vector<CMat> out;
  for (Eigen::Index i = 0; i < q.cols(); ++i) out.push_back(unflatten(q.col(i), n));
  return out;
}

struct Realization {
  int n = 0;
  std::vector<CMat> k_gens;
  std::vector<CMat> p_gens;
  std::vector<CMat> cartan;
  GroupInvolution involution = GroupInvolution::transpose;
  CMat signature;
};

inline Realization sl2r() {
  Realization r;
  r.n = 2;
  CMat k(2, 2), h(2, 2), s(2, 2);
  k << 0, 1, -1, 0;
  h << 1, 0, 0, -1;
  s << 0, 1, 1, 0;
  r.k_gens = {k};
  r.p_gens = {h, s};
  r.cartan = {h};
  r.signature = CMat::Identity(2, 2);
  return r;
}

inline Realization su(int p, int q) {
  Realization r;
  const int n = p + q;
  r.n = n;
  const cplx i = imag_unit;
  auto in_same_block = [p](int a, int b) { return (a < p) == (b < p); };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (in_same_block(a, b)) {
        r.k_gens.push_back(unit(n, a, b) - unit(n, b, a));
        r.k_gens.push_back(i * (unit(n, a, b) + unit(n, b, a)));
      } else {
        r.p_gens.push_back(unit(n, a, b) + unit(n, b, a));
        r.p_gens.push_back(i * (unit(n, a, b) - unit(n, b, a)));
      }
    }
  for (int a = 0; a + 1 < n; ++a) r.k_gens.push_back(i * (unit(n, a, a) - unit(n, a + 1, a + 1)));
  for (int j = 0; j < std::min(p, q); ++j) r.cartan.push_back(unit(n, j, p + j) + unit(n, p + j, j));
  r.involution = GroupInvolution::indefinite_unitary;
  r.signature = CMat::Identity(n, n);
  for (int a = p; a < n; ++a) r.signature(a, a) = -1.0;
  return r;
}

inline Realization sp4r() {
  Realization r;
  r.n = 4;
  // X = [[A, B], [C, -A^T]] with B, C symmetric.
  auto block = [](const Mat& tl, const Mat& tr, const Mat& bl, const Mat& br) {
    Mat m(4, 4);
    m << tl, tr, bl, br;
    return CMat(m.cast<cplx>());
  };
  const Mat z = Mat::Zero(2, 2);
  Mat anti(2, 2);
  anti << 0, 1, -1, 0;
  std::vector<Mat> sym;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      Mat s = Mat::Zero(2, 2);
      s(a, b) = 1.0;
      s(b, a) = 1.0;
      sym.push_back(s);
    }
  r.k_gens.push_back(block(anti, z, z, anti));
  for (const Mat& s : sym) r.k_gens.push_back(block(z, s, -s, z));
  for (const Mat& s : sym) r.p_gens.push_back(block(s, z, z, -s));
  for (const Mat& s : sym) r.p_gens.push_back(block(z, s, s, z));
  Mat h1 = Mat::Zero(2, 2), h2 = Mat::Zero(2, 2);
  h1(0, 0) = 1.0;
  h2(1, 1) = 1.0;
  r.cartan = {block(h1, z, z, -h1), block(h2, z, z, -h2)};
  r.signature = CMat::Identity(4, 4);
  return r;
}

inline std::string normalize_name(std::string name) {
  std::string out;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

} // namespace detail

/// Identifiers accepted by build_algebra.
inline std::vector<std::string> supported_spaces() {
  return {"sl2r", "su11", "su21", "su12", "su31", "su13", "su22", "sp4r"};
}

/// Build the matrix model of a supported pair.  Accepts "sl2r", "sp4r" and
/// "su<p><q>" (also written "su(p,q)") with p, q >= 1 and p + q <= 4.
inline LieAlgebraModel build_algebra(const std::string& raw_name) {
  const std::string name = detail::normalize_name(raw_name);
  detail::Realization real;
  if (name == "sl2r") {
    real = detail::sl2r();
  } else if (name == "sp4r") {
    real = detail::sp4r();
  } else if (name.size() == 4 && name.rfind("su", 0) == 0 && std::isdigit(static_cast<unsigned char>(name[2])) &&
             std::isdigit(static_cast<unsigned char>(name[3]))) {
    const int p = name[2] - '0';
    const int q = name[3] - '0';
    if (p < 1 || q < 1 || p + q > 4) throw configuration_error("unsupported pair: " + raw_name);
    real = detail::su(p, q);
  } else {
    throw configuration_error("unsupported pair: " + raw_name);
  }

  LieAlgebraModel m;
  m.name = name;
  m.matrix_size = real.n;
  const auto kb = detail::frobenius_basis(real.k_gens, real.n);
  const auto pb = detail::frobenius_basis(real.p_gens, real.n);
  m.basis = kb;
  m.basis.insert(m.basis.end(), pb.begin(), pb.end());
  m.dim = static_cast<int>(m.basis.size());
  m.dim_k = static_cast<int>(kb.size());
  m.involution = real.involution;
  m.signature = real.signature;

  const int n2 = real.n * real.n;
  CMat flat(n2, m.dim);
  for (int i = 0; i < m.dim; ++i)
    flat.col(i) = Eigen::Map<const CVec>(m.basis[static_cast<std::size_t>(i)].data(), n2);
  m.coord_solver = flat.completeOrthogonalDecomposition().pseudoInverse();

  auto real_coords = [&](const CMat& x) -> Vec {
    const CVec c = m.coords(x);
    if (m.span_residual(x) > 1e-10 || c.imag().norm() > 1e-10)
      throw structure_error("matrix leaves the real span of the basis in " + name);
    return c.real();
  };

  m.structure.assign(static_cast<std::size_t>(m.dim), Mat::Zero(m.dim, m.dim));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) {
      const CMat& bi = m.basis[static_cast<std::size_t>(i)];
      const CMat& bj = m.basis[static_cast<std::size_t>(j)];
      m.structure[static_cast<std::size_t>(i)].col(j) = real_coords(bi * bj - bj * bi);
    }

  m.theta = Mat::Zero(m.dim, m.dim);
  for (int j = 0; j < m.dim; ++j) m.theta.col(j) = real_coords(-m.basis[static_cast<std::size_t>(j)].adjoint());

  m.killing = Mat::Zero(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      m.killing(i, j) = (m.structure[static_cast<std::size_t>(i)] * m.structure[static_cast<std::size_t>(j)]).trace();

  for (const CMat& h : real.cartan) m.cartan_seed.push_back(real_coords(h));
  return m;
}

/// Residuals of the model invariants.
struct ModelCheck {
  double theta_involution = 0;   // |theta^2 - Id|
  double killing_trace = 0;      // |B - tr(ad ad)|
  double theta_isometry = 0;     // |theta^T B theta - B|
  double k_max_eigenvalue = 0;   // must be < 0
  double p_min_eigenvalue = 0;   // must be > 0
};

inline ModelCheck check_model(const LieAlgebraModel& m) {
  ModelCheck c;
  c.theta_involution = (m.theta * m.theta - Mat::Identity(m.dim, m.dim)).cwiseAbs().maxCoeff();
  double kt = 0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) {
      const Vec ei = Vec::Unit(m.dim, i), ej = Vec::Unit(m.dim, j);
      kt = std::max(kt, std::abs((m.ad(ei) * m.ad(ej)).trace() - m.killing(i, j)));
    }
  c.killing_trace = kt;
  c.theta_isometry = (m.theta.transpose() * m.killing * m.theta - m.killing).cwiseAbs().maxCoeff();
  const Mat bk = m.killing.topLeftCorner(m.dim_k, m.dim_k);
  const Mat bp = m.killing.bottomRightCorner(m.dim_p(), m.dim_p());
  c.k_max_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(bk).eigenvalues().maxCoeff();
  c.p_min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(bp).eigenvalues().minCoeff();
  return c;
}

} // namespace crownkit
