#pragma once

// Operators on p^C attached to a point H of the cell Omega: F_a, E_a, Psi,
// Psi_*, L_a and the k-element of the slice decomposition of iY.
// All operators act on block coordinates (see so_system.hpp).

#include "crownkit/errors.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/so_system.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace crownkit {

struct CellPoint {
  Vec t;
  bool regular = false;
  /// min over positive roots of |alpha(H)|.
  double min_root = 0;
  /// max over positive roots of |alpha(H)|.
  double max_root = 0;
};

enum class OperatorKind { F_a, E_a, PsiStar, L_a };

struct FrameOperator {
  /// Real matrix on block coordinates; complex-linear extension unless
  /// antilinear is set, in which case Z -> matrix * conj(Z).
  Mat matrix;
  OperatorKind kind = OperatorKind::F_a;
  bool antilinear = false;
  CellPoint base;

  CVec apply(const CVec& z) const {
    const CMat m = matrix.cast<cplx>();
    return antilinear ? CVec(m * z.conjugate()) : CVec(m * z);
  }
  /// Real 2n x 2n matrix acting on [Re z; Im z].
  Mat realified() const {
    return antilinear ? realify_antilinear(matrix.cast<cplx>()) : realify_linear(matrix.cast<cplx>());
  }
};

struct CellMargins {
  double eps = 1e-9;
  double eps_reg = 1e-6;
};

/// Membership in Omega with the regularity flag; throws domain_error naming
/// the violating root.
inline CellPoint cell_contains(const SOSystem& so, const Vec& t, const CellMargins& mg = {}) {
  if (t.size() != so.rank) throw domain_error("cell coordinates have wrong length");
  CellPoint cp;
  cp.t = t;
  cp.min_root = std::numeric_limits<double>::infinity();
  for (const auto& root : so.roots.positive) {
    const double v = std::abs(root.e.cast<double>().dot(t));
    if (v >= pi / 2 - mg.eps) throw domain_error("outside the cell: |" + root.label() + "(H)| = " + std::to_string(v));
    cp.min_root = std::min(cp.min_root, v);
    cp.max_root = std::max(cp.max_root, v);
  }
  cp.regular = cp.min_root > mg.eps_reg;
  return cp;
}

/// F_a: cos alpha(H) on p[alpha], identity on a.
inline FrameOperator f_a(const SOSystem& so, const CellPoint& h) {
  FrameOperator op;
  op.kind = OperatorKind::F_a;
  op.base = h;
  op.matrix = so.column_values(h.t).array().cos().matrix().asDiagonal();
  return op;
}

/// pi_# o Ad(exp(-iH)) restricted to p^C, from the matrix exponential.
inline CMat f_a_definition(const SOSystem& so, const CellPoint& h) {
  const CMat ad = so.model.ad(CVec(so.h_of(h.t).cast<cplx>()));
  const CMat ad_inv_a = expm(CMat(-imag_unit * ad));
  return so.pi_sharp.cast<cplx>() * ad_inv_a * so.p_frame.cast<cplx>();
}

/// E_a: sinc alpha(H) on p[alpha], identity on a.
inline FrameOperator e_a(const SOSystem& so, const CellPoint& h) {
  FrameOperator op;
  op.kind = OperatorKind::E_a;
  op.base = h;
  const Vec v = so.column_values(h.t);
  op.matrix = Mat::Zero(so.dim_p, so.dim_p);
  for (int i = 0; i < so.dim_p; ++i) op.matrix(i, i) = sinc(v(i));
  return op;
}

/// pi_# o sum_n (-1)^n/(n+1)! ad_{iH}^n restricted to p^C.
inline CMat e_a_series(const SOSystem& so, const CellPoint& h) {
  const CMat ad = so.model.ad(CVec(so.h_of(h.t).cast<cplx>()));
  return so.pi_sharp.cast<cplx>() * dexp_series(CMat(imag_unit * ad)) * so.p_frame.cast<cplx>();
}

/// Psi(Y) = -I0(i pi_#(Ad(exp iY) Z0)), Y in p given in block coordinates.
/// The imaginary residue of the composition is returned through `imag_residue`.
inline Vec psi(const SOSystem& so, const Vec& y, double* imag_residue = nullptr) {
  const CMat ad = so.model.ad(CVec(so.p_embed(y).cast<cplx>()));
  const CVec moved = expm(CMat(imag_unit * ad)) * so.Z0.cast<cplx>();
  const CVec z = imag_unit * so.project(moved);
  const CVec out = -(so.I0.cast<cplx>() * z);
  if (imag_residue != nullptr) *imag_residue = out.imag().cwiseAbs().maxCoeff();
  return out.real();
}

/// Psi restricted to a: coefficients of Psi(sum t_j A_j) in the A_j basis.
inline Vec psi_on_a(const SOSystem& so, const Vec& t) {
  Vec y = Vec::Zero(so.dim_p);
  y.head(so.rank) = t;
  return psi(so, y).head(so.rank);
}

/// (Psi_*)_H: cos lambda_j(H) on A_j, alpha(Psi(H))/alpha(H) on p[alpha].
/// For |alpha(H)| < 1e-4 the quotient is replaced by its limit
/// sinc(alpha(H)) cos beta(H), beta the I0-partner of alpha.
inline FrameOperator psi_star(const SOSystem& so, const CellPoint& h) {
  FrameOperator op;
  op.kind = OperatorKind::PsiStar;
  op.base = h;
  const Vec v = so.column_values(h.t);
  const Vec tp = psi_on_a(so, h.t);
  const Vec vp = so.column_values(tp);
  op.matrix = Mat::Zero(so.dim_p, so.dim_p);
  for (int j = 0; j < so.rank; ++j) op.matrix(j, j) = std::cos(2.0 * h.t(j));
  for (int i = so.rank; i < so.dim_p; ++i) {
    if (std::abs(v(i)) < 1e-4) {
      const double beta = v(so.column_partner[static_cast<std::size_t>(i)]);
      op.matrix(i, i) = sinc(v(i)) * std::cos(beta);
    } else {
      op.matrix(i, i) = vp(i) / v(i);
    }
  }
  return op;
}

/// Differential of psi at H by central differences (block coordinates).
inline Mat psi_star_fd(const SOSystem& so, const CellPoint& h, double step = 1e-5) {
  Mat out(so.dim_p, so.dim_p);
  Vec base = Vec::Zero(so.dim_p);
  base.head(so.rank) = h.t;
  for (int i = 0; i < so.dim_p; ++i) {
    Vec yp = base, ym = base;
    yp(i) += step;
    ym(i) -= step;
    out.col(i) = (psi(so, yp) - psi(so, ym)) / (2.0 * step);
  }
  return out;
}

/// L_a: Z -> F_a I0 F_a^{-1} conj(Z).
inline FrameOperator l_a(const SOSystem& so, const CellPoint& h) {
  const Mat f = f_a(so, h).matrix;
  FrameOperator op;
  op.kind = OperatorKind::L_a;
  op.antilinear = true;
  op.base = h;
  op.matrix = f * so.I0 * f.inverse();
  return op;
}

/// L_a assembled as I0 F_a^{-1} (Psi_*)_H E_a^{-1} (composed with conjugation).
inline FrameOperator l_a_via_psi(const SOSystem& so, const CellPoint& h) {
  FrameOperator op;
  op.kind = OperatorKind::L_a;
  op.antilinear = true;
  op.base = h;
  op.matrix = so.I0 * f_a(so, h).matrix.inverse() * psi_star(so, h).matrix * e_a(so, h).matrix.inverse();
  return op;
}

/// C = -sum_alpha cot(alpha(H)) K^alpha for Y in p (block coordinates);
/// returned in k_perp coordinates.
inline Vec slice_k_component(const SOSystem& so, const CellPoint& h, const Vec& y, double eps_reg = 1e-6) {
  if (!h.regular || h.min_root <= eps_reg) throw singularity_error("cotangent of a vanishing root");
  const Vec v = so.column_values(h.t);
  Vec c(so.dim_k_perp());
  for (int i = so.rank; i < so.dim_p; ++i) c(i - so.rank) = -std::cos(v(i)) / std::sin(v(i)) * y(i);
  return c;
}

} // namespace crownkit
