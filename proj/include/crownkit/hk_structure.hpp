#pragma once

// Complex structures I, J, K, the forms omega_I, omega_J, omega_K, omega_can,
// the pull-back of omega_0, the potentials rho_J, rho_I, rho_can and the
// moment maps.  Tangent vectors are block coordinates of p^C in the (ga)_*
// trivialization unless a function name says "induced"; induced coordinates
// Z of a vector Z~ are related by a_* Z = (F_a^{-1} Z)~.

#include "crownkit/chart.hpp"
#include "crownkit/crown_ops.hpp"
#include "crownkit/errors.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/so_system.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace crownkit {

struct HKConfig {
  double h_fd = 1e-4;
  double h_outer = 5e-4;
  double eps = 1e-9;
  double eps_reg = 1e-6;
  double r_chart = 0.3;
  double max_condition = 1e8;

  CellMargins margins() const { return {eps, eps_reg}; }
};

struct HKHandle {
  SOSystem so;
  HKConfig config;

  explicit HKHandle(SOSystem s, HKConfig c = {}) : so(std::move(s)), config(c) {}
  explicit HKHandle(const std::string& space, HKConfig c = {}) : so(build_so_system(space)), config(c) {}

  CellPoint cell(const Vec& t) const { return cell_contains(so, t, config.margins()); }
  int np() const { return so.dim_p; }
};

// ---------------------------------------------------------------------------
// Complex structures.

inline CVec J_apply(const CVec& z) { return imag_unit * z; }

inline CVec I_apply(const HKHandle& h, const Vec& t, const CVec& z) { return l_a(h.so, h.cell(t)).apply(z); }

inline CVec K_apply(const HKHandle& h, const Vec& t, const CVec& z) { return I_apply(h, t, J_apply(z)); }

inline CVec to_induced(const HKHandle& h, const Vec& t, const CVec& z) {
  return f_a(h.so, h.cell(t)).matrix.inverse().cast<cplx>() * z;
}
inline CVec from_induced(const HKHandle& h, const Vec& t, const CVec& z) {
  return f_a(h.so, h.cell(t)).matrix.cast<cplx>() * z;
}

/// I on induced coordinates: Z~ -> (I0 conj(Z))~.
inline CVec I_apply_induced(const HKHandle& h, const CVec& z_induced) {
  return h.so.I0.cast<cplx>() * z_induced.conjugate();
}

/// Real 2n x 2n matrices of J, I, K on [Re; Im] of block coordinates.
inline Mat J_real(const HKHandle& h) {
  const int n = h.np();
  return realify_linear(CMat(imag_unit * CMat::Identity(n, n)));
}
inline Mat I_real(const HKHandle& h, const Vec& t) { return l_a(h.so, h.cell(t)).realified(); }
inline Mat K_real(const HKHandle& h, const Vec& t) { return I_real(h, t) * J_real(h); }

// ---------------------------------------------------------------------------
// Forms.

inline double omega_I(const HKHandle& h, const CVec& z, const CVec& w) {
  return h.so.B(CVec(h.so.I0.cast<cplx>() * z), w).real();
}

inline double omega_K(const HKHandle& h, const CVec& z, const CVec& w) {
  return -h.so.B(CVec(h.so.I0.cast<cplx>() * z), w).imag();
}

/// omega_J(v, w) = omega_I(Jv, Iw).
inline double omega_J(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  return omega_I(h, J_apply(z), I_apply(h, t, w));
}

/// -Im B(I0 Z, F_a I0 F_a^{-1} conj(W)).
inline double omega_J_trivialized(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const Mat l = l_a(h.so, h.cell(t)).matrix;
  return -h.so.B(CVec(h.so.I0.cast<cplx>() * z), CVec(l.cast<cplx>() * w.conjugate())).imag();
}

/// Induced-field forms.
inline double omega_I_induced(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const CMat f = f_a(h.so, h.cell(t)).matrix.cast<cplx>();
  return h.so.B(CVec(h.so.I0.cast<cplx>() * f * z), CVec(f * w)).real();
}
inline double omega_K_induced(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const CMat f = f_a(h.so, h.cell(t)).matrix.cast<cplx>();
  return -h.so.B(CVec(h.so.I0.cast<cplx>() * f * z), CVec(f * w)).imag();
}
/// -Im B(Z, (Psi_*)_H E_a^{-1} F_a conj(W)); requires a regular point.
inline double omega_J_induced(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const CellPoint c = h.cell(t);
  if (!c.regular) throw singularity_error("induced form of omega_J needs a regular point");
  const Mat k = psi_star(h.so, c).matrix * e_a(h.so, c).matrix.inverse() * f_a(h.so, c).matrix;
  return -h.so.B(z, CVec(k.cast<cplx>() * w.conjugate())).imag();
}

/// omega_can(a_* Z, a_* W) = -Im B(F_a^{-1} Z, E_a^{-1} conj(W)).
inline double omega_can(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const CellPoint c = h.cell(t);
  const CMat fi = f_a(h.so, c).matrix.inverse().cast<cplx>();
  const CMat ei = e_a(h.so, c).matrix.inverse().cast<cplx>();
  return -h.so.B(CVec(fi * z), CVec(ei * w.conjugate())).imag();
}
/// -Im B(Z, E_a^{-1} F_a conj(W)) on induced coordinates.
inline double omega_can_induced(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  const CellPoint c = h.cell(t);
  const Mat k = e_a(h.so, c).matrix.inverse() * f_a(h.so, c).matrix;
  return -h.so.B(z, CVec(k.cast<cplx>() * w.conjugate())).imag();
}

/// p^* omega_0 on induced coordinates: B(I0 Re Z, Re W).
inline double omega_0_pullback_induced(const HKHandle& h, const CVec& z, const CVec& w) {
  return h.so.B(Vec(h.so.I0 * z.real()), Vec(w.real()));
}
inline double omega_0_pullback(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  return omega_0_pullback_induced(h, to_induced(h, t, z), to_induced(h, t, w));
}

/// Riemannian metric g(v, w) = omega_I(v, I w).
inline double metric(const HKHandle& h, const Vec& t, const CVec& z, const CVec& w) {
  return omega_I(h, z, I_apply(h, t, w));
}

enum class FormKind { omega_I, omega_J, omega_K, omega_can, omega_0, omega_I_minus_0 };

/// Matrix of a form on [Re; Im] of block coordinates.
inline Mat form_matrix(const HKHandle& h, FormKind kind, const Vec& t) {
  const int n = h.np();
  const CellPoint c = h.cell(t);
  const CMat i0 = h.so.I0.cast<cplx>();
  const CMat l = l_a(h.so, c).matrix.cast<cplx>();
  const CMat fi = f_a(h.so, c).matrix.inverse().cast<cplx>();
  const CMat ei = e_a(h.so, c).matrix.inverse().cast<cplx>();
  auto basis = [n](int k) {
    CVec z = CVec::Zero(n);
    if (k < n) z(k) = 1.0;
    else z(k - n) = imag_unit;
    return z;
  };
  auto eval = [&](FormKind f, const CVec& z, const CVec& w) -> double {
    switch (f) {
      case FormKind::omega_I: return h.so.B(CVec(i0 * z), w).real();
      case FormKind::omega_K: return -h.so.B(CVec(i0 * z), w).imag();
      case FormKind::omega_J: return -h.so.B(CVec(i0 * z), CVec(l * w.conjugate())).imag();
      case FormKind::omega_can: return -h.so.B(CVec(fi * z), CVec(ei * w.conjugate())).imag();
      case FormKind::omega_0: return h.so.B(Vec(h.so.I0 * (fi * z).real()), Vec((fi * w).real()));
      case FormKind::omega_I_minus_0: break;
    }
    return 0.0;
  };
  Mat out(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      const CVec za = basis(a), wb = basis(b);
      out(a, b) = kind == FormKind::omega_I_minus_0 ? eval(FormKind::omega_I, za, wb) - eval(FormKind::omega_0, za, wb)
                                                    : eval(kind, za, wb);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Potentials and the function f_I.

inline double f_I(double t) {
  if (std::abs(t) >= pi / 2) throw domain_error("f_I needs |t| < pi/2");
  return std::cos(t) - std::log1p(std::cos(t)) + std::log(2.0) - 1.0;
}

inline double f_I_prime(double t) {
  if (std::abs(t) >= pi / 2) throw domain_error("f_I needs |t| < pi/2");
  return -std::sin(t) + std::sin(t) / (1.0 + std::cos(t));
}

/// f~(t) = sin t / (t cos t) f'(t).
inline double f_tilde(const std::function<double(double)>& f_prime, double t) {
  return sinc(t) / std::cos(t) * f_prime(t);
}

inline double rho_J(const HKHandle& h, const Vec& t) {
  h.cell(t);
  double s = 0;
  for (Eigen::Index j = 0; j < t.size(); ++j) s += std::cos(2.0 * t(j));
  return -0.25 * h.so.C * s;
}

inline double rho_I(const HKHandle& h, const Vec& t) {
  h.cell(t);
  double s = 0;
  for (Eigen::Index j = 0; j < t.size(); ++j) s += f_I(2.0 * t(j));
  return -0.25 * h.so.C * s;
}

inline double rho_can(const HKHandle& h, const Vec& t) {
  h.cell(t);
  const Vec hv = h.so.h_of(t);
  return 0.5 * h.so.model.killing_form(hv, hv);
}

// ---------------------------------------------------------------------------
// Moment maps and induced fields.

/// Ad(g^{-1}) X for g = exp(X_p) exp(C) at a chart point.
inline Vec ad_g_inverse(const HKHandle& h, const ChartPoint& p, const Vec& x) {
  const auto& m = h.so.model;
  return expm(Mat(-m.ad(h.so.k_embed(p.c)))) * (expm(Mat(-m.ad(h.so.p_embed(p.x)))) * x);
}

/// Trivialized coordinates of the induced field of X in g at a chart point.
inline CVec induced_field(const HKHandle& h, const ChartPoint& p, const Vec& x) {
  const auto& m = h.so.model;
  const CMat ad_h = m.ad(CVec(h.so.h_of(p.t).cast<cplx>()));
  const CVec y = ad_g_inverse(h, p, x).cast<cplx>();
  return h.so.project(CVec(expm(CMat(-imag_unit * ad_h)) * y));
}

inline double mu_J(const HKHandle& h, const ChartPoint& p, const Vec& x) {
  h.cell(p.t);
  Vec y = Vec::Zero(h.np());
  y.head(h.so.rank) = p.t;
  const Vec psi_h = h.so.p_embed(psi(h.so, y));
  return h.so.model.killing_form(ad_g_inverse(h, p, x), psi_h);
}

inline double mu_can(const HKHandle& h, const ChartPoint& p, const Vec& x) {
  h.cell(p.t);
  return h.so.model.killing_form(ad_g_inverse(h, p, x), h.so.h_of(p.t));
}

/// mu^X = 1/2 sum_j f~(lambda_j(H)) B(Ad(g^{-1}) X, [I0 A_j, H]).
inline double mu_general(const HKHandle& h, const ChartPoint& p, const Vec& x,
                         const std::function<double(double)>& f_prime) {
  const CellPoint c = h.cell(p.t);
  if (!c.regular) throw singularity_error("moment map formula needs a regular point");
  const auto& m = h.so.model;
  const Vec y = ad_g_inverse(h, p, x);
  const Vec hv = h.so.h_of(p.t);
  double s = 0;
  for (int j = 0; j < h.so.rank; ++j) {
    const Vec i0a = h.so.ad_Z0 * h.so.A.col(j);
    s += f_tilde(f_prime, 2.0 * p.t(j)) * m.killing_form(y, m.bracket(i0a, hv));
  }
  return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Projection to G/K.

/// Embedding of the base point gK, i.e. g sigma(g).
inline CMat project_base(const HKHandle& h, const ChartPoint& p) {
  return h.so.model.symmetric_embedding(chart_g(h.so, p));
}

/// p_* of a trivialized vector: the p-element Re(F_a^{-1} Z), block coordinates.
inline Vec p_star(const HKHandle& h, const Vec& t, const CVec& z) { return to_induced(h, t, z).real(); }

/// Element of p^C (block coordinates) represented by a tangent matrix dQ at gK:
/// V = 1/2 g^{-1} dQ sigma(g)^{-1}.
inline CVec base_tangent_coords(const HKHandle& h, const CMat& g, const CMat& dq) {
  const auto& m = h.so.model;
  const CMat v = 0.5 * g.inverse() * dq * m.group_sigma(g).inverse();
  return h.so.project(m.coords(v));
}

// ---------------------------------------------------------------------------
// Chart fields.

/// Form on the coordinate fields at chart coordinates x.
inline Mat chart_form(const HKHandle& h, FormKind kind, const Vec& x) {
  const ChartPoint p = chart_split(h.so, x);
  const Mat fr = real_frame(h.so, p);
  return fr.transpose() * form_matrix(h, kind, p.t) * fr;
}

enum class StructureKind { I, J, K };

inline Mat structure_real(const HKHandle& h, StructureKind kind, const Vec& t) {
  switch (kind) {
    case StructureKind::I: return I_real(h, t);
    case StructureKind::J: return J_real(h);
    case StructureKind::K: return K_real(h, t);
  }
  return {};
}

/// Complex structure in the coordinate frame at chart coordinates x.
inline Mat chart_structure(const HKHandle& h, StructureKind kind, const Vec& x) {
  const ChartPoint p = chart_split(h.so, x);
  return coordinate_matrix(real_frame(h.so, p), structure_real(h, kind, p.t), h.config.max_condition);
}

} // namespace crownkit
