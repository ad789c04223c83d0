#pragma once

// Local chart (X, C, H) -> exp(X) exp(C) exp(iH) K^C of the crown domain,
// with X in p, C in k_perp (the sum of the k[alpha]) and H in the cell.
// Chart coordinates are one real vector [x (dim p), c (dim p - r), t (r)].
// Tangent vectors are block coordinates of p^C in the (ga)_* trivialization.

#include "crownkit/crown_ops.hpp"
#include "crownkit/errors.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/so_system.hpp"

#include <cmath>
#include <functional>
#include <type_traits>

namespace crownkit {

struct ChartPoint {
  Vec x;
  Vec c;
  Vec t;
};

inline int chart_dim(const SOSystem& so) { return 2 * so.dim_p; }

inline Vec chart_join(const ChartPoint& p) {
  Vec out(p.x.size() + p.c.size() + p.t.size());
  out << p.x, p.c, p.t;
  return out;
}

inline ChartPoint chart_split(const SOSystem& so, const Vec& coords) {
  if (coords.size() != chart_dim(so)) throw domain_error("chart coordinates have wrong length");
  ChartPoint p;
  p.x = coords.head(so.dim_p);
  p.c = coords.segment(so.dim_p, so.dim_k_perp());
  p.t = coords.tail(so.rank);
  return p;
}

inline ChartPoint slice_point(const SOSystem& so, const Vec& t) {
  return {Vec::Zero(so.dim_p), Vec::Zero(so.dim_k_perp()), t};
}

/// B-norms of the X and C legs.
inline double p_norm(const SOSystem& so, const Vec& x) { return std::sqrt(std::max(0.0, so.B(x, x))); }
inline double k_norm(const SOSystem& so, const Vec& c) {
  const Vec kc = so.k_embed(c);
  return std::sqrt(std::max(0.0, -so.model.killing_form(kc, kc)));
}

/// Rejects points outside the chart radius or the cell.
inline CellPoint chart_validate(const SOSystem& so, const ChartPoint& p, double radius, const CellMargins& mg = {}) {
  if (p_norm(so, p.x) > radius || k_norm(so, p.c) > radius) throw domain_error("point outside the chart radius");
  return cell_contains(so, p.t, mg);
}

/// Group elements g = exp(X) exp(C) and a = exp(iH) as matrices.
inline CMat chart_g(const SOSystem& so, const ChartPoint& p) {
  const auto& m = so.model;
  return m.exp(CVec(so.p_embed(p.x).cast<cplx>())) * m.exp(CVec(so.k_embed(p.c).cast<cplx>()));
}
inline CMat chart_a(const SOSystem& so, const Vec& t) {
  return so.model.exp(CVec(imag_unit * so.h_of(t).cast<cplx>()));
}

/// Image of the point under g K^C -> g sigma(g).
inline CMat chart_embedding(const SOSystem& so, const ChartPoint& p) {
  return so.model.symmetric_embedding(chart_g(so, p) * chart_a(so, p.t));
}

/// Complex dim p x 2 dim p matrix whose columns are the coordinate fields.
inline CMat chart_frame_matrix(const SOSystem& so, const ChartPoint& p) {
  const auto& m = so.model;
  const int np = so.dim_p, nk = so.dim_k_perp(), r = so.rank;
  const Mat ad_x = m.ad(so.p_embed(p.x));
  const Mat ad_c = m.ad(so.k_embed(p.c));
  const CMat ad_h = m.ad(CVec(so.h_of(p.t).cast<cplx>()));
  const CMat ad_a_inv = expm(CMat(-imag_unit * ad_h));
  const CMat proj = so.pi_sharp.cast<cplx>() * ad_a_inv;
  const Mat ad_c_inv = expm(Mat(-ad_c));
  CMat out(np, 2 * np);
  out.leftCols(np) = proj * (ad_c_inv * dexp_series(ad_x) * so.p_frame).cast<cplx>();
  out.middleCols(np, nk) = proj * (dexp_series(ad_c) * so.k_frame).cast<cplx>();
  out.rightCols(r).setZero();
  for (int j = 0; j < r; ++j) out(j, np + nk + j) = imag_unit;
  return out;
}

/// Push-forward of a coordinate direction.
inline CVec chart_frame(const SOSystem& so, const ChartPoint& p, const Vec& direction) {
  return chart_frame_matrix(so, p) * direction.cast<cplx>();
}

/// Real 2 dim p x 2 dim p frame acting on [Re; Im].
inline Mat real_frame(const SOSystem& so, const ChartPoint& p) {
  const CMat f = chart_frame_matrix(so, p);
  Mat out(2 * f.rows(), f.cols());
  out << f.real(), f.imag();
  return out;
}

struct FrameSolve {
  Eigen::PartialPivLU<Mat> lu;
  double condition = 0;
};

inline FrameSolve frame_factor(const Mat& frame, double max_condition = 1e8) {
  FrameSolve fs;
  fs.condition = condition_number(frame);
  if (!(fs.condition < max_condition)) throw frame_error("chart frame is singular or ill-conditioned");
  fs.lu.compute(frame);
  return fs;
}

/// Coordinates of a tangent vector in the coordinate frame.
inline Vec frame_invert(const SOSystem& so, const ChartPoint& p, const CVec& z, double max_condition = 1e8) {
  return frame_factor(real_frame(so, p), max_condition).lu.solve(to_real(z));
}

/// Matrix of a real-linear map on the tangent space (given on [Re; Im]) in
/// the coordinate frame.
inline Mat coordinate_matrix(const Mat& frame, const Mat& op, double max_condition = 1e8) {
  return frame_factor(frame, max_condition).lu.solve(op * frame);
}

/// Derivative of Q(ga) along a trivialized tangent vector.
inline CMat embedding_differential(const SOSystem& so, const CMat& ga, const CVec& z) {
  const auto& m = so.model;
  return ga * (2.0 * m.matrix(so.p_embed(z))) * m.group_sigma(ga);
}

// ---------------------------------------------------------------------------
// Finite differences on chart coordinates.

template <class F>
auto central_diff(const F& f, const Vec& x, int i, double h) {
  using R = std::decay_t<decltype(f(x))>;
  Vec xp = x, xm = x;
  xp(i) += h;
  xm(i) -= h;
  R out = (f(xp) - f(xm)) / (2.0 * h);
  return out;
}

/// Central difference with one Richardson step (steps h and h/2).
template <class F>
auto richardson_diff(const F& f, const Vec& x, int i, double h) {
  using R = std::decay_t<decltype(f(x))>;
  const R d1 = central_diff(f, x, i, h);
  const R d2 = central_diff(f, x, i, 0.5 * h);
  R out = (4.0 * d2 - d1) / 3.0;
  return out;
}

/// Directional derivative along an arbitrary coordinate vector.
template <class F>
auto directional_diff(const F& f, const Vec& x, const Vec& v, double h, bool richardson = true) {
  using R = std::decay_t<decltype(f(x))>;
  auto g = [&](double s) -> R { return f(Vec(x + s * v)); };
  const R d1 = (g(h) - g(-h)) / (2.0 * h);
  if (!richardson) return d1;
  const R d2 = (g(0.5 * h) - g(-0.5 * h)) / h;
  R out = (4.0 * d2 - d1) / 3.0;
  return out;
}

/// Matrix of a 2-form on the coordinate fields at x.
using TwoFormField = std::function<Mat(const Vec&)>;
using ScalarField = std::function<double(const Vec&)>;
/// Real-linear endomorphism field in the coordinate frame.
using StructureField = std::function<Mat(const Vec&)>;

/// d omega(d_i, d_j, d_k) = d_i w_jk - d_j w_ik + d_k w_ij.
inline double fd_d_twoform(const TwoFormField& form, const Vec& x, int i, int j, int k, double h = 1e-4,
                           bool richardson = false) {
  auto der = [&](int dir, int a, int b) {
    auto comp = [&](const Vec& y) { return form(y)(a, b); };
    return richardson ? richardson_diff(comp, x, dir, h) : central_diff(comp, x, dir, h);
  };
  return der(i, j, k) - der(j, i, k) + der(k, i, j);
}

/// Gradient with Richardson-extrapolated central differences.
inline Vec fd_gradient(const ScalarField& f, const Vec& x, double h = 1e-4) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = richardson_diff(f, x, static_cast<int>(i), h);
  return g;
}

/// d^c rho = d rho o N on the coordinate fields.
inline Vec fd_dc(const ScalarField& rho, const StructureField& n, const Vec& x, double h_inner = 1e-4) {
  return n(x).transpose() * fd_gradient(rho, x, h_inner);
}

/// -d d^c rho (d_i, d_j).
inline double fd_ddc(const ScalarField& rho, const StructureField& n, const Vec& x, int i, int j, double h_outer = 5e-4,
                     double h_inner = 1e-4) {
  auto dc = [&](const Vec& y) { return fd_dc(rho, n, y, h_inner); };
  const Vec di = central_diff(dc, x, i, h_outer);
  const Vec dj = central_diff(dc, x, j, h_outer);
  return -(di(j) - dj(i));
}

/// Full matrix of -d d^c rho on the coordinate fields.
inline Mat fd_ddc_matrix(const ScalarField& rho, const StructureField& n, const Vec& x, double h_outer = 5e-4,
                         double h_inner = 1e-4) {
  auto dc = [&](const Vec& y) { return fd_dc(rho, n, y, h_inner); };
  const Eigen::Index dim = x.size();
  Mat d(dim, dim);  // d(:, i) = derivative of d^c rho along i
  for (Eigen::Index i = 0; i < dim; ++i) d.col(i) = central_diff(dc, x, static_cast<int>(i), h_outer);
  return -(d.transpose() - d);
}

/// Nijenhuis tensor of an endomorphism field on coordinate fields:
/// N(d_i, d_j)^l = M_mi d_m M_lj - M_mj d_m M_li + M_lk (d_j M_ki - d_i M_kj).
/// Returns max |N^l_ij| over all i, j, l.
inline double fd_nijenhuis(const StructureField& field, const Vec& x, double h = 1e-4, bool richardson = true) {
  const Eigen::Index n = x.size();
  const Mat m = field(x);
  std::vector<Mat> dm(static_cast<std::size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a)
    dm[static_cast<std::size_t>(a)] = richardson ? Mat(richardson_diff(field, x, static_cast<int>(a), h))
                                                 : Mat(central_diff(field, x, static_cast<int>(a), h));
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Vec v = Vec::Zero(n);
      for (Eigen::Index mm = 0; mm < n; ++mm) {
        v += m(mm, i) * dm[static_cast<std::size_t>(mm)].col(j);
        v -= m(mm, j) * dm[static_cast<std::size_t>(mm)].col(i);
      }
      v += m * (dm[static_cast<std::size_t>(j)].col(i) - dm[static_cast<std::size_t>(i)].col(j));
      worst = std::max(worst, v.cwiseAbs().maxCoeff());
    }
  return worst;
}

/// Gauss-Newton solve for chart coordinates of a point given by its
/// embedding matrix; `guess` seeds the iteration.  Returns the coordinates
/// and writes the final embedding residual.
inline Vec chart_locate(const SOSystem& so, const CMat& target, const Vec& guess, double* residual = nullptr,
                        int max_iter = 60) {
  Vec x = guess;
  const int n = chart_dim(so);
  auto flat = [](const CMat& q) {
    Vec out(2 * q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      out(i) = q.data()[i].real();
      out(q.size() + i) = q.data()[i].imag();
    }
    return out;
  };
  double res = 0;
  for (int it = 0; it < max_iter; ++it) {
    const ChartPoint p = chart_split(so, x);
    const CMat ga = chart_g(so, p) * chart_a(so, p.t);
    const CMat q = so.model.symmetric_embedding(ga);
    const Vec rvec = flat(CMat(q - target));
    res = rvec.cwiseAbs().maxCoeff();
    const CMat frame = chart_frame_matrix(so, p);
    Mat jac(rvec.size(), n);
    for (int i = 0; i < n; ++i) jac.col(i) = flat(embedding_differential(so, ga, CVec(frame.col(i))));
    const Vec step = jac.colPivHouseholderQr().solve(-rvec);
    x += step;
    if (step.norm() < 1e-15 * std::max(1.0, x.norm())) break;
  }
  {
    const ChartPoint p = chart_split(so, x);
    res = flat(CMat(chart_embedding(so, p) - target)).cwiseAbs().maxCoeff();
  }
  if (residual != nullptr) *residual = res;
  return x;
}

} // namespace crownkit
