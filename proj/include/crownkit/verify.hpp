#pragma once

// Verification suites.  Each suite samples points deterministically from a
// seed, evaluates residuals of one family of identities and reports the
// maximum residual per check against a tolerance.

#include "crownkit/chart.hpp"
#include "crownkit/crown_ops.hpp"
#include "crownkit/errors.hpp"
#include "crownkit/hk_structure.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/so_system.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace crownkit {

struct Check {
  std::string name;
  std::string identity;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  int samples = 0;
};

struct PointRecord {
  int index = 0;
  std::uint64_t seed = 0;
  Vec coords;
};

struct VerificationReport {
  std::string suite;
  std::string space;
  std::uint64_t seed = 0;
  int n_points = 0;
  double h_fd = 1e-4;
  std::vector<Check> checks;
  std::vector<PointRecord> points;
  double runtime_ms = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int n_points = 20;
  double h_fd = 1e-4;
  /// Overrides keyed by "suite" or "suite.check".
  std::map<std::string, double> tolerances;
};

inline std::vector<std::string> suite_names() {
  return {"structure",    "operators",     "closedness",          "potential_J", "potential_I",
          "potential_can", "moment_maps", "quaternionic_metric", "integrability", "sl2_chart",
          "f_I_ode"};
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t point_seed(std::uint64_t seed, const std::string& suite, const std::string& space, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(suite)), static_cast<std::uint32_t>(fnv1a(space)),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Accumulates the maximum residual of one check.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, std::string identity, double tol)
      : check_{std::move(name), std::move(identity), 0.0, tol, false, 0} {}

  void add(double residual) {
    ++check_.samples;
    if (std::isnan(residual) || std::isnan(check_.max_residual)) {
      check_.max_residual = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    if (check_.samples == 1 || residual > check_.max_residual) check_.max_residual = residual;
  }
  Check finish() const {
    Check c = check_;
    c.pass = c.samples > 0 && !std::isnan(c.max_residual) && c.max_residual < c.tolerance;
    return c;
  }

 private:
  Check check_;
};

class SuiteRun {
 public:
  SuiteRun(std::string suite, const HKHandle& h, const SuiteOptions& opt) : h_(h), opt_(opt) {
    report_.suite = std::move(suite);
    report_.space = h.so.model.name;
    report_.seed = opt.seed;
    report_.n_points = opt.n_points;
    report_.h_fd = opt.h_fd;
  }

  CheckBuilder& check(const std::string& name, const std::string& identity, double tol) {
    for (auto& [n, b] : builders_)
      if (n == name) return b;
    builders_.emplace_back(name, CheckBuilder(name, identity, tolerance(name, tol)));
    return builders_.back().second;
  }

  double tolerance(const std::string& name, double fallback) const {
    auto it = opt_.tolerances.find(report_.suite + "." + name);
    if (it != opt_.tolerances.end()) return it->second;
    it = opt_.tolerances.find(report_.suite);
    if (it != opt_.tolerances.end()) return it->second;
    return fallback;
  }

  /// Deterministic generator for point `index`, recorded in the report.
  std::mt19937_64 rng_for(int index) {
    const std::uint64_t s = point_seed(opt_.seed, report_.suite, report_.space, index);
    last_seed_ = s;
    return std::mt19937_64(s);
  }

  void record(int index, const Vec& coords) { report_.points.push_back({index, last_seed_, coords}); }

  VerificationReport finish() {
    for (auto& [n, b] : builders_) report_.checks.push_back(b.finish());
    return report_;
  }

  const HKHandle& h() const { return h_; }
  const SuiteOptions& options() const { return opt_; }

 private:
  const HKHandle& h_;
  const SuiteOptions& opt_;
  VerificationReport report_;
  std::deque<std::pair<std::string, CheckBuilder>> builders_;  // stable references
  std::uint64_t last_seed_ = 0;
};

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline Vec gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

inline CVec complex_gaussian(std::mt19937_64& rng, Eigen::Index n) {
  const Vec re = gaussian(rng, n);
  const Vec im = gaussian(rng, n);
  return re.cast<cplx>() + imag_unit * im.cast<cplx>();
}

} // namespace detail

using detail::max_abs;

/// Cell coordinates uniform in the box |t_j| < 0.9 pi/4, rejecting points
/// with some |alpha(H)| < min_root.
inline Vec sample_cell(const SOSystem& so, std::mt19937_64& rng, double min_root = 0.1) {
  std::uniform_real_distribution<double> ud(-0.9 * pi / 4, 0.9 * pi / 4);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec t(so.rank);
    for (int j = 0; j < so.rank; ++j) t(j) = ud(rng);
    bool ok = true;
    for (const auto& root : so.roots.positive)
      if (std::abs(root.e.cast<double>().dot(t)) < min_root) ok = false;
    if (ok) return t;
  }
  throw sampling_error("no regular cell point found");
}

/// Chart point with Gaussian X, C clipped to 0.9 of the chart radius.
inline ChartPoint sample_chart_point(const HKHandle& h, std::mt19937_64& rng, double min_root = 0.1) {
  const SOSystem& so = h.so;
  const double limit = 0.9 * h.config.r_chart;
  const double sigma = 0.5 * h.config.r_chart / std::sqrt(so.C * so.dim_p);
  ChartPoint p;
  p.t = sample_cell(so, rng, min_root);
  p.x = sigma * detail::gaussian(rng, so.dim_p);
  p.c = sigma * detail::gaussian(rng, so.dim_k_perp());
  const double nx = p_norm(so, p.x), nc = k_norm(so, p.c);
  if (nx > limit) p.x *= limit / nx;
  if (nc > limit) p.c *= limit / nc;
  chart_validate(so, p, h.config.r_chart, h.config.margins());
  return p;
}

/// Random element of g with unit B_theta-norm.
inline Vec sample_algebra(const SOSystem& so, std::mt19937_64& rng) {
  Vec x = detail::gaussian(rng, so.model.dim);
  const double n = std::sqrt(x.dot(so.model.theta_inner() * x));
  return x / n;
}

// ---------------------------------------------------------------------------
// Helpers shared by suites.

namespace detail {

/// d omega on all coordinate triples at x: max |d omega(d_i, d_j, d_k)|.
inline double d_twoform_max(const TwoFormField& form, const Vec& x, double h) {
  const Eigen::Index n = x.size();
  std::vector<Mat> deriv(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) deriv[static_cast<std::size_t>(i)] = central_diff(form, x, static_cast<int>(i), h);
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j + 1; k < n; ++k) {
        const double v = deriv[static_cast<std::size_t>(i)](j, k) - deriv[static_cast<std::size_t>(j)](i, k) +
                         deriv[static_cast<std::size_t>(k)](i, j);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

inline TwoFormField form_field(const HKHandle& h, FormKind kind) {
  return [&h, kind](const Vec& y) { return chart_form(h, kind, y); };
}

inline StructureField structure_field(const HKHandle& h, StructureKind kind) {
  return [&h, kind](const Vec& y) { return chart_structure(h, kind, y); };
}

inline ScalarField potential_field(const HKHandle& h, const std::function<double(const HKHandle&, const Vec&)>& rho) {
  return [&h, rho](const Vec& y) { return rho(h, Vec(y.tail(h.so.rank))); };
}

/// rho_f = -1/4 sum_j f(lambda_j(H)) C.
inline double rho_of(const HKHandle& h, const Vec& t, const std::function<double(double)>& f) {
  double s = 0;
  for (Eigen::Index j = 0; j < t.size(); ++j) s += f(2.0 * t(j));
  return -0.25 * h.so.C * s;
}

/// Chart coordinates after acting with the matrix `g_left` on the point x.
inline Vec act_on_chart(const HKHandle& h, const CMat& g_left, const Vec& x, const Vec& guess, double* residual) {
  const ChartPoint p = chart_split(h.so, x);
  const CMat target = h.so.model.symmetric_embedding(g_left * chart_g(h.so, p) * chart_a(h.so, p.t));
  return chart_locate(h.so, target, guess, residual);
}

/// p-element of g^{-1} dQ sigma(g)^{-1} / 2 for the derivative of the base
/// point along chart direction v.
inline CVec base_velocity(const HKHandle& h, const Vec& x, const Vec& v, double step) {
  auto q = [&](const Vec& y) -> CMat { return project_base(h, chart_split(h.so, y)); };
  const CMat dq = directional_diff(q, x, v, step, true);
  return base_tangent_coords(h, chart_g(h.so, chart_split(h.so, x)), dq);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Suites.

inline VerificationReport suite_structure(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("structure", h, opt);
  const SOSystem& so = h.so;
  const auto mc = check_model(so.model);
  run.check("theta_involution", "theta^2 = Id", 1e-12).add(mc.theta_involution);
  run.check("killing_trace", "B(X,Y) = tr(ad X ad Y)", 1e-10).add(mc.killing_trace);
  run.check("theta_isometry", "B(theta X, theta Y) = B(X,Y)", 1e-10).add(mc.theta_isometry);
  run.check("killing_negative_on_k", "max eigenvalue of B on k < 0", 0.0).add(mc.k_max_eigenvalue);
  run.check("killing_positive_on_p", "-(min eigenvalue of B on p) < 0", 0.0).add(-mc.p_min_eigenvalue);

  const auto rc = check_roots(so.model, so.roots);
  run.check("root_vectors", "[H, X] = alpha(H) X on every root space", 1e-10).add(rc.eigen_residual);
  run.check("block_orthogonality", "distinct blocks of k and p are B-orthogonal", 1e-10).add(rc.block_orthogonality);
  run.check("dimension_count", "dim a + dim m + sum dim g^alpha = dim g", 0.5)
      .add(std::abs(rc.dimension_total - so.model.dim));
  run.check("blocks_balanced", "dim k[alpha] = dim p[alpha]", 0.5).add(rc.blocks_balanced ? 0.0 : 1.0);

  const auto sc = check_so_system(so);
  run.check("triple_bracket", "[A_j, E^j] = 2 E^j", 1e-12).add(sc.triple_bracket);
  run.check("strong_orthogonality", "[E^k, E^l] = [E^k, theta E^l] = 0, lambda_l(A_k) = 2 delta_kl", 1e-12)
      .add(sc.strong_orthogonality);
  run.check("I0_on_triples", "I0 P^j = A_j, I0 A_j = -P^j", 1e-10).add(sc.i0_on_triples);
  run.check("I0_blocks", "I0 p[e_k+e_l] = p[e_k-e_l], I0 p[e_j] = p[e_j]", 1e-10).add(sc.i0_blocks);
  run.check("Z0_decomposition", "Z0 = S + 1/2 sum K^j with S in m", 1e-10).add(sc.z0_decomposition);
  run.check("I0_square", "I0^2 = -Id on p", 1e-10).add(sc.i0_square);
  run.check("Z0_central", "[Z0, k] = 0", 1e-10).add(sc.z0_central);
  run.check("C_constant", "B(A_j, A_j) = C for all j", 1e-10).add(sc.c_spread);
  run.check("frame_gram", "block frame is B-orthogonal with B(v, v) = C", 1e-10).add(sc.frame_gram);

  auto& dec = run.check("p_decomposition", "X = X_a + sum P^alpha and [H, P^alpha] = alpha(H) K^alpha", 1e-10);
  auto& trig = run.check("psi_root_identity", "alpha(Psi(H)) = sin alpha(H) cos beta(H) for I0 p[alpha] = p[beta]",
                         1e-12);
  const int n_trig = std::max(100, opt.n_points);
  for (int k = 0; k < n_trig; ++k) {
    auto rng = run.rng_for(k);
    const Vec t = sample_cell(so, rng, 0.0);
    const Vec tp = psi_on_a(so, t);
    const Vec v = so.column_values(t);
    const Vec vp = so.column_values(tp);
    for (int i = 0; i < so.dim_p; ++i) {
      const double beta = v(so.column_partner[static_cast<std::size_t>(i)]);
      if (i >= so.rank) trig.add(std::abs(vp(i) - std::sin(v(i)) * std::cos(beta)));
    }
    if (k < opt.n_points) {
      const Vec x = so.p_embed(detail::gaussian(rng, so.dim_p));
      const PDecomposition d = decompose_p_vector(so, x);
      Vec sum = d.x_a;
      for (const auto& part : d.p_parts) sum += part;
      dec.add(max_abs(Vec(sum - x)));
      const Vec hv = so.h_of(t);
      for (std::size_t a = 0; a < so.roots.positive.size(); ++a) {
        const double alpha = so.roots.positive[a].e.cast<double>().dot(t);
        dec.add(max_abs(Vec(so.model.bracket(hv, d.p_parts[a]) - alpha * d.k_parts[a])));
      }
      run.record(k, t);
    }
  }
  return run.finish();
}

inline VerificationReport suite_operators(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("operators", h, opt);
  const SOSystem& so = h.so;
  const auto& m = so.model;
  const int np = so.dim_p;
  const Mat id = Mat::Identity(np, np);
  auto& fdef = run.check("F_a_definition", "F_a = pi_# Ad(exp(-iH)) on p^C", 1e-10);
  auto& edef = run.check("E_a_series", "E_a = pi_# sum (-1)^n/(n+1)! ad_{iH}^n on p^C", 1e-10);
  auto& comm = run.check("operators_commute", "F_a, E_a, Psi_* commute", 1e-12);
  auto& lsq = run.check("L_a_square", "L_a^2 = -Id", 1e-10);
  auto& lroute = run.check("L_a_routes", "F_a I0 F_a^{-1} = I0 F_a^{-1} Psi_* E_a^{-1}", 1e-10);
  auto& psa = run.check("psi_star_self_adjoint", "B(Psi_* X, Y) = B(X, Psi_* Y)", 1e-12);
  auto& pfd = run.check("psi_star_fd", "Psi_* = differential of Psi (central differences)", 1e-6);
  auto& pclosed = run.check("psi_on_a", "Psi(sum t_j A_j) = 1/2 sum sin(2 t_j) A_j", 1e-12);
  auto& pequi = run.check("psi_equivariance", "Psi(Ad_k Y) = Ad_k Psi(Y)", 1e-10);
  auto& kernel = run.check("psi_star_kernel", "Psi_* E_a^{-1} = -I0 F_a I0", 1e-10);
  auto& orbit = run.check("orbit_derivative",
                          "d/ds Ad(exp i(H+sP)) Z0 = d/ds Ad(exp(-sK/alpha(H)) exp iH) Z0", 1e-7);
  auto& sl_alg = run.check("slice_decomposition", "F_a(iY) = frame(C, Y_a) with C = -sum cot alpha(H) K^alpha", 1e-8);
  auto& sl_fd = run.check("slice_decomposition_fd",
                          "d/ds exp(isY) a = d/ds exp(sC) exp(i(H + sY_a)) through the embedding", 1e-8);
  auto& sl_q = run.check("slice_Q_field", "iQ~ = -cot alpha(H) K~", 1e-10);
  auto& sl_k = run.check("slice_K_field", "K~ = -sin alpha(H) a_* iQ", 1e-10);
  auto& cont = run.check("psi_star_near_singular", "limit eigenvalues of Psi_* agree with the differential", 1e-6);
  auto& cond = run.check("slice_frame_condition", "condition number of the chart frame at (0, 0, H) < 1e6", 1e6);

  const Mat gp = so.gram_p;
  for (int k = 0; k < opt.n_points; ++k) {
    auto rng = run.rng_for(k);
    const Vec t = sample_cell(so, rng, 0.1);
    const CellPoint c = h.cell(t);
    run.record(k, t);
    const Mat f = f_a(so, c).matrix, e = e_a(so, c).matrix, ps = psi_star(so, c).matrix;
    fdef.add(max_abs(CMat(f_a_definition(so, c) - f.cast<cplx>())));
    edef.add(max_abs(CMat(e_a_series(so, c) - e.cast<cplx>())));
    comm.add(std::max({max_abs(Mat(f * e - e * f)), max_abs(Mat(f * ps - ps * f)), max_abs(Mat(e * ps - ps * e))}));
    const FrameOperator l = l_a(so, c);
    lsq.add(max_abs(Mat(l.realified() * l.realified() + Mat::Identity(2 * np, 2 * np))));
    lroute.add(max_abs(Mat(l.matrix - l_a_via_psi(so, c).matrix)));
    psa.add(max_abs(Mat(ps.transpose() * gp - gp * ps)));
    pfd.add(max_abs(Mat(psi_star_fd(so, c) - ps)));
    {
      double imag = 0;
      Vec y = Vec::Zero(np);
      y.head(so.rank) = t;
      const Vec out = psi(so, y, &imag);
      Vec expect = Vec::Zero(np);
      for (int j = 0; j < so.rank; ++j) expect(j) = 0.5 * std::sin(2.0 * t(j));
      pclosed.add(std::max(max_abs(Vec(out - expect)), imag));
    }
    {
      // k = exp(K) for a random K in k.
      Vec kv = Vec::Zero(m.dim);
      kv.head(m.dim_k) = detail::gaussian(rng, m.dim_k);
      const Mat adk = expm(Mat(m.ad(kv)));
      const Vec y = detail::gaussian(rng, np) * 0.3;
      const Vec lhs = psi(so, Vec(so.project(Vec(adk * so.p_embed(y)))));
      const Vec rhs = so.project(Vec(adk * so.p_embed(psi(so, y))));
      pequi.add(max_abs(Vec(lhs - rhs)));
    }
    kernel.add(max_abs(Mat(ps * e.inverse() + so.I0 * f * so.I0)));

    // Orbit derivatives along each root column.
    const Vec v = so.column_values(t);
    const CVec z0 = so.Z0.cast<cplx>();
    const Vec hv = so.h_of(t);
    for (int i = so.rank; i < np; ++i) {
      const Vec pcol = so.p_frame.col(i);
      const Vec kcol = so.k_frame.col(i - so.rank);
      const double step = opt.h_fd;
      auto lhs_curve = [&](double s) -> CVec {
        return expm(CMat(imag_unit * m.ad(CVec((hv + s * pcol).cast<cplx>())))) * z0;
      };
      auto rhs_curve = [&](double s) -> CVec {
        return expm(Mat(-s / v(i) * m.ad(kcol))).cast<cplx>() *
               (expm(CMat(imag_unit * m.ad(CVec(hv.cast<cplx>())))) * z0);
      };
      auto rich = [step](const std::function<CVec(double)>& f) -> CVec {
        const CVec d1 = (f(step) - f(-step)) / (2.0 * step);
        const CVec d2 = (f(0.5 * step) - f(-0.5 * step)) / step;
        return (4.0 * d2 - d1) / 3.0;
      };
      const CVec dl = rich(lhs_curve);
      const CVec dr = rich(rhs_curve);
      orbit.add(max_abs(CVec(dl - dr)));
    }

    // Slice decomposition of iY.
    const ChartPoint sp = slice_point(so, t);
    const CMat frame = chart_frame_matrix(so, sp);
    const Vec y = detail::gaussian(rng, np);
    const Vec cvec = slice_k_component(so, c, y, h.config.eps_reg);
    Vec dir = Vec::Zero(2 * np);
    dir.segment(np, so.dim_k_perp()) = cvec;
    dir.tail(so.rank) = y.head(so.rank);
    const CVec lhs = f.cast<cplx>() * (imag_unit * y.cast<cplx>());
    sl_alg.add(max_abs(CVec(frame * dir.cast<cplx>() - lhs)));
    {
      const CMat a = chart_a(so, t);
      const CMat ymat = m.matrix(so.p_embed(y));
      const CMat cmat = m.matrix(so.k_embed(cvec));
      const Vec ya = so.A * y.head(so.rank);
      auto q1 = [&](double s) -> CMat { return m.symmetric_embedding(CMat(expm(CMat(imag_unit * s * ymat)) * a)); };
      auto q2 = [&](double s) -> CMat {
        const CMat a2 = m.exp(CVec(imag_unit * (hv + s * ya).cast<cplx>()));
        return m.symmetric_embedding(CMat(expm(CMat(s * cmat)) * a2));
      };
      auto rich = [&](const std::function<CMat(double)>& q) -> CMat {
        const double s = opt.h_fd;
        const CMat d1 = (q(s) - q(-s)) / (2.0 * s);
        const CMat d2 = (q(0.5 * s) - q(-0.5 * s)) / s;
        return (4.0 * d2 - d1) / 3.0;
      };
      sl_fd.add(max_abs(CMat(rich(q1) - rich(q2))));
    }
    for (int i = so.rank; i < np; ++i) {
      const CVec q = Vec::Unit(np, i).cast<cplx>();
      const CVec iq_field = f.cast<cplx>() * (imag_unit * q);
      const CVec k_field = so.project(CVec(expm(CMat(-imag_unit * m.ad(CVec(hv.cast<cplx>())))) *
                                           so.k_frame.col(i - so.rank).cast<cplx>()));
      sl_q.add(max_abs(CVec(iq_field + std::cos(v(i)) / std::sin(v(i)) * k_field)));
      sl_k.add(max_abs(CVec(k_field + std::sin(v(i)) * (imag_unit * q))));
    }
  }

  // Near-singular points: every root tiny.
  for (double scale : {3e-5, 5e-5}) {
    Vec t(so.rank);
    for (int j = 0; j < so.rank; ++j) t(j) = scale * (so.rank - j);
    const CellPoint c = h.cell(t);
    cont.add(max_abs(Mat(psi_star_fd(so, c) - psi_star(so, c).matrix)));
  }

  // Frame conditioning on a ray of regular points.
  for (int k = 1; k <= 10; ++k) {
    const double s = 0.9 * pi / 4 * k / 10.0;
    Vec t(so.rank);
    for (int j = 0; j < so.rank; ++j) t(j) = s * (so.rank - j) / so.rank;
    cond.add(condition_number(real_frame(so, slice_point(so, t))));
  }
  return run.finish();
}

inline VerificationReport suite_closedness(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("closedness", h, opt);
  auto& ci = run.check("d_omega_I", "d omega_I = 0", 1e-5);
  auto& cj = run.check("d_omega_J", "d omega_J = 0", 1e-5);
  auto& ck = run.check("d_omega_K", "d omega_K = 0", 1e-5);
  auto& inv_i = run.check("invariance_omega_I", "omega_I invariant under exp(iY), Y in p", 1e-7);
  auto& inv_k = run.check("invariance_omega_K", "omega_K invariant under exp(iY), Y in p", 1e-7);
  const auto fi = detail::form_field(h, FormKind::omega_I);
  const auto fj = detail::form_field(h, FormKind::omega_J);
  const auto fk = detail::form_field(h, FormKind::omega_K);
  const int n_invariance = std::min(opt.n_points, 4);
  for (int k = 0; k < opt.n_points; ++k) {
    auto rng = run.rng_for(k);
    const ChartPoint p = sample_chart_point(h, rng);
    const Vec x = chart_join(p);
    run.record(k, x);
    ci.add(detail::d_twoform_max(fi, x, opt.h_fd));
    cj.add(detail::d_twoform_max(fj, x, opt.h_fd));
    ck.add(detail::d_twoform_max(fk, x, opt.h_fd));
    if (k < n_invariance) {
      const Vec y = 0.05 * detail::gaussian(rng, h.so.dim_p) / std::sqrt(h.so.C);
      const CMat hc = h.so.model.exp(CVec(imag_unit * h.so.p_embed(y).cast<cplx>()));
      double res = 0;
      const Vec x1 = detail::act_on_chart(h, hc, x, x, &res);
      auto phi = [&](const Vec& z) -> Vec {
        double r2 = 0;
        Vec out = detail::act_on_chart(h, hc, z, x1, &r2);
        res = std::max(res, r2);
        return out;
      };
      const int n = chart_dim(h.so);
      Mat dphi(n, n);
      for (int i = 0; i < n; ++i) dphi.col(i) = richardson_diff(phi, x, i, opt.h_fd);
      const Mat wi0 = fi(x), wk0 = fk(x);
      const Mat wi1 = dphi.transpose() * fi(x1) * dphi, wk1 = dphi.transpose() * fk(x1) * dphi;
      inv_i.add(std::max(max_abs(Mat(wi1 - wi0)), res));
      inv_k.add(std::max(max_abs(Mat(wk1 - wk0)), res));
    }
  }
  return run.finish();
}

inline VerificationReport suite_potential(const HKHandle& h, const SuiteOptions& opt, const std::string& which) {
  detail::SuiteRun run("potential_" + which, h, opt);
  std::function<double(const HKHandle&, const Vec&)> rho;
  StructureKind sk = StructureKind::J;
  FormKind fk = FormKind::omega_J;
  std::string identity;
  if (which == "J") {
    rho = rho_J;
    identity = "-dd^c_J rho_J = omega_J";
  } else if (which == "I") {
    rho = rho_I;
    sk = StructureKind::I;
    fk = FormKind::omega_I_minus_0;
    identity = "-dd^c_I rho_I = omega_I - p^* omega_0";
  } else if (which == "can") {
    rho = rho_can;
    fk = FormKind::omega_can;
    identity = "-dd^c_J rho_can = omega_can";
  } else {
    throw configuration_error("unknown potential " + which);
  }
  auto& pot = run.check("ddc_residual", identity, 1e-5);
  detail::CheckBuilder* levi = nullptr;
  detail::CheckBuilder* hess = nullptr;
  if (which == "J") {
    levi = &run.check("levi_form_positive", "-(min eigenvalue of -dd^c_J rho_J(., J.)) < 0", 0.0);
    hess = &run.check("hessian_on_a_positive", "-(min eigenvalue of the Hessian of rho_J on the cell) < 0", 0.0);
  }
  const ScalarField rf = detail::potential_field(h, rho);
  const StructureField nf = detail::structure_field(h, sk);
  for (int k = 0; k < opt.n_points; ++k) {
    auto rng = run.rng_for(k);
    const ChartPoint p = sample_chart_point(h, rng);
    const Vec x = chart_join(p);
    run.record(k, x);
    const Mat ddc = fd_ddc_matrix(rf, nf, x, h.config.h_outer, opt.h_fd);
    pot.add(max_abs(Mat(ddc - chart_form(h, fk, x))));
    if (levi != nullptr) {
      const Mat g = ddc * nf(x);
      const Mat sym = 0.5 * (g + g.transpose());
      levi->add(-Eigen::SelfAdjointEigenSolver<Mat>(sym).eigenvalues().minCoeff());
      const int r = h.so.rank;
      auto on_a = [&](const Vec& t) { return rho_J(h, t); };
      Mat hs(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          auto di = [&](const Vec& t) { return richardson_diff(on_a, t, i, 1e-3); };
          hs(i, j) = central_diff(di, p.t, j, 1e-3);
        }
      hess->add(-Eigen::SelfAdjointEigenSolver<Mat>(Mat(0.5 * (hs + hs.transpose()))).eigenvalues().minCoeff());
    }
  }
  return run.finish();
}

inline VerificationReport suite_moment_maps(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("moment_maps", h, opt);
  const SOSystem& so = h.so;
  const auto& m = so.model;
  auto& ham_j = run.check("hamiltonian_J", "d mu_J^X = omega_J(X~, .)", 1e-5);
  auto& ham_can = run.check("hamiltonian_can", "d mu_can^X = omega_can(X~, .)", 1e-5);
  auto& ham_i = run.check("hamiltonian_I", "d mu_I^X = (omega_I - p^* omega_0)(X~, .)", 1e-5);
  auto& dc_j = run.check("mu_J_formula", "B(Ad(g^-1) X, Psi(H)) = d^c_J rho_J(X~)", 1e-6);
  auto& dc_can = run.check("mu_can_formula", "B(Ad(g^-1) X, H) = d^c_J rho_can(X~)", 1e-6);
  auto& dc_cos = run.check("mu_general_cos", "general moment formula for f = cos equals d^c_I rho_f(X~)", 1e-6);
  auto& dc_fi = run.check("mu_general_f_I", "general moment formula for f = f_I equals d^c_I rho_I(X~)", 1e-6);
  auto& eq_j = run.check("equivariance_J", "mu_J(g z)(X) = mu_J(z)(Ad(g^-1) X)", 1e-8);
  auto& eq_can = run.check("equivariance_can", "mu_can(g z)(X) = mu_can(z)(Ad(g^-1) X)", 1e-8);
  auto& k_slice = run.check("mu_J_k_on_slice", "mu_J^X = 0 for X in k at slice points", 1e-12);

  const std::function<double(double)> cos_f = [](double s) { return std::cos(s); };
  const std::function<double(double)> cos_fp = [](double s) { return -std::sin(s); };
  const std::function<double(double)> fi_f = [](double s) { return f_I(s); };
  const std::function<double(double)> fi_fp = [](double s) { return f_I_prime(s); };

  const StructureField nj = detail::structure_field(h, StructureKind::J);
  const StructureField ni = detail::structure_field(h, StructureKind::I);
  const int n = chart_dim(so);
  for (int k = 0; k < opt.n_points; ++k) {
    auto rng = run.rng_for(k);
    const ChartPoint p = sample_chart_point(h, rng);
    const Vec x = chart_join(p);
    run.record(k, x);
    const Vec xg = sample_algebra(so, rng);
    const CVec field = induced_field(h, p, xg);
    const Mat fr = real_frame(so, p);
    const Vec field_r = to_real(field);
    const Vec field_coords = frame_factor(fr, h.config.max_condition).lu.solve(field_r);

    auto hamiltonian = [&](const std::function<double(const ChartPoint&)>& mu, FormKind kind,
                           detail::CheckBuilder& out) {
      auto mu_x = [&](const Vec& y) { return mu(chart_split(so, y)); };
      const Vec grad = fd_gradient(mu_x, x, opt.h_fd);
      const Vec expect = chart_form(h, kind, x).transpose() * field_coords;
      out.add(max_abs(Vec(grad - expect)));
    };
    hamiltonian([&](const ChartPoint& q) { return mu_J(h, q, xg); }, FormKind::omega_J, ham_j);
    hamiltonian([&](const ChartPoint& q) { return mu_can(h, q, xg); }, FormKind::omega_can, ham_can);
    hamiltonian([&](const ChartPoint& q) { return mu_general(h, q, xg, fi_fp); }, FormKind::omega_I_minus_0, ham_i);

    auto dc_value = [&](const std::function<double(const Vec&)>& rho_t, const StructureField& nf) {
      const ScalarField rf = [&](const Vec& y) { return rho_t(Vec(y.tail(so.rank))); };
      const Vec grad = fd_gradient(rf, x, opt.h_fd);
      return grad.dot(nf(x) * field_coords);
    };
    dc_j.add(std::abs(mu_J(h, p, xg) - dc_value([&](const Vec& t) { return rho_J(h, t); }, nj)));
    dc_can.add(std::abs(mu_can(h, p, xg) - dc_value([&](const Vec& t) { return rho_can(h, t); }, nj)));
    dc_cos.add(std::abs(mu_general(h, p, xg, cos_fp) -
                        dc_value([&](const Vec& t) { return detail::rho_of(h, t, cos_f); }, ni)));
    dc_fi.add(std::abs(mu_general(h, p, xg, fi_fp) -
                       dc_value([&](const Vec& t) { return detail::rho_of(h, t, fi_f); }, ni)));

    // Equivariance under a small element of G.
    const Vec yg = 0.05 * sample_algebra(so, rng);
    const CMat gmat = m.exp(CVec(yg.cast<cplx>()));
    double res = 0;
    const Vec x1 = detail::act_on_chart(h, gmat, x, x, &res);
    const ChartPoint p1 = chart_split(so, x1);
    const Vec moved = expm(Mat(-m.ad(yg))) * xg;
    eq_j.add(std::max(std::abs(mu_J(h, p1, xg) - mu_J(h, p, moved)), res));
    eq_can.add(std::max(std::abs(mu_can(h, p1, xg) - mu_can(h, p, moved)), res));

    Vec kx = Vec::Zero(m.dim);
    kx.head(m.dim_k) = detail::gaussian(rng, m.dim_k);
    k_slice.add(std::abs(mu_J(h, slice_point(so, p.t), kx)));
  }
  return run.finish();
}

inline VerificationReport suite_quaternionic_metric(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("quaternionic_metric", h, opt);
  const SOSystem& so = h.so;
  const int np = so.dim_p;
  const int n = 2 * np;
  const Mat id = Mat::Identity(n, n);
  auto& quat = run.check("quaternion_relations", "I^2 = J^2 = K^2 = IJK = -Id", 1e-10);
  auto& anti = run.check("anticommute", "IJ = -JI", 1e-12);
  auto& inv = run.check("form_invariance", "omega_I(I.,I.) = omega_I, omega_J(J.,J.) = omega_J, omega_K(K.,K.) = omega_K",
                        1e-10);
  auto& coin = run.check("metric_coincidence", "omega_I(.,I.) = omega_J(.,J.) = omega_K(.,K.)", 1e-10);
  auto& pos = run.check("metric_positive", "-(min eigenvalue of the metric Gram matrix) < 0", 0.0);
  auto& blk = run.check("metric_block_eigenvalues", "metric on p[alpha] + i p[alpha] = cos beta(H)/cos alpha(H) B(P,P)",
                        1e-10);
  auto& holo = run.check("holomorphic_form", "(omega_I - i omega_K)(Z, W) = B(I0 Z, W)", 1e-12);
  auto& iroute = run.check("I_induced_route", "I(Z~) = (I0 conj Z)~ agrees with L_a", 1e-12);
  auto& froute = run.check("form_routes", "trivialized and induced-field expressions of the forms agree", 1e-12);
  auto& jdef = run.check("omega_J_definition", "omega_I(J., I.) = -Im B(I0 ., F_a I0 F_a^{-1} conj .)", 1e-12);
  auto& orth = run.check("p_ip_pairing", "omega_J(X, J iV) = 0 for X, V in p", 1e-12);
  auto& origin = run.check("restriction_to_base", "omega_I = omega_0 on real induced fields at H = 0", 1e-12);
  auto& kern = run.check("kernel_consistency", "Psi_* E_a^{-1} F_a = (E_a^{-1} F_a) Psi_*", 1e-12);
  auto& chart_q = run.check("chart_quaternion_relations", "I^2 = J^2 = K^2 = IJK = -Id in chart coordinates", 1e-10);

  for (int k = 0; k < opt.n_points; ++k) {
    auto rng = run.rng_for(k);
    const ChartPoint p = sample_chart_point(h, rng);
    const Vec x = chart_join(p);
    run.record(k, x);
    const Vec& t = p.t;
    const CellPoint c = h.cell(t);
    const Mat si = I_real(h, t), sj = J_real(h), sk = K_real(h, t);
    quat.add(std::max({max_abs(Mat(si * si + id)), max_abs(Mat(sj * sj + id)), max_abs(Mat(sk * sk + id)),
                       max_abs(Mat(si * sj * sk + id))}));
    anti.add(max_abs(Mat(si * sj + sj * si)));
    const Mat wi = form_matrix(h, FormKind::omega_I, t), wj = form_matrix(h, FormKind::omega_J, t),
              wk = form_matrix(h, FormKind::omega_K, t);
    inv.add(std::max({max_abs(Mat(si.transpose() * wi * si - wi)), max_abs(Mat(sj.transpose() * wj * sj - wj)),
                      max_abs(Mat(sk.transpose() * wk * sk - wk))}));
    const Mat gi = wi * si, gj = wj * sj, gk = wk * sk;
    coin.add(std::max(max_abs(Mat(gi - gj)), max_abs(Mat(gi - gk))));
    const Mat gsym = 0.5 * (gi + gi.transpose());
    pos.add(-Eigen::SelfAdjointEigenSolver<Mat>(gsym).eigenvalues().minCoeff());
    {
      const Vec v = so.column_values(t);
      Vec expect(n);
      for (int i = 0; i < np; ++i) {
        const double beta = v(so.column_partner[static_cast<std::size_t>(i)]);
        const double e = std::cos(beta) / std::cos(v(i)) * so.C;
        expect(i) = e;
        expect(np + i) = e;
      }
      blk.add(max_abs(Mat(gi - Mat(expect.asDiagonal()))));
    }
    for (int rep = 0; rep < 5; ++rep) {
      const CVec z = detail::complex_gaussian(rng, np), w = detail::complex_gaussian(rng, np);
      const cplx b = so.B(CVec(so.I0.cast<cplx>() * z), w);
      holo.add(std::abs(cplx(omega_I(h, z, w), -omega_K(h, z, w)) - b));
      const CVec via_induced = from_induced(h, t, I_apply_induced(h, to_induced(h, t, z)));
      iroute.add(max_abs(CVec(via_induced - I_apply(h, t, z))));
      const CVec zi = to_induced(h, t, z), wi_ = to_induced(h, t, w);
      double fr = std::abs(omega_I_induced(h, t, zi, wi_) - omega_I(h, z, w));
      fr = std::max(fr, std::abs(omega_K_induced(h, t, zi, wi_) - omega_K(h, z, w)));
      fr = std::max(fr, std::abs(omega_J_induced(h, t, zi, wi_) - omega_J(h, t, z, w)));
      fr = std::max(fr, std::abs(omega_can_induced(h, t, zi, wi_) - omega_can(h, t, z, w)));
      froute.add(fr);
      jdef.add(std::abs(omega_J(h, t, z, w) - omega_J_trivialized(h, t, z, w)));
      const Vec xr = detail::gaussian(rng, np), vr = detail::gaussian(rng, np);
      const CVec jv = J_apply(CVec(imag_unit * vr.cast<cplx>()));
      orth.add(std::abs(omega_J(h, t, xr.cast<cplx>(), jv)));
      const Vec t0 = Vec::Zero(so.rank);
      const CVec zr = xr.cast<cplx>(), wr = vr.cast<cplx>();
      origin.add(std::abs(omega_I_induced(h, t0, zr, wr) - omega_0_pullback_induced(h, zr, wr)));
    }
    {
      const Mat e = e_a(so, c).matrix, f = f_a(so, c).matrix, ps = psi_star(so, c).matrix;
      kern.add(max_abs(Mat(ps * e.inverse() * f - e.inverse() * f * ps)));
    }
    {
      const Mat ni = chart_structure(h, StructureKind::I, x), nj = chart_structure(h, StructureKind::J, x),
                nk = chart_structure(h, StructureKind::K, x);
      chart_q.add(std::max({max_abs(Mat(ni * ni + id)), max_abs(Mat(nj * nj + id)), max_abs(Mat(nk * nk + id)),
                            max_abs(Mat(ni * nj * nk + id))}));
    }
  }
  return run.finish();
}

inline VerificationReport suite_integrability(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("integrability", h, opt);
  const SOSystem& so = h.so;
  const int np = so.dim_p;
  auto& nij_i = run.check("nijenhuis_I", "N_I = 0", 1e-4);
  auto& nij_k = run.check("nijenhuis_K", "N_K = 0", 1e-4);
  auto& nij_j = run.check("nijenhuis_J", "N_J = 0", 1e-4);
  auto& jconst = run.check("J_trivialized", "J is multiplication by i in the trivialization", 1e-15);
  auto& pform = run.check("projection_differential", "p_*((ga)_* Z) = Re(F_a^{-1} Z)", 1e-7);
  auto& phol = run.check("projection_holomorphic", "p_* I = I0 p_*", 1e-7);
  auto& pslice = run.check("projection_slice", "p_*(iY~) = 0 and p_*(X~) = X at slice points", 1e-7);

  const int n = chart_dim(so);
  const StructureField fi = detail::structure_field(h, StructureKind::I);
  const StructureField fk = detail::structure_field(h, StructureKind::K);
  const StructureField fj = detail::structure_field(h, StructureKind::J);
  const int n_points = std::max(opt.n_points / 2, std::min(opt.n_points, 10));
  for (int k = 0; k < n_points; ++k) {
    auto rng = run.rng_for(k);
    const ChartPoint p = sample_chart_point(h, rng);
    const Vec x = chart_join(p);
    run.record(k, x);
    nij_i.add(fd_nijenhuis(fi, x, opt.h_fd));
    nij_k.add(fd_nijenhuis(fk, x, opt.h_fd));
    nij_j.add(fd_nijenhuis(fj, x, opt.h_fd));
    {
      const CVec z = detail::complex_gaussian(rng, np);
      const Mat jr = J_real(h);
      jconst.add(max_abs(Vec(jr * to_real(z) - to_real(CVec(imag_unit * z)))));
    }
    // Differential of the projection along every coordinate direction.
    const CMat frame = chart_frame_matrix(so, p);
    const Mat fr = real_frame(so, p);
    std::vector<CVec> vel(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      vel[static_cast<std::size_t>(i)] = detail::base_velocity(h, x, Vec::Unit(n, i), opt.h_fd);
      const Vec predicted = p_star(h, p.t, CVec(frame.col(i)));
      pform.add(max_abs(CVec(vel[static_cast<std::size_t>(i)] - predicted.cast<cplx>())));
    }
    const Mat ni = fi(x);
    for (int i = 0; i < n; ++i) {
      CVec lhs = CVec::Zero(np);
      for (int mm = 0; mm < n; ++mm) lhs += ni(mm, i) * vel[static_cast<std::size_t>(mm)];
      const CVec rhs = so.I0.cast<cplx>() * vel[static_cast<std::size_t>(i)];
      phol.add(max_abs(CVec(lhs - rhs)));
    }
    (void)fr;
    // Slice statements.
    const ChartPoint sp = slice_point(so, p.t);
    const Vec xs = chart_join(sp);
    const Vec y = detail::gaussian(rng, np);
    const Mat f = f_a(so, h.cell(p.t)).matrix;
    const CVec iy_field = f.cast<cplx>() * (imag_unit * y.cast<cplx>());
    const CVec x_field = f.cast<cplx>() * y.cast<cplx>();
    const Vec d_iy = frame_invert(so, sp, iy_field, h.config.max_condition);
    const Vec d_x = frame_invert(so, sp, x_field, h.config.max_condition);
    pslice.add(max_abs(detail::base_velocity(h, xs, d_iy, opt.h_fd)));
    pslice.add(max_abs(CVec(detail::base_velocity(h, xs, d_x, opt.h_fd) - y.cast<cplx>())));
  }
  return run.finish();
}

struct OdeGrowth {
  double slope = 0;
  double growth = 0;
  double zero_solution = 0;
};

/// Integrates dy/dt = rate(t) y from (t0, y0) to t1 and fits the log-log slope
/// of |y| against `scale(t)` on the samples.
inline OdeGrowth integrate_growth(const std::function<double(double)>& rate, const std::function<double(double)>& scale,
                                  double t0, double t1, double y0) {
  namespace odeint = boost::numeric::odeint;
  using state = std::vector<double>;
  auto rhs = [&](const state& y, state& dy, double t) { dy[0] = rate(t) * y[0]; };
  std::vector<double> ts, ys;
  auto obs = [&](const state& y, double t) {
    ts.push_back(t);
    ys.push_back(y[0]);
  };
  state y{y0};
  const int n_obs = 60;
  std::vector<double> times;
  for (int i = 0; i <= n_obs; ++i) times.push_back(t0 + (t1 - t0) * i / n_obs);
  auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<state>());
  odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), (t1 - t0) / 1000.0, obs);

  // Least-squares slope of log|y| on log scale(t) over the second half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = ts.size() / 2; i < ts.size(); ++i) {
    const double lx = std::log(scale(ts[i]));
    const double ly = std::log(std::abs(ys[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  OdeGrowth g;
  g.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  g.growth = std::abs(ys.back() / y0);

  state z{0.0};
  double zmax = 0;
  auto zobs = [&](const state& s, double) { zmax = std::max(zmax, std::abs(s[0])); };
  odeint::integrate_times(stepper, rhs, z, times.begin(), times.end(), (t1 - t0) / 1000.0, zobs);
  g.zero_solution = zmax;
  return g;
}

inline VerificationReport suite_sl2_chart(const HKHandle& h, const SuiteOptions& opt) {
  if (h.so.model.name != "sl2r")
    throw configuration_error("the sl(2,R) chart checks need space sl2r");
  detail::SuiteRun run("sl2_chart", h, opt);
  const SOSystem& so = h.so;
  auto& zero = run.check("a1_b1_vanish", "a_1 = b_1 = 0", 1e-12);
  auto& a3 = run.check("a3_cos", "a_3(H) = -cos alpha(H)", 1e-12);
  auto& a2 = run.check("a2_reciprocal", "a_2 = -1/a_3", 1e-12);
  auto& shape = run.check("matrix_shape", "L_a has the anti-linear anti-involution block form", 1e-12);
  auto& cons = run.check("constraint", "b_1^2 + a_1^2 + a_2 a_3 = -1", 1e-12);
  auto& d1 = run.check("closedness_A_P_iA", "d omega_J(A, P, iA) = 0 on the chart", 1e-5);
  auto& d2 = run.check("closedness_A_K_iA", "d omega_J(A, K, iA) = 0 on the chart", 1e-5);
  auto& d3 = run.check("closedness_P_K_iA", "d omega_J(P, K, iA) = 0 on the chart", 1e-5);
  auto& sb = run.check("b1_growth_rate", "perturbed b_1 grows like 1/cos^2 alpha(H): |slope/(-2) - 1|", 0.1);
  auto& sa = run.check("a1_growth_rate", "perturbed a_1 grows like 1/sin^2 alpha(H): |slope/(-2) - 1|", 0.1);
  auto& zs = run.check("zero_solutions", "b_1(0) = 0 and a_1 = 0 stay identically zero", 1e-15);

  const auto fj = detail::form_field(h, FormKind::omega_J);
  // Chart layout for sl2r: x = (x_A, x_P), c = (c_K), t.
  const int ix_a = 0, ix_p = 1, ic_k = 2, it = 3;
  const int n_grid = std::max(opt.n_points, 20);
  for (int k = 0; k < n_grid; ++k) {
    const double s = -0.9 * pi / 4 + (k + 0.5) * (1.8 * pi / 4) / n_grid;
    Vec t(1);
    t(0) = s;
    run.record(k, t);
    const CellPoint c = h.cell(t);
    const Mat r = l_a(so, c).realified();  // basis {A, P, iA, iP}
    const double va1 = r(0, 0), va2 = r(0, 1), va3 = r(1, 0), vb1 = r(2, 0);
    zero.add(std::max(std::abs(va1), std::abs(vb1)));
    a3.add(std::abs(va3 + std::cos(2.0 * s)));
    a2.add(std::abs(va2 + 1.0 / va3));
    Mat tmpl(4, 4);
    tmpl << va1, va2, vb1, 0, va3, -va1, 0, vb1, vb1, 0, -va1, -va2, 0, vb1, -va3, va1;
    shape.add(max_abs(Mat(r - tmpl)));
    cons.add(std::abs(vb1 * vb1 + va1 * va1 + va2 * va3 + 1.0));
    const Vec x = chart_join(slice_point(so, t));
    d1.add(std::abs(fd_d_twoform(fj, x, ix_a, ix_p, it, opt.h_fd)));
    d2.add(std::abs(fd_d_twoform(fj, x, ix_a, ic_k, it, opt.h_fd)));
    d3.add(std::abs(fd_d_twoform(fj, x, ix_p, ic_k, it, opt.h_fd)));
  }
  // alpha(A) = 2, alpha(tA) = 2t.
  const auto gb = integrate_growth([](double u) { return 4.0 * std::tan(2.0 * u); },
                                   [](double u) { return std::cos(2.0 * u); }, 0.0, 0.99 * pi / 4, 1e-6);
  const auto ga = integrate_growth([](double u) { return -4.0 / std::tan(2.0 * u); },
                                   [](double u) { return std::sin(2.0 * u); }, pi / 8, 1e-3, 1e-6);
  sb.add(std::abs(gb.slope / -2.0 - 1.0));
  sa.add(std::abs(ga.slope / -2.0 - 1.0));
  zs.add(std::max(gb.zero_solution, ga.zero_solution));
  return run.finish();
}

inline VerificationReport suite_f_I_ode(const HKHandle& h, const SuiteOptions& opt) {
  detail::SuiteRun run("f_I_ode", h, opt);
  auto& closed = run.check("ode_closed_form", "tan(t) f_I'(t) = cos t - 1 with the closed-form derivative", 1e-10);
  auto& fd = run.check("ode_finite_difference", "tan(t) f_I'(t) = cos t - 1 with f_I' by central differences", 1e-10);
  auto& quad = run.check("quadrature", "f_I(t) = integral_0^t (cos s - 1) cot s ds", 1e-9);
  auto& init = run.check("initial_value", "f_I(0) = 0", 1e-15);
  const double tmax = 0.95 * pi / 2;
  const int n_grid = std::max(opt.n_points, 100);
  for (int k = 0; k <= n_grid; ++k) {
    const double t = -tmax + 2.0 * tmax * k / n_grid;
    if (std::abs(t) < 1e-12) continue;
    closed.add(std::abs(std::tan(t) * f_I_prime(t) - (std::cos(t) - 1.0)));
    auto f = [](const Vec& u) { return f_I(u(0)); };
    Vec u(1);
    u(0) = t;
    const double step = std::min(1e-3, 0.5 * (pi / 2 - std::abs(t)));
    const double d = richardson_diff(f, u, 0, step);
    fd.add(std::abs(std::tan(t) * d - (std::cos(t) - 1.0)));
    auto integrand = [](double s) { return std::abs(s) < 1e-300 ? 0.0 : (std::cos(s) - 1.0) * std::cos(s) / std::sin(s); };
    const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, t, 15, 1e-14);
    quad.add(std::abs(q - f_I(t)));
  }
  init.add(std::abs(f_I(0.0)));
  return run.finish();
}

/// Runs one suite by name.
inline VerificationReport run_suite(const std::string& name, const HKHandle& h, const SuiteOptions& opt,
                                    bool timing = false) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  if (name == "structure") rep = suite_structure(h, opt);
  else if (name == "operators") rep = suite_operators(h, opt);
  else if (name == "closedness") rep = suite_closedness(h, opt);
  else if (name == "potential_J") rep = suite_potential(h, opt, "J");
  else if (name == "potential_I") rep = suite_potential(h, opt, "I");
  else if (name == "potential_can") rep = suite_potential(h, opt, "can");
  else if (name == "moment_maps") rep = suite_moment_maps(h, opt);
  else if (name == "quaternionic_metric") rep = suite_quaternionic_metric(h, opt);
  else if (name == "integrability") rep = suite_integrability(h, opt);
  else if (name == "sl2_chart") rep = suite_sl2_chart(h, opt);
  else if (name == "f_I_ode") rep = suite_f_I_ode(h, opt);
  else throw configuration_error("unknown suite " + name);
  if (timing)
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace crownkit
