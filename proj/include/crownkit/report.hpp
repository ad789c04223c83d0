#pragma once

// JSON and CSV rendering of verification results.

#include "crownkit/hk_structure.hpp"
#include "crownkit/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace crownkit {

using json = nlohmann::ordered_json;

namespace detail {

/// NaN and infinities have no JSON literal; they become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

} // namespace detail

inline json config_json(const SuiteOptions& opt, const HKConfig& cfg) {
  json c;
  c["n_points"] = opt.n_points;
  c["h_fd"] = opt.h_fd;
  c["h_outer"] = cfg.h_outer;
  c["eps"] = cfg.eps;
  c["eps_reg"] = cfg.eps_reg;
  c["r_chart"] = cfg.r_chart;
  json tol = json::object();
  for (const auto& [k, v] : opt.tolerances) tol[k] = v;
  c["tolerances"] = tol;
  return c;
}

inline json report_json(const VerificationReport& r, const json& config, bool timing = false) {
  json j;
  j["space"] = r.space;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["config"] = config;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["name"] = c.name;
    cj["identity"] = c.identity;
    cj["max_residual"] = detail::number(c.max_residual);
    cj["tolerance"] = detail::number(c.tolerance);
    cj["samples"] = c.samples;
    cj["pass"] = c.pass;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["verdict"] = r.pass() ? "pass" : "fail";
  json pts = json::array();
  for (const auto& p : r.points) {
    json pj;
    pj["index"] = p.index;
    pj["seed"] = p.seed;
    pj["coords"] = detail::vector_json(p.coords);
    pts.push_back(pj);
  }
  j["points"] = pts;
  if (timing) j["runtime_ms"] = r.runtime_ms;
  return j;
}

/// Aggregate document for several suites on one space.
inline json run_json(const std::string& space, std::uint64_t seed, const json& config,
                     const std::vector<VerificationReport>& reports, bool timing = false) {
  json j;
  j["space"] = space;
  j["seed"] = seed;
  j["config"] = config;
  json arr = json::array();
  bool all = !reports.empty();
  for (const auto& r : reports) {
    arr.push_back(report_json(r, config, timing));
    all = all && r.pass();
  }
  j["reports"] = arr;
  j["pass"] = all;
  return j;
}

/// Scalar profiles along the ray t_j = s (r - j + 1)/r, s in [0, 0.95 pi/4].
/// Columns: s, t_1..t_r, rho_J, rho_I, rho_can, metric_min_eig, a3.
inline std::string profile_csv(const HKHandle& h, int n_points) {
  const SOSystem& so = h.so;
  const int r = so.rank;
  std::ostringstream out;
  out << "s";
  for (int j = 1; j <= r; ++j) out << ",t_" << j;
  out << ",rho_J,rho_I,rho_can,metric_min_eig,a3\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out << buf;
  };
  const int n = std::max(n_points, 2);
  for (int k = 0; k < n; ++k) {
    const double s = 0.95 * pi / 4 * k / (n - 1);
    Vec t(r);
    for (int j = 0; j < r; ++j) t(j) = s * (r - j) / r;
    std::snprintf(buf, sizeof buf, "%.17g", s);
    out << buf;
    for (int j = 0; j < r; ++j) put(t(j));
    put(rho_J(h, t));
    put(rho_I(h, t));
    put(rho_can(h, t));
    const Mat g = form_matrix(h, FormKind::omega_I, t) * I_real(h, t);
    put(Eigen::SelfAdjointEigenSolver<Mat>(Mat(0.5 * (g + g.transpose()))).eigenvalues().minCoeff());
    put(l_a(so, h.cell(t)).matrix(r, 0));
    out << "\n";
  }
  return out.str();
}

} // namespace crownkit
