// Acceptance gate: one line per criterion, exit status 1 if any fails.
// Tolerances are pinned here; a criterion also fails if the library reports
// a different tolerance than the pinned one or too few samples.

#include "crownkit/crownkit.hpp"

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

using namespace crownkit;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr int kPoints = 20;

const std::vector<std::string> kCoreSpaces{"sl2r", "su21", "sp4r"};

struct Requirement {
  std::string suite;
  std::string check;
  double tolerance;
  int min_samples;
};

class Runner {
 public:
  const VerificationReport& get(const std::string& space, const std::string& suite) {
    const auto key = space + "/" + suite;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SuiteOptions opt;
    opt.seed = kSeed;
    opt.n_points = kPoints;
    return cache_.emplace(key, run_suite(suite, handle(space), opt)).first->second;
  }

  const HKHandle& handle(const std::string& space) {
    auto it = handles_.find(space);
    if (it == handles_.end()) it = handles_.emplace(space, std::make_unique<HKHandle>(space)).first;
    return *it->second;
  }

 private:
  std::map<std::string, std::unique_ptr<HKHandle>> handles_;
  std::map<std::string, VerificationReport> cache_;
};

struct Outcome {
  bool pass = true;
  double worst_ratio = 0;
  std::string detail;
};

void require(Runner& run, const std::vector<std::string>& spaces, const std::vector<Requirement>& reqs, Outcome& out) {
  for (const auto& space : spaces)
    for (const auto& q : reqs) {
      const Check* c = nullptr;
      try {
        c = run.get(space, q.suite).find(q.check);
      } catch (const std::exception& e) {
        out.pass = false;
        out.detail += " " + space + ":" + q.suite + " threw " + e.what();
        continue;
      }
      const std::string where = space + ":" + q.suite + "." + q.check;
      if (c == nullptr) {
        out.pass = false;
        out.detail += " missing " + where;
        continue;
      }
      if (c->tolerance != q.tolerance) {
        out.pass = false;
        out.detail += " tolerance drift " + where;
      }
      if (c->samples < q.min_samples) {
        out.pass = false;
        out.detail += " too few samples " + where;
      }
      if (!c->pass || !(c->max_residual < q.tolerance)) {
        out.pass = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s residual %.3g", where.c_str(), c->max_residual);
        out.detail += buf;
      }
      if (q.tolerance > 0) out.worst_ratio = std::max(out.worst_ratio, c->max_residual / q.tolerance);
    }
}

std::string render_all(Runner& run, const std::string& space) {
  SuiteOptions opt;
  opt.seed = 7;
  opt.n_points = 5;
  const HKHandle& h = run.handle(space);
  std::vector<VerificationReport> reps;
  for (const auto& s : suite_names())
    if (s != "sl2_chart" || space == "sl2r") reps.push_back(run_suite(s, h, opt));
  return run_json(space, opt.seed, config_json(opt, h.config), reps).dump(2) + "\n" + profile_csv(h, 10);
}

} // namespace

int main() {
  Runner run;
  int failed = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::printf("criterion %2d %s  %s", id, o.pass ? "PASS" : "FAIL", title);
    if (o.worst_ratio > 0) std::printf("  (worst residual/tolerance %.2g)", o.worst_ratio);
    if (!o.detail.empty()) std::printf("  [%s ]", o.detail.c_str());
    std::printf("\n");
    if (!o.pass) ++failed;
  };

  {
    Outcome o;
    require(run, supported_spaces(),
            {{"structure", "theta_involution", 1e-12, 1},
             {"structure", "triple_bracket", 1e-12, 1},
             {"structure", "strong_orthogonality", 1e-12, 1},
             {"structure", "I0_on_triples", 1e-10, 1},
             {"structure", "I0_blocks", 1e-10, 1},
             {"structure", "Z0_decomposition", 1e-10, 1},
             {"structure", "Z0_central", 1e-10, 1},
             {"structure", "killing_trace", 1e-10, 1},
             {"structure", "root_vectors", 1e-10, 1}},
            o);
    report(1, "structure constants and sl2-triples on every supported space", o);
  }
  {
    Outcome o;
    require(run, supported_spaces(), {{"structure", "psi_root_identity", 1e-12, 100}}, o);
    report(2, "alpha(Psi(H)) = sin alpha(H) cos beta(H) over 100 random H", o);
  }
  {
    Outcome o;
    require(run, kCoreSpaces,
            {{"closedness", "d_omega_I", 1e-5, kPoints},
             {"closedness", "d_omega_J", 1e-5, kPoints},
             {"closedness", "d_omega_K", 1e-5, kPoints}},
            o);
    report(3, "closedness of omega_I, omega_J, omega_K", o);
  }
  {
    Outcome o;
    require(run, kCoreSpaces,
            {{"potential_J", "ddc_residual", 1e-5, kPoints},
             {"potential_I", "ddc_residual", 1e-5, kPoints},
             {"potential_can", "ddc_residual", 1e-5, kPoints}},
            o);
    report(4, "Kaehler potentials rho_J, rho_I, rho_can", o);
  }
  {
    Outcome o;
    require(run, kCoreSpaces,
            {{"moment_maps", "mu_J_formula", 1e-6, kPoints},
             {"moment_maps", "mu_can_formula", 1e-6, kPoints},
             {"moment_maps", "hamiltonian_J", 1e-5, kPoints},
             {"moment_maps", "hamiltonian_can", 1e-5, kPoints},
             {"moment_maps", "hamiltonian_I", 1e-5, kPoints},
             {"moment_maps", "equivariance_J", 1e-8, kPoints},
             {"moment_maps", "equivariance_can", 1e-8, kPoints}},
            o);
    report(5, "moment maps: closed formulas, Hamiltonian property, equivariance", o);
  }
  {
    Outcome o;
    require(run, kCoreSpaces,
            {{"quaternionic_metric", "quaternion_relations", 1e-10, kPoints},
             {"quaternionic_metric", "metric_coincidence", 1e-10, kPoints},
             {"quaternionic_metric", "metric_positive", 0.0, kPoints},
             {"quaternionic_metric", "metric_block_eigenvalues", 1e-10, kPoints},
             {"quaternionic_metric", "holomorphic_form", 1e-12, kPoints}},
            o);
    report(6, "quaternionic algebra, metric coincidence and positivity", o);
  }
  {
    Outcome o;
    require(run, kCoreSpaces,
            {{"integrability", "nijenhuis_I", 1e-4, 10}, {"integrability", "projection_holomorphic", 1e-7, 10}}, o);
    report(7, "integrability of I and holomorphy of the projection", o);
  }
  {
    Outcome o;
    require(run, {"sl2r"},
            {{"sl2_chart", "a1_b1_vanish", 1e-12, 20},
             {"sl2_chart", "a3_cos", 1e-12, 20},
             {"sl2_chart", "constraint", 1e-12, 20},
             {"sl2_chart", "closedness_A_P_iA", 1e-5, 20},
             {"sl2_chart", "closedness_A_K_iA", 1e-5, 20},
             {"sl2_chart", "closedness_P_K_iA", 1e-5, 20},
             {"sl2_chart", "b1_growth_rate", 0.1, 1},
             {"sl2_chart", "a1_growth_rate", 0.1, 1}},
            o);
    report(8, "sl(2,R) chart: structure matrix, closedness identities, ODE growth", o);
  }
  {
    Outcome o;
    require(run, {"sl2r"},
            {{"f_I_ode", "ode_closed_form", 1e-10, 100},
             {"f_I_ode", "ode_finite_difference", 1e-10, 100},
             {"f_I_ode", "quadrature", 1e-9, 100}},
            o);
    report(9, "f_I solves tan(t) f' = cos t - 1", o);
  }
  {
    Outcome o;
    for (const auto& space : kCoreSpaces) {
      const std::string a = render_all(run, space);
      const std::string b = render_all(run, space);
      if (a != b) {
        o.pass = false;
        o.detail += " " + space + " reports differ";
      }
    }
    report(10, "identical config and seed give byte-identical reports", o);
  }
  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
