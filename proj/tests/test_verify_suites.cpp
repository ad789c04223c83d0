#include "crownkit/crownkit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace crownkit;

namespace {

SuiteOptions small(int n = 4, std::uint64_t seed = 3) {
  SuiteOptions o;
  o.n_points = n;
  o.seed = seed;
  return o;
}

} // namespace

TEST(Suites, AllPassOnSl2) {
  const HKHandle h("sl2r");
  for (const auto& s : suite_names()) {
    const auto r = run_suite(s, h, small());
    EXPECT_TRUE(r.pass()) << s;
    EXPECT_FALSE(r.checks.empty()) << s;
  }
}

TEST(Suites, ClosednessPassesOnSp4) {
  const HKHandle h("sp4r");
  EXPECT_TRUE(run_suite("closedness", h, small(3)).pass());
}

TEST(Suites, ToleranceBelowDifferenceFloorFails) {
  const HKHandle h("sl2r");
  auto o = small(3);
  o.tolerances["closedness"] = 1e-12;
  const auto r = run_suite("closedness", h, o);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.find("d_omega_I")->pass);
}

TEST(Suites, CheckOverrideTakesPrecedence) {
  const HKHandle h("sl2r");
  auto o = small(2);
  o.tolerances["closedness"] = 1e-12;
  o.tolerances["closedness.d_omega_I"] = 1e-3;
  const auto r = run_suite("closedness", h, o);
  EXPECT_EQ(r.find("d_omega_I")->tolerance, 1e-3);
  EXPECT_EQ(r.find("d_omega_J")->tolerance, 1e-12);
}

TEST(Suites, Sl2ChartNeedsSl2) {
  const HKHandle h("sp4r");
  EXPECT_THROW(run_suite("sl2_chart", h, small()), configuration_error);
  EXPECT_THROW(run_suite("no_such_suite", h, small()), configuration_error);
}

TEST(Suites, PointsRecordSeeds) {
  const HKHandle h("su21");
  const auto a = run_suite("potential_J", h, small(3, 1));
  const auto b = run_suite("potential_J", h, small(3, 2));
  ASSERT_EQ(a.points.size(), 3u);
  EXPECT_NE(a.points[0].seed, a.points[1].seed);
  EXPECT_NE(a.points[0].seed, b.points[0].seed);
  EXPECT_EQ(a.points[0].coords.size(), chart_dim(h.so));
}

TEST(Suites, NanResidualFails) {
  detail::CheckBuilder b("x", "x = 0", 1.0);
  b.add(0.5);
  b.add(std::numeric_limits<double>::quiet_NaN());
  b.add(0.1);
  const Check c = b.finish();
  EXPECT_FALSE(c.pass);
  EXPECT_TRUE(std::isnan(c.max_residual));
  VerificationReport r;
  r.checks.push_back(c);
  const json j = report_json(r, json::object());
  EXPECT_TRUE(j["checks"][0]["max_residual"].is_null());
  EXPECT_EQ(j["verdict"], "fail");
}

TEST(Suites, SamplerStaysInsideChart) {
  const HKHandle h("su22");
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const ChartPoint p = sample_chart_point(h, rng);
    EXPECT_LE(p_norm(h.so, p.x), 0.9 * h.config.r_chart + 1e-12);
    EXPECT_LE(k_norm(h.so, p.c), 0.9 * h.config.r_chart + 1e-12);
    EXPECT_GE(h.cell(p.t).min_root, 0.1);
  }
}

TEST(Report, DeterministicBytes) {
  const HKHandle h("sl2r");
  auto render = [&] {
    std::vector<VerificationReport> reps;
    for (const auto& s : suite_names()) reps.push_back(run_suite(s, h, small(3, 7)));
    return run_json("sl2r", 7, config_json(small(3, 7), h.config), reps).dump(2);
  };
  EXPECT_EQ(render(), render());
}

TEST(Report, SchemaFields) {
  const HKHandle h("sl2r");
  const auto r = run_suite("structure", h, small(2));
  const json j = report_json(r, config_json(small(2), h.config));
  for (const char* key : {"space", "suite", "seed", "config", "checks", "verdict", "points"}) EXPECT_TRUE(j.contains(key));
  EXPECT_FALSE(j.contains("runtime_ms"));
  for (const char* key : {"name", "identity", "max_residual", "tolerance", "pass"})
    EXPECT_TRUE(j["checks"][0].contains(key));
}

TEST(Report, ProfileCsv) {
  const HKHandle h("sp4r");
  const std::string csv = profile_csv(h, 5);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,t_1,t_2,rho_J,rho_I,rho_can,metric_min_eig,a3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}
