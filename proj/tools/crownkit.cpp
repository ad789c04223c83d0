// crownkit: runs verification suites on a symmetric space and writes a JSON
// report (stdout or --out) plus optional CSV profiles.
//
// Exit status: 0 all checks pass, 1 some check fails, 2 usage or
// configuration error.

#include "crownkit/crownkit.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace crownkit;

std::vector<std::string> expand_suites(const std::vector<std::string>& requested, const std::string& space) {
  std::vector<std::string> out;
  const auto known = suite_names();
  for (const auto& s : requested) {
    if (s == "all") {
      for (const auto& k : known)
        if (k != "sl2_chart" || space == "sl2r") out.push_back(k);
      continue;
    }
    if (std::find(known.begin(), known.end(), s) == known.end()) throw usage_error("unknown suite: " + s);
    if (s == "sl2_chart" && space != "sl2r") throw configuration_error("suite sl2_chart needs --space sl2r");
    out.push_back(s);
  }
  return out;
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw usage_error("--tol expects NAME=VALUE, got " + item);
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || !(v > 0)) throw std::invalid_argument(item);
      out[item.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw usage_error("bad tolerance value in " + item);
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw usage_error("cannot write " + path.string());
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of the hyper-Kaehler structure on crown domains"};
  app.set_help_flag("--help", "print usage and exit");  // -h would clash with --h
  std::string space = "sl2r";
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 0;
  double h_fd = 1e-4;
  std::vector<std::string> tols;
  int grid = 20;
  std::string out_path, csv_dir;
  bool list = false, timing = false;
  app.add_option("--space", space, "sl2r, su(p,q) with p+q <= 4, or sp4r");
  app.add_option("--suite", suites, "suite name or 'all' (repeatable)");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--h", h_fd, "finite-difference step")->check(CLI::PositiveNumber);
  app.add_option("--tol", tols, "tolerance override NAME=VALUE, NAME a suite or suite.check");
  app.add_option("--grid", grid, "sample points per suite")->check(CLI::Range(1, 100000));
  app.add_option("--out", out_path, "JSON report path (default stdout)");
  app.add_option("--csv-dir", csv_dir, "directory for profile CSV files");
  app.add_flag("--list-suites", list, "print suite names and exit");
  app.add_flag("--timing", timing, "include runtime_ms in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (list) {
    for (const auto& s : suite_names()) std::cout << s << "\n";
    return 0;
  }
  try {
    HKHandle h(space, HKConfig{});
    h.config.h_fd = h_fd;
    const std::string name = h.so.model.name;
    SuiteOptions opt;
    opt.seed = seed;
    opt.n_points = grid;
    opt.h_fd = h_fd;
    opt.tolerances = parse_tolerances(tols);
    std::vector<VerificationReport> reports;
    for (const auto& s : expand_suites(suites, name)) reports.push_back(run_suite(s, h, opt, timing));
    const json doc = run_json(name, seed, config_json(opt, h.config), reports, timing);
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) std::cout << text;
    else write_file(out_path, text);
    if (!csv_dir.empty()) {
      std::filesystem::create_directories(csv_dir);
      write_file(std::filesystem::path(csv_dir) / (name + "_profile.csv"), profile_csv(h, grid));
    }
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        if (!c.pass) std::cerr << "FAIL " << r.suite << "." << c.name << " residual " << c.max_residual << " tol "
                               << c.tolerance << "\n";
    return doc["pass"].get<bool>() ? 0 : 1;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const configuration_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const crownkit::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
