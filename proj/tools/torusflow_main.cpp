#include "torusflow/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

void apply_config_file(const std::string& path, torusflow::SuiteConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(is);
  if (j.contains("k")) cfg.grids = j["k"].get<std::vector<int>>();
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("T")) cfg.T = j["T"].get<double>();
  if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
  if (j.contains("eps_prox")) cfg.eps_prox = j["eps_prox"].get<double>();
  if (j.contains("quad_order")) cfg.quad_order = j["quad_order"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torusflow: verification suites for discrete gradient flows on the torus"};

  std::string suite;
  app.add_option("suite", suite,
                 "suite name: operators|gamma|interp|tvflow|acflow|tdf|cac|poincare|all")
      ->required();

  std::string config_path;
  torusflow::SuiteConfig cfg;
  app.add_option("--config", config_path, "JSON config file (CLI flags override it)");
  auto* ok = app.add_option("--k", cfg.grids, "comma-separated grid resolutions (nodes per axis)")
                 ->delimiter(',');
  auto* oa = app.add_option("--alpha", cfg.alpha, "double-well depth (> 0)");
  auto* ol = app.add_option("--lambda", cfg.lambda, "reaction splitting shift");
  auto* od = app.add_option("--delta", cfg.delta, "comparison-bound slack parameter");
  auto* oT = app.add_option("--T", cfg.T, "time horizon");
  auto* ot = app.add_option("--tau", cfg.tau, "time step (default: per-grid rule)");
  auto* oe = app.add_option("--eps-prox", cfg.eps_prox, "inner proximal tolerance");
  auto* os = app.add_option("--seed", cfg.seed, "seed for randomized probe pools");
  auto* oo = app.add_option("--out", cfg.out_dir, "output directory for report artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      torusflow::SuiteConfig file_cfg;
      apply_config_file(config_path, file_cfg);
      // keep CLI values only where the flag was actually passed
      if (!*ok) cfg.grids = file_cfg.grids;
      if (!*oa) cfg.alpha = file_cfg.alpha;
      if (!*ol) cfg.lambda = file_cfg.lambda;
      if (!*od) cfg.delta = file_cfg.delta;
      if (!*oT) cfg.T = file_cfg.T;
      if (!*ot) cfg.tau = file_cfg.tau;
      if (!*oe) cfg.eps_prox = file_cfg.eps_prox;
      if (!*os) cfg.seed = file_cfg.seed;
      if (!*oo) cfg.out_dir = file_cfg.out_dir;
    }

    torusflow::Report rep = torusflow::run_suite(suite, cfg);
    if (!cfg.out_dir.empty()) torusflow::write_artifacts(rep, cfg.out_dir);
    torusflow::write_report_json(rep, std::cout);

    int failures = 0;
    for (const auto& r : rep.records)
      if (!r.pass) ++failures;
    if (failures) std::cerr << failures << " check(s) failed\n";
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
