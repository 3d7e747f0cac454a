#include "torusflow/suites.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace torusflow {

namespace {
Report dispatch(const std::string& name, const SuiteConfig& cfg) {
  if (name == "operators") return run_operators_suite(cfg);
  if (name == "gamma") return run_gamma_suite(cfg);
  if (name == "interp") return run_interp_suite(cfg);
  if (name == "tvflow") return run_tvflow_suite(cfg);
  if (name == "acflow") return run_acflow_suite(cfg);
  if (name == "tdf") return run_tdf_suite(cfg);
  if (name == "cac") return run_cac_suite(cfg);
  if (name == "poincare") return run_poincare_suite(cfg);
  if (name == "all") {
    Report all;
    all.suite = "all";
    for (const char* sub :
         {"operators", "gamma", "interp", "tvflow", "acflow", "tdf", "cac", "poincare"}) {
      Report r = dispatch(sub, cfg);
      for (auto& rec : r.records) all.records.push_back(std::move(rec));
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + name);
}
}  // namespace

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  Report rep = dispatch(name, cfg);
  // deterministic stamp: no timestamps or host data, so fixed seeds give
  // byte-identical reports
  rep.environment = "torusflow/1.0 seed=" + std::to_string(cfg.seed);
  return rep;
}

void write_artifacts(const Report& rep, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base(out_dir);
  {
    std::ofstream os(base / (rep.suite + ".report.json"), std::ios::binary);
    if (!os) throw std::runtime_error("cannot write report to " + out_dir);
    write_report_json(rep, os);
  }
  {
    std::ofstream os(base / (rep.suite + ".csv"), std::ios::binary);
    write_report_csv(rep, os);
  }
}

}  // namespace torusflow
