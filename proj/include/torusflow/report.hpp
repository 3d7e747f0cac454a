#pragma once

#include "torusflow/grid_function.hpp"  // decimal17

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace torusflow {

/// One verified statement: measured quantity against its bound, tagged with a
/// stable identifier from the check registry.
struct CheckRecord {
  std::string name;     // e.g. "tdf.bound.k64"
  std::string anchor;   // registry identifier of the underlying statement
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - measured (>= 0 on pass)
  bool pass = false;
  int k = 0;            // grid resolution when applicable
  double h = 0.0;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;
  std::string environment;

  bool all_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return !records.empty();
  }

  CheckRecord& add(const std::string& name, const std::string& anchor, double measured,
                   double bound, int k = 0, double h = 0.0) {
    CheckRecord r;
    r.name = name;
    r.anchor = anchor;
    r.measured = measured;
    r.bound = bound;
    r.margin = bound - measured;
    r.pass = measured <= bound;
    r.k = k;
    r.h = h;
    records.push_back(r);
    return records.back();
  }
};

/// Numeric fields are serialized as shortest round-tripping decimal strings
/// so reports are byte-identical across platforms.
inline void write_report_json(const Report& rep, std::ostream& os) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["environment"] = rep.environment;
  j["pass"] = rep.all_pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.records) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["anchor"] = r.anchor;
    c["measured"] = decimal17(r.measured);
    c["bound"] = decimal17(r.bound);
    c["margin"] = decimal17(r.margin);
    c["k"] = r.k;
    c["h"] = decimal17(r.h);
    c["pass"] = r.pass;
    j["checks"].push_back(std::move(c));
  }
  os << j.dump(2) << '\n';
}

inline void write_report_csv(const Report& rep, std::ostream& os) {
  os << "name,k,h,measured,bound,margin,pass\n";
  for (const auto& r : rep.records) {
    os << r.name << ',' << r.k << ',' << decimal17(r.h) << ',' << decimal17(r.measured) << ','
       << decimal17(r.bound) << ',' << decimal17(r.margin) << ',' << (r.pass ? "1" : "0") << '\n';
  }
}

}  // namespace torusflow
