#include "cis/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cis/textio.hpp"
#include "json.hpp"

namespace cis {
namespace {

std::string join_set(const std::vector<std::string>& v, const char* empty) {
  if (v.empty()) return empty;
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out + "}";
}

}  // namespace

CisReport make_report(const std::vector<Cell>& cells, const ProblemFile& pf,
                      const std::string& division, bool criteria,
                      const EngineStats& stats) {
  CisReport r;
  r.vars = pf.vars;
  r.params = pf.params;
  r.order_vars = ordering_descriptor(pf.order_vars, pf.vars);
  r.order_params = ordering_descriptor(pf.order_params, pf.params);
  r.division = division;
  r.criteria = criteria;
  r.stats = stats;
  for (const auto& c : cells) {
    CellReport cr;
    for (const auto& f : c.basis)
      cr.basis.push_back(render(f, pf.vars, pf.params));
    for (const auto& g : c.spec.null_conds)
      cr.null_conds.push_back(render(g, pf.params));
    for (const auto& g : c.spec.nonnull_conds)
      cr.nonnull_conds.push_back(render(g, pf.params));
    r.cells.push_back(std::move(cr));
  }
  return r;
}

std::string report_json(const CisReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["engine"] = kEngineVersion;
  j["meta"] = {{"vars", r.vars},
               {"params", r.params},
               {"order_vars", r.order_vars},
               {"order_params", r.order_params},
               {"division", r.division},
               {"criteria", r.criteria},
               {"stats",
                {{"branches", r.stats.branches},
                 {"reductions", r.stats.reductions},
                 {"criteria_hits", r.stats.criteria_hits}}}};
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cells)
    j["cells"].push_back({{"basis", c.basis},
                          {"null", c.null_conds},
                          {"nonnull", c.nonnull_conds}});
  return j.dump(2) + "\n";
}

std::string report_text(const CisReport& r) {
  std::ostringstream out;
  out << "vars: " << join_set(r.vars, "{}") << " (" << r.order_vars << ")\n";
  out << "params: " << join_set(r.params, "{}") << " (" << r.order_params
      << ")\n";
  out << "division: " << r.division << "\n\n";

  std::vector<std::array<std::string, 3>> rows;
  rows.push_back({"basis", "null", "nonnull"});
  for (const auto& c : r.cells)
    rows.push_back({join_set(c.basis, "{0}"), join_set(c.null_conds, "{}"),
                    join_set(c.nonnull_conds, "{}")});
  std::size_t w0 = 0, w1 = 0;
  for (const auto& row : rows) {
    w0 = std::max(w0, row[0].size());
    w1 = std::max(w1, row[1].size());
  }
  for (const auto& row : rows) {
    out << row[0] << std::string(w0 - row[0].size() + 2, ' ') << row[1]
        << std::string(w1 - row[1].size() + 2, ' ') << row[2] << "\n";
  }
  out << "\n"
      << r.cells.size() << (r.cells.size() == 1 ? " cell" : " cells")
      << " | branches=" << r.stats.branches
      << " reductions=" << r.stats.reductions
      << " criteria_hits=" << r.stats.criteria_hits
      << " criteria=" << (r.criteria ? "on" : "off") << "\n";
  return out.str();
}

}  // namespace cis
