#pragma once

#include <string>
#include <vector>

#include "cis/cells.hpp"
#include "cis/cis_engine.hpp"
#include "cis/problem.hpp"

namespace cis {

inline constexpr const char* kReportSchema = "cis-report/1";
inline constexpr const char* kEngineVersion = "0.1.0";

// One cell flattened to canonical strings: basis over vars/params, both
// condition sets over params. An empty basis means the zero ideal and is
// shown as {0} in text form.
struct CellReport {
  std::vector<std::string> basis;
  std::vector<std::string> null_conds;
  std::vector<std::string> nonnull_conds;
};

struct CisReport {
  std::vector<CellReport> cells;
  std::vector<std::string> vars, params;
  std::string order_vars, order_params;
  std::string division;
  bool criteria = true;
  EngineStats stats;
};

CisReport make_report(const std::vector<Cell>& cells, const ProblemFile& pf,
                      const std::string& division, bool criteria,
                      const EngineStats& stats);

// Deterministic: fixed key order, 2-space indent, trailing newline. Equal
// inputs produce byte-identical output.
std::string report_json(const CisReport& r);

// Meta header, aligned three-column cell table, stats footer.
std::string report_text(const CisReport& r);

}  // namespace cis
