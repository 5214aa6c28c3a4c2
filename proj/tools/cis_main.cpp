#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cis/cis_engine.hpp"
#include "cis/problem.hpp"
#include "cis/report.hpp"
#include "cis/textio.hpp"
#include "cis/verify.hpp"
#include "json.hpp"

namespace {

using namespace cis;

struct Opts {
  std::string file;
  std::string division;  // empty: use the problem file's descriptor
  std::string criteria = "on";
  std::string output = "text";
  int samples = 25;
  unsigned seed = 0;
};

void add_common(CLI::App* sub, Opts& o) {
  sub->add_option("problem", o.file, "problem file")->required();
  sub->add_option("--division", o.division,
                  "janet or pair:<perm>:<order>:<adm|inv>, overrides the file");
  sub->add_option("--criteria", o.criteria, "prolongation criteria (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--output", o.output, "output format (json|text)")
      ->check(CLI::IsMember({"json", "text"}));
}

struct Loaded {
  ProblemFile pf;
  DivisionSpec d;
  std::string division;
};

Loaded load(const Opts& o) {
  Loaded l;
  l.pf = load_problem(o.file);
  l.division = o.division.empty() ? l.pf.division : o.division;
  l.d = parse_division(l.division, l.pf.vars.size());
  return l;
}

EngineContext make_ctx(const Loaded& l, const Opts& o) {
  EngineContext ctx;
  ctx.ord_params = l.pf.order_params;
  ctx.var_names = l.pf.vars;
  ctx.param_names = l.pf.params;
  ctx.use_criteria = o.criteria == "on";
  return ctx;
}

int run_compute(const Opts& o) {
  Loaded l = load(o);
  EngineContext ctx = make_ctx(l, o);
  auto cells =
      cominvsys(l.pf.generators, l.d, l.pf.order_vars, l.pf.order_params, ctx);
  auto rep = make_report(cells, l.pf, l.division, ctx.use_criteria, ctx.stats);
  std::cout << (o.output == "json" ? report_json(rep) : report_text(rep));
  return 0;
}

int run_trace(const Opts& o) {
  Loaded l = load(o);
  EngineContext ctx = make_ctx(l, o);
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  if (o.output == "json") {
    ctx.sink = [&](const TraceEvent& ev) {
      events.push_back({{"depth", ev.depth},
                        {"name", ev.name},
                        {"entry", ev.entry},
                        {"text", ev.text}});
    };
  } else {
    ctx.sink = [](const TraceEvent& ev) {
      std::cout << std::string(2 * static_cast<std::size_t>(ev.depth), ' ')
                << (ev.entry ? "→ " : "= ") << ev.text << "\n";
    };
  }
  cominvsys(l.pf.generators, l.d, l.pf.order_vars, l.pf.order_params, ctx);
  if (o.output == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "cis-trace/1";
    j["engine"] = kEngineVersion;
    j["events"] = std::move(events);
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int run_complete(const Opts& o) {
  Loaded l = load(o);
  auto completed = prop1_completion(l.pf.generators, l.d);
  std::vector<std::string> lines;
  for (const auto& f : completed)
    lines.push_back(render(f, l.pf.vars, l.pf.params));
  if (o.output == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "cis-completion/1";
    j["engine"] = kEngineVersion;
    j["completion"] = lines;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : lines) std::cout << s << "\n";
  }
  return 0;
}

int run_verify(const Opts& o) {
  Loaded l = load(o);
  EngineContext ctx = make_ctx(l, o);
  auto cells =
      cominvsys(l.pf.generators, l.d, l.pf.order_vars, l.pf.order_params, ctx);
  std::mt19937 rng(o.seed);
  long total = 0, failures = 0;
  nlohmann::ordered_json jcells = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    long pts = 0, bad = 0;
    for (int s = 0; s < o.samples; ++s) {
      auto pt = cell_sample(cells[i], l.pf.params.size(), rng);
      if (!pt) {
        ++bad;  // a compatible cell must be sampleable
        continue;
      }
      ++pts;
      if (!audit_point(l.pf.generators, cells, l.d, *pt).ok()) ++bad;
    }
    total += pts;
    failures += bad;
    if (o.output == "json")
      jcells.push_back({{"points", pts}, {"failures", bad}});
    else
      std::cout << "cell " << i + 1 << ": " << pts - bad << "/" << pts
                << " points ok" << (bad ? " [FAIL]" : "") << "\n";
  }
  bool ok = failures == 0;
  if (o.output == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "cis-verify/1";
    j["engine"] = kEngineVersion;
    j["cells"] = std::move(jcells);
    j["total_points"] = total;
    j["total_failures"] = failures;
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verified: " << total << " points, " << failures
              << (failures == 1 ? " failure" : " failures") << "\n";
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comprehensive involutive systems for parametric ideals"};
  app.set_version_flag("--version", cis::kEngineVersion);
  app.require_subcommand(1);

  Opts o;
  CLI::App* compute =
      app.add_subcommand("compute", "partition the parameter space and "
                                    "report a basis per cell");
  CLI::App* complete = app.add_subcommand(
      "complete", "direct degree-box completion of the generators");
  CLI::App* verify = app.add_subcommand(
      "verify", "sample points per cell and audit the computed system");
  CLI::App* trace =
      app.add_subcommand("trace", "compute with the call trace printed");
  for (auto* sub : {compute, complete, verify, trace}) add_common(sub, o);
  verify->add_option("--samples", o.samples, "points per cell")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (compute->parsed()) return run_compute(o);
    if (complete->parsed()) return run_complete(o);
    if (verify->parsed()) return run_verify(o);
    if (trace->parsed()) return run_trace(o);
  } catch (const cis::ParseError& e) {
    std::cerr << "error: " << o.file << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
