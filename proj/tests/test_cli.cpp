#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cis/cis_engine.hpp"
#include "cis/problem.hpp"
#include "cis/report.hpp"
#include "cis/textio.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cis;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  const char* dir = std::getenv("CIS_GOLDEN_DIR");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

struct RunResult {
  int rc = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("CIS_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

int line_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

const char* kProblem = R"(# comment
params: a, b
vars: x, y
order_params: lex a > b
order_vars: lex x > y
division: janet
generators:
  a*x^2*y - y^3
  b*x + y^2
)";

}  // namespace

TEST_CASE("problem files parse into the declared blocks") {
  ProblemFile pf = parse_problem(kProblem);
  CHECK(pf.params == std::vector<std::string>{"a", "b"});
  CHECK(pf.vars == std::vector<std::string>{"x", "y"});
  CHECK(pf.order_vars == MonomialOrdering::lex(2));
  CHECK(pf.order_params == MonomialOrdering::lex(2));
  CHECK(pf.division == "janet");
  REQUIRE(pf.generators.size() == 2);
  CHECK(render(pf.generators[0], pf.vars, pf.params) == "a*x^2*y - y^3");
  CHECK(render(pf.generators[1], pf.vars, pf.params) == "b*x + y^2");
}

TEST_CASE("stanza defaults and separators") {
  // minimal file: declaration-order lex, janet, empty params
  ProblemFile pf = parse_problem("vars: x\ngenerators: x^2\n");
  CHECK(pf.params.empty());
  CHECK(pf.order_vars == MonomialOrdering::lex(1));
  CHECK(pf.division == "janet");
  REQUIRE(pf.generators.size() == 1);
  CHECK(render(pf.generators[0], pf.vars, pf.params) == "x^2");

  // space-separated names, reversed precedence chain, stanzas reordered
  ProblemFile pg = parse_problem(
      "generators:\n"  // empty generator block, then other stanzas
      "vars: x y z\n"
      "order_vars: degrevlex z > y > x\n"
      "params:\n");
  CHECK(pg.generators.empty());
  CHECK(pg.vars == std::vector<std::string>{"x", "y", "z"});
  CHECK(pg.order_vars ==
        MonomialOrdering::degrevlex(std::vector<std::size_t>{2, 1, 0}));
}

TEST_CASE("problem errors carry the offending line") {
  CHECK(line_of([] { parse_problem("vars: x\nvars: y\ngenerators:\n"); }) ==
        2);
  CHECK(line_of([] { parse_problem("vars: x\nbogus: 1\n"); }) == 2);
  CHECK(line_of([] { parse_problem("params: x\nvars: x\n"); }) == 1);
  CHECK(line_of([] {
          parse_problem("vars: x, y\norder_vars: lex q > x\n");
        }) == 2);
  CHECK(line_of([] {
          parse_problem("vars: x, y\norder_vars: lex x\n");  // chain too short
        }) == 2);
  CHECK(line_of([] { parse_problem("params: a\ngenerators:\n"); }) == 3);
  CHECK(line_of([] { parse_problem("vars: x\ndivision: spencer\n"); }) == 2);
  CHECK(line_of([] { parse_problem("vars: x\nno colon here\n"); }) == 2);

  // generator expression errors keep file coordinates
  try {
    parse_problem("vars: x\ngenerators:\n  x + q\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 7);  // q sits at column 7 of the file line
  }
}

TEST_CASE("division descriptors") {
  DivisionSpec j = parse_division("janet", 3);
  DivisionSpec p = parse_division("pair:1,2,3:lex:adm", 3);
  CHECK(j.rho == p.rho);
  CHECK(j.box == p.box);
  CHECK(j.inverse == p.inverse);

  DivisionSpec q = parse_division("pair:2,1:degrevlex:inv", 2);
  CHECK(q.rho == std::vector<std::size_t>{1, 0});
  CHECK(q.box == MonomialOrdering::degrevlex(std::vector<std::size_t>{1, 0}));
  CHECK(q.inverse);

  CHECK_THROWS_AS(parse_division("pair:1:lex:adm", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_division("pair:1,1:lex:adm", 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_division("pair:1,2:grlex:adm", 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_division("pair:1,2:lex:up", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_division("thomas", 2), std::invalid_argument);
}

TEST_CASE("ordering descriptors round-trip") {
  std::vector<std::string> names = {"x", "y", "z"};
  MonomialOrdering o =
      MonomialOrdering::degrevlex(std::vector<std::size_t>{1, 2, 0});
  std::string d = ordering_descriptor(o, names);
  CHECK(d == "degrevlex y > z > x");
  ProblemFile pf =
      parse_problem("vars: x y z\norder_vars: " + d + "\ngenerators:\n");
  CHECK(pf.order_vars == o);
}

TEST_CASE("report strings render canonically and deterministically") {
  ProblemFile pf = parse_problem(kProblem);
  EngineContext ctx;
  ctx.ord_params = pf.order_params;
  ctx.var_names = pf.vars;
  ctx.param_names = pf.params;
  auto cells = cominvsys(pf.generators, parse_division("janet", 2),
                         pf.order_vars, pf.order_params, ctx);
  CisReport rep = make_report(cells, pf, "janet", true, ctx.stats);

  std::string j1 = report_json(rep), j2 = report_json(rep);
  CHECK(j1 == j2);

  auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["schema"] == kReportSchema);
  CHECK(parsed["engine"] == kEngineVersion);
  CHECK(parsed["meta"]["order_vars"] == "lex x > y");
  CHECK(parsed["meta"]["stats"]["branches"].get<long>() > 0);
  REQUIRE(parsed["cells"].size() == 4);

  // every emitted polynomial string parses back to itself
  for (const auto& c : rep.cells) {
    for (const auto& s : c.basis) {
      ParamPoly f =
          parse_poly(s, pf.vars, pf.params, pf.order_vars, pf.order_params);
      CHECK(render(f, pf.vars, pf.params) == s);
    }
    for (const auto& s : c.null_conds) {
      RatPoly g = parse_ratpoly(s, pf.params, pf.order_params);
      CHECK(render(g, pf.params) == s);
    }
  }

  std::string t = report_text(rep);
  CHECK(t.find("basis") != std::string::npos);
  CHECK(t.find("4 cells") != std::string::npos);
}

TEST_CASE("binary: compute matches the golden reports") {
  for (const char* ex : {"example1", "example2"}) {
    auto name = std::string(ex);
    RunResult r =
        run_cli("compute " + golden(name + ".prob") + " --output json");
    CHECK(r.rc == 0);
    CHECK(r.out == slurp(golden(name + ".report.json")));
  }
  RunResult t = run_cli("compute " + golden("example2.prob"));
  CHECK(t.rc == 0);
  CHECK(t.out == slurp(golden("example2.report.txt")));
}

TEST_CASE("binary: trace matches the golden transcript") {
  RunResult r = run_cli("trace " + golden("example2.prob"));
  CHECK(r.rc == 0);
  CHECK(r.out == slurp(golden("example2.trace.txt")));
}

TEST_CASE("binary: completion lists the degree-box products") {
  RunResult r = run_cli("complete " + golden("example2.prob"));
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "a*x^2\na*x^2*y\na*x^2*y^2\nb*y^2\nb*x*y^2\nb*x^2*y^2\n");
}

TEST_CASE("binary: verify samples every cell") {
  RunResult r =
      run_cli("verify " + golden("example2.prob") + " --samples 3 --seed 7");
  CHECK(r.rc == 0);
  CHECK(r.out.find("0 failures") != std::string::npos);

  RunResult j = run_cli("verify " + golden("example1.prob") +
                        " --samples 2 --seed 1 --output json");
  CHECK(j.rc == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["ok"] == true);
  CHECK(parsed["total_failures"] == 0);
}

TEST_CASE("binary: failures exit nonzero") {
  RunResult bad = run_cli("compute /definitely/not/there.prob");
  CHECK(bad.rc == 1);
  RunResult usage = run_cli("frobnicate");
  CHECK(usage.rc == 1);
  RunResult noargs = run_cli("");
  CHECK(noargs.rc == 1);
}
