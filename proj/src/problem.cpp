#include "cis/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace cis {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto nxt = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, nxt - pos)));
    if (nxt == std::string::npos) break;
    pos = nxt + 1;
  }
  return out;
}

// Name lists accept commas, plain spaces, or both as separators.
std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> parse_name_list(int line, const std::string& value,
                                         const std::string& key) {
  auto names = split_names(value);
  for (const auto& n : names)
    if (!is_ident(n))
      throw ParseError(line, 1, key + ": '" + n + "' is not a valid name");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw ParseError(line, 1, key + ": name '" + names[i] + "' repeated");
  return names;
}

MonomialOrdering parse_ordering(int line, const std::string& value,
                                const std::vector<std::string>& names,
                                const std::string& key) {
  std::istringstream ss(value);
  std::string kind;
  ss >> kind;
  OrderKind k;
  if (kind == "lex")
    k = OrderKind::lex;
  else if (kind == "degrevlex")
    k = OrderKind::degrevlex;
  else
    throw ParseError(line, 1,
                     key + ": unknown ordering '" + kind +
                         "' (expected lex or degrevlex)");
  std::string rest;
  std::getline(ss, rest);
  rest = trim(rest);
  std::vector<std::size_t> prec(names.size());
  std::iota(prec.begin(), prec.end(), 0);
  if (!rest.empty()) {
    auto chain = split_on(rest, '>');
    std::vector<bool> used(names.size(), false);
    prec.clear();
    for (const auto& nm : chain) {
      if (nm.empty())
        throw ParseError(line, 1, key + ": empty name in precedence chain");
      auto it = std::find(names.begin(), names.end(), nm);
      if (it == names.end())
        throw ParseError(line, 1, key + ": unknown name '" + nm + "'");
      std::size_t i = static_cast<std::size_t>(it - names.begin());
      if (used[i])
        throw ParseError(line, 1, key + ": name '" + nm + "' repeated");
      used[i] = true;
      prec.push_back(i);
    }
    if (prec.size() != names.size())
      throw ParseError(line, 1,
                       key + ": precedence chain must list every name");
  }
  return MonomialOrdering::make(k, prec);
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  struct Stanza {
    int line;
    std::string value;
  };
  struct GenLine {
    int line;
    int off;  // column offset of the expression in the original line
    std::string expr;
  };
  std::map<std::string, Stanza> stanzas;
  std::vector<GenLine> gens;
  bool saw_gens = false, in_gens = false;

  static const std::vector<std::string> keys = {
      "params", "vars", "order_params", "order_vars", "division",
      "generators"};

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::string body = trim(line);
    if (body.empty()) continue;

    std::string key;
    std::string value;
    bool header = false;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      key = trim(line.substr(0, colon));
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
        header = true;
        value = trim(line.substr(colon + 1));
      } else if (is_ident(key)) {
        throw ParseError(lineno, 1, "unknown stanza '" + key + "'");
      }
    }

    if (header) {
      bool dup = key == "generators" ? saw_gens : stanzas.count(key) > 0;
      if (dup) throw ParseError(lineno, 1, "duplicate '" + key + "' stanza");
      if (key == "generators") {
        saw_gens = in_gens = true;
        if (!value.empty())
          gens.push_back(
              {lineno, static_cast<int>(line.find(value)), value});
      } else {
        in_gens = false;
        stanzas[key] = {lineno, value};
      }
      continue;
    }
    if (in_gens) {
      gens.push_back({lineno, static_cast<int>(line.find(body)), body});
      continue;
    }
    throw ParseError(lineno, 1, "expected a 'key: value' stanza");
  }

  ProblemFile pf;
  if (auto it = stanzas.find("params"); it != stanzas.end())
    pf.params = parse_name_list(it->second.line, it->second.value, "params");
  if (auto it = stanzas.find("vars"); it != stanzas.end())
    pf.vars = parse_name_list(it->second.line, it->second.value, "vars");
  else
    throw ParseError(lineno + 1, 1, "missing mandatory 'vars' stanza");
  if (pf.vars.empty())
    throw ParseError(stanzas["vars"].line, 1, "vars: at least one required");
  for (const auto& p : pf.params)
    if (std::find(pf.vars.begin(), pf.vars.end(), p) != pf.vars.end())
      throw ParseError(stanzas["params"].line, 1,
                       "name '" + p + "' declared as both param and var");

  pf.order_params = MonomialOrdering::lex(pf.params.size());
  pf.order_vars = MonomialOrdering::lex(pf.vars.size());
  if (auto it = stanzas.find("order_params"); it != stanzas.end())
    pf.order_params = parse_ordering(it->second.line, it->second.value,
                                     pf.params, "order_params");
  if (auto it = stanzas.find("order_vars"); it != stanzas.end())
    pf.order_vars = parse_ordering(it->second.line, it->second.value, pf.vars,
                                   "order_vars");

  if (auto it = stanzas.find("division"); it != stanzas.end()) {
    if (it->second.value.empty())
      throw ParseError(it->second.line, 1, "division: descriptor missing");
    pf.division = it->second.value;
    try {
      parse_division(pf.division, pf.vars.size());
    } catch (const std::invalid_argument& e) {
      throw ParseError(it->second.line, 1, e.what());
    }
  }

  for (const auto& g : gens) {
    try {
      pf.generators.push_back(parse_poly(g.expr, pf.vars, pf.params,
                                         pf.order_vars, pf.order_params));
    } catch (const ParseError& e) {
      throw ParseError(g.line, g.off + e.col, e.msg);
    }
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open problem file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_problem(ss.str());
}

DivisionSpec parse_division(const std::string& descriptor, std::size_t nvars) {
  std::string s = trim(descriptor);
  if (s == "janet") return DivisionSpec::janet(nvars);
  const std::string usage =
      "division: expected janet or pair:<perm>:<order>:<adm|inv>";
  if (s.rfind("pair:", 0) != 0) throw std::invalid_argument(usage);
  auto fields = split_on(s.substr(5), ':');
  if (fields.size() != 3) throw std::invalid_argument(usage);

  std::vector<std::size_t> perm;
  for (const auto& tok : split_on(fields[0], ',')) {
    if (tok.empty() ||
        !std::all_of(tok.begin(), tok.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("division: bad position '" + tok + "'");
    std::size_t v = std::stoul(tok);
    if (v < 1 || v > nvars)
      throw std::invalid_argument("division: position " + tok +
                                  " outside 1.." + std::to_string(nvars));
    perm.push_back(v - 1);
  }
  if (perm.size() != nvars)
    throw std::invalid_argument("division: permutation must list all " +
                                std::to_string(nvars) + " positions");
  {
    std::vector<bool> seen(nvars, false);
    for (auto i : perm) {
      if (seen[i])
        throw std::invalid_argument("division: repeated position " +
                                    std::to_string(i + 1));
      seen[i] = true;
    }
  }

  OrderKind k;
  if (fields[1] == "lex")
    k = OrderKind::lex;
  else if (fields[1] == "degrevlex")
    k = OrderKind::degrevlex;
  else
    throw std::invalid_argument("division: unknown ordering '" + fields[1] +
                                "'");
  bool inv;
  if (fields[2] == "adm")
    inv = false;
  else if (fields[2] == "inv")
    inv = true;
  else
    throw std::invalid_argument("division: expected adm or inv, got '" +
                                fields[2] + "'");
  return DivisionSpec{perm, MonomialOrdering::make(k, perm), inv};
}

std::string ordering_descriptor(const MonomialOrdering& o,
                                const std::vector<std::string>& names) {
  std::string out = o.kind() == OrderKind::lex ? "lex" : "degrevlex";
  for (std::size_t j = 0; j < o.precedence().size(); ++j) {
    out += j == 0 ? " " : " > ";
    out += names.at(o.precedence()[j]);
  }
  return out;
}

}  // namespace cis
