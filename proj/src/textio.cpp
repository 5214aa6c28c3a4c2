#include "cis/textio.hpp"

#include <cctype>

namespace cis {

namespace {

std::string render_monomial(const Exponent& e,
                            const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

void append_piece(std::string& body, const std::string& piece) {
  if (piece.empty()) return;
  if (!body.empty()) body += '*';
  body += piece;
}

// one term as (negative?, body without sign)
std::pair<bool, std::string> render_term(const Exponent& m, const Rational& c,
                                         const std::vector<std::string>& names) {
  bool neg = c < 0;
  Rational a = neg ? Rational(-c) : c;
  std::string mon = render_monomial(m, names);
  if (mon.empty()) return {neg, to_string(a)};
  if (a == 1) return {neg, mon};
  return {neg, to_string(a) + "*" + mon};
}

std::pair<bool, std::string> render_term(const Exponent& m, const RatPoly& c,
                                         const std::vector<std::string>& var_names,
                                         const std::vector<std::string>& param_names) {
  if (c.term_count() == 1) {
    const Rational& ca = c.leading_coeff();
    bool neg = ca < 0;
    Rational a = neg ? Rational(-ca) : ca;
    std::string body;
    if (a != 1) body = to_string(a);
    append_piece(body, render_monomial(c.leading_monomial(), param_names));
    append_piece(body, render_monomial(m, var_names));
    if (body.empty()) body = "1";
    return {neg, body};
  }
  std::string body = "(" + render(c, param_names) + ")";
  std::string vm = render_monomial(m, var_names);
  if (!vm.empty()) body += "*" + vm;
  return {false, body};
}

// ----- parsing -----

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  void skip_space() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      advance();
  }

  void advance() {
    if (s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  bool eof() {
    skip_space();
    return pos == s.size();
  }

  char peek() {
    skip_space();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  std::string ident() {
    std::string out;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      out += s[pos];
      advance();
    }
    return out;
  }

  std::string digits() {
    std::string out;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      out += s[pos];
      advance();
    }
    return out;
  }
};

struct Parser {
  Lexer lex;
  const std::vector<std::string>& var_names;
  const std::vector<std::string>& param_names;
  const MonomialOrdering& ox;
  const MonomialOrdering& oa;

  ParamPoly constant(const Rational& c) const {
    return ParamPoly::constant(ox, RatPoly::constant(oa, c));
  }

  ParamPoly expr() {
    ParamPoly acc = term();
    while (true) {
      if (lex.eat('+'))
        acc += term();
      else if (lex.eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  ParamPoly term() {
    ParamPoly acc = factor();
    while (lex.eat('*')) acc = acc * factor();
    return acc;
  }

  ParamPoly factor() {
    if (lex.eat('-')) return -factor();
    ParamPoly base = primary();
    while (lex.eat('^')) {
      lex.skip_space();
      if (!std::isdigit(static_cast<unsigned char>(lex.peek())))
        lex.fail("expected a nonnegative integer exponent");
      std::string d = lex.digits();
      unsigned long e = std::stoul(d);
      ParamPoly p = constant(Rational(1));
      for (unsigned long i = 0; i < e; ++i) p = p * base;
      base = p;
    }
    return base;
  }

  ParamPoly primary() {
    char c = lex.peek();
    if (c == '(') {
      lex.advance();
      ParamPoly inner = expr();
      if (!lex.eat(')')) lex.fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = lex.digits();
      if (lex.pos < lex.s.size() && lex.s[lex.pos] == '/') {
        lex.advance();
        if (lex.pos == lex.s.size() ||
            !std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
          lex.fail("expected a denominator");
        std::string den = lex.digits();
        if (den == "0") lex.fail("zero denominator");
        return constant(Rational(Rational(num.c_str()) / Rational(den.c_str())));
      }
      return constant(Rational(num.c_str()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int at_line = lex.line, at_col = lex.col;
      std::string name = lex.ident();
      for (std::size_t i = 0; i < var_names.size(); ++i)
        if (var_names[i] == name)
          return ParamPoly::term(ox, Exponent::var(var_names.size(), i),
                                 RatPoly::constant(oa, 1));
      for (std::size_t i = 0; i < param_names.size(); ++i)
        if (param_names[i] == name)
          return ParamPoly::constant(
              ox, RatPoly::term(oa, Exponent::var(param_names.size(), i),
                                Rational(1)));
      throw ParseError(at_line, at_col, "unknown name '" + name + "'");
    }
    lex.fail(c == '\0' ? "unexpected end of input"
                       : std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::string render(const RatPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f) {
    auto [neg, body] = render_term(m, c, names);
    if (out.empty())
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

std::string render(const ParamPoly& f,
                   const std::vector<std::string>& var_names,
                   const std::vector<std::string>& param_names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f) {
    auto [neg, body] = render_term(m, c, var_names, param_names);
    if (out.empty())
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

ParamPoly parse_poly(const std::string& text,
                     const std::vector<std::string>& var_names,
                     const std::vector<std::string>& param_names,
                     const MonomialOrdering& ox, const MonomialOrdering& oa) {
  Parser p{Lexer(text), var_names, param_names, ox, oa};
  ParamPoly out = p.expr();
  if (!p.lex.eof())
    p.lex.fail(std::string("unexpected character '") + p.lex.peek() + "'");
  return out;
}

RatPoly parse_ratpoly(const std::string& text,
                      const std::vector<std::string>& names,
                      const MonomialOrdering& ord) {
  MonomialOrdering oa = MonomialOrdering::lex(0);
  ParamPoly p = parse_poly(text, names, {}, ord, oa);
  RatPoly out(ord);
  for (const auto& [m, c] : p)
    if (const Rational* r = c.coeff(Exponent::unit(0))) out.add_term(m, *r);
  return out;
}

}  // namespace cis
