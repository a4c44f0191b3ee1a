#include "pvforms/parse.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "pvforms/errors.hpp"

namespace pvforms {

namespace {

std::string render_rational(const Rational &r, bool parenthesize_fractions) {
  if (r.is_integer() || !parenthesize_fractions)
    return r.str();
  return "(" + r.str() + ")";
}

void append_symbol(std::string &out, const char *name, int pow) {
  if (pow == 0)
    return;
  if (!out.empty())
    out += "*";
  out += name;
  if (pow != 1)
    out += "^" + std::to_string(pow);
}

std::string render_monomial(const Monomial &m, bool strip_sign) {
  Rational c = strip_sign && m.coeff.negative() ? -m.coeff : m.coeff;
  std::string syms;
  append_symbol(syms, "nR", m.nR_pow);
  append_symbol(syms, "c_v", m.cv_pow);
  append_symbol(syms, "p", m.p_pow);
  append_symbol(syms, "V", m.V_pow);
  if (syms.empty())
    return render_rational(c, true);
  if (c.is_one())
    return syms;
  if (c == Rational(-1))
    return "-" + syms;
  return render_rational(c, true) + "*" + syms;
}

// strip_leading_sign is used when a preceding " - " separator already
// carries the sign of the first term.
std::string render_field(const ScalarField &f, bool strip_leading_sign = false) {
  if (f.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const Monomial &m : f.terms()) {
    if (first) {
      out += render_monomial(m, strip_leading_sign);
      first = false;
    } else {
      out += m.coeff.negative() ? " - " : " + ";
      out += render_monomial(m, true);
    }
  }
  return out;
}

// Log coefficient in front of "ln p": bare for a single positive
// monomial, parenthesized otherwise.
std::string render_log_coeff(const ScalarField &c) {
  if (c.size() == 1) {
    const Monomial &m = c.terms()[0];
    if (m.coeff.is_one() && !(m.nR_pow || m.cv_pow || m.p_pow || m.V_pow))
      return ""; // plain "ln p"
    return render_monomial(m, false) + "*";
  }
  return "(" + render_field(c) + ")*";
}

} // namespace

std::string render(const Rational &r) { return r.str(); }

std::string render(const Monomial &m) { return render_monomial(m, false); }

std::string render(const ScalarField &f) { return render_field(f); }

std::string render(const OneForm &f) {
  if (f.is_zero())
    return "0";
  std::string out;
  if (!f.A.is_zero())
    out += render_field(f.A) + " dp";
  if (!f.B.is_zero()) {
    if (!out.empty()) {
      // The separator carries the sign of B's first term.
      const bool neg = f.B.terms().front().coeff.negative();
      out += neg ? " - " : " + ";
      out += render_field(f.B, /*strip_leading_sign=*/neg) + " dV";
    } else {
      out += render_field(f.B) + " dV";
    }
  }
  return out;
}

std::string render(const Potential &g) {
  if (g.is_zero())
    return "0";
  std::string out;
  if (!g.poly().is_zero())
    out = render_field(g.poly());
  auto add_log = [&out](const ScalarField &c, const char *var) {
    if (c.is_zero())
      return;
    const bool neg = c.size() == 1 && c.terms()[0].coeff.negative() &&
                     !out.empty();
    const ScalarField shown = neg ? -c : c;
    if (!out.empty())
      out += neg ? " - " : " + ";
    out += render_log_coeff(shown) + "ln " + var;
  };
  add_log(g.log_p_coeff(), "p");
  add_log(g.log_V_coeff(), "V");
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum Kind { Int, Ident, Star, Slash, Plus, Minus, Caret, LParen, RParen, End };
  Kind kind = End;
  std::int64_t value = 0;
  std::string text;
  std::size_t pos = 0; // 0-based offset in the input
};

[[noreturn]] void fail(const std::string &msg, std::size_t pos) {
  throw ParseError(msg, static_cast<long>(pos) + 1);
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      std::size_t start = i;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v < 0)
          fail("integer literal too large", start);
        ++i;
      }
      t.kind = Token::Int;
      t.value = v;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_'))
        ++i;
      t.kind = Token::Ident;
      t.text = std::string(text.substr(start, i - start));
    } else {
      switch (c) {
      case '*': t.kind = Token::Star; break;
      case '/': t.kind = Token::Slash; break;
      case '+': t.kind = Token::Plus; break;
      case '-': t.kind = Token::Minus; break;
      case '^': t.kind = Token::Caret; break;
      case '(': t.kind = Token::LParen; break;
      case ')': t.kind = Token::RParen; break;
      default:
        fail(std::string("unexpected character '") + c + "'", i);
      }
      ++i;
    }
    toks.push_back(std::move(t));
  }
  Token end;
  end.pos = text.size();
  toks.push_back(end);
  return toks;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ScalarField field_to_end() {
    ScalarField f = parse_field();
    expect_end();
    return f;
  }

  // The input is treated as a flat stream of signed monomials; a dp/dV
  // marker closes the field accumulated so far. "A dp - x + y dV" reads
  // conventionally: B = -x + y.
  OneForm one_form() {
    // Lone "0" is the zero form.
    if (toks_.size() == 2 && toks_[0].kind == Token::Int &&
        toks_[0].value == 0)
      return {};
    OneForm f;
    bool saw_dp = false, saw_dV = false;
    std::vector<Monomial> terms;
    int sign = 1;
    if (peek().kind == Token::Minus) {
      ++i_;
      sign = -1;
    }
    while (true) {
      // A marker directly after the start or a sign reads as a unit
      // coefficient, so bare "dp" means 1 dp.
      if (peek().kind == Token::Ident &&
          (peek().text == "dp" || peek().text == "dV")) {
        terms.push_back(Monomial{sign});
      } else {
        Monomial m = parse_monomial();
        if (sign < 0)
          m.coeff = -m.coeff;
        terms.push_back(m);
      }
      if (peek().kind == Token::Ident &&
          (peek().text == "dp" || peek().text == "dV")) {
        const Token &marker = peek();
        if (marker.text == "dp") {
          if (saw_dp)
            fail("duplicate dp component", marker.pos);
          if (saw_dV)
            fail("dp component must come before dV", marker.pos);
          f.A = ScalarField(std::move(terms));
          saw_dp = true;
        } else {
          if (saw_dV)
            fail("duplicate dV component", marker.pos);
          f.B = ScalarField(std::move(terms));
          saw_dV = true;
        }
        terms.clear();
        ++i_;
        if (peek().kind == Token::End)
          break;
        if (saw_dV)
          fail("trailing input after dV component", peek().pos);
      }
      if (peek().kind == Token::Plus)
        sign = 1;
      else if (peek().kind == Token::Minus)
        sign = -1;
      else
        fail("expected '+', '-', 'dp' or 'dV'", peek().pos);
      ++i_;
    }
    return f;
  }

private:
  const Token &peek() const { return toks_[i_]; }

  void expect_end() {
    if (peek().kind != Token::End)
      fail("trailing input", peek().pos);
  }

  ScalarField parse_field() {
    std::vector<Monomial> terms;
    int sign = 1;
    if (peek().kind == Token::Minus) {
      ++i_;
      sign = -1;
    }
    while (true) {
      Monomial m = parse_monomial();
      if (sign < 0)
        m.coeff = -m.coeff;
      terms.push_back(m);
      if (peek().kind == Token::Plus)
        sign = 1;
      else if (peek().kind == Token::Minus)
        sign = -1;
      else if (peek().kind == Token::End)
        return ScalarField(std::move(terms));
      else
        fail("expected '+', '-' or end of input", peek().pos);
      ++i_;
    }
  }

  Monomial parse_monomial() {
    Monomial m;
    parse_atom(m);
    while (peek().kind == Token::Star) {
      ++i_;
      parse_atom(m);
    }
    return m;
  }

  void parse_atom(Monomial &m) {
    const Token &t = peek();
    if (t.kind == Token::LParen) {
      ++i_;
      m.coeff *= parse_rational(/*allow_sign=*/true);
      if (peek().kind != Token::RParen)
        fail("expected ')'", peek().pos);
      ++i_;
      return;
    }
    if (t.kind == Token::Int) {
      m.coeff *= parse_rational(/*allow_sign=*/false);
      return;
    }
    if (t.kind == Token::Ident) {
      if (t.text == "dp" || t.text == "dV")
        fail("form marker '" + t.text + "' cannot start a monomial", t.pos);
      int *slot = nullptr;
      if (t.text == "nR")
        slot = &m.nR_pow;
      else if (t.text == "c_v")
        slot = &m.cv_pow;
      else if (t.text == "p")
        slot = &m.p_pow;
      else if (t.text == "V")
        slot = &m.V_pow;
      else
        fail("unknown symbol '" + t.text + "'", t.pos);
      ++i_;
      int exponent = 1;
      if (peek().kind == Token::Caret) {
        ++i_;
        exponent = parse_exponent();
      }
      *slot += exponent;
      return;
    }
    fail("expected a number or symbol", t.pos);
  }

  Rational parse_rational(bool allow_sign) {
    bool neg = false;
    if (allow_sign && peek().kind == Token::Minus) {
      ++i_;
      neg = true;
    }
    if (peek().kind != Token::Int)
      fail("expected an integer", peek().pos);
    std::int64_t num = peek().value;
    ++i_;
    std::int64_t den = 1;
    if (peek().kind == Token::Slash) {
      ++i_;
      if (peek().kind != Token::Int)
        fail("expected a denominator", peek().pos);
      den = peek().value;
      if (den == 0)
        fail("zero denominator", peek().pos);
      ++i_;
    }
    return Rational(neg ? -num : num, den);
  }

  int parse_exponent() {
    bool neg = false;
    if (peek().kind == Token::Minus) {
      ++i_;
      neg = true;
    }
    if (peek().kind != Token::Int)
      fail("expected an integer exponent", peek().pos);
    const std::int64_t v = peek().value;
    if (v > 1000)
      fail("exponent out of range", peek().pos);
    ++i_;
    return neg ? -static_cast<int>(v) : static_cast<int>(v);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

} // namespace

ScalarField parse_scalar_field(std::string_view text) {
  return Parser(text).field_to_end();
}

OneForm parse_one_form(std::string_view text) {
  return Parser(text).one_form();
}

} // namespace pvforms
