#include "nlb/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace nlb {

namespace {

struct Term {
  double coef = 1.0;
  int kind = 0;  // 0 constant, 1 sin, 2 cos
  double wavenumber = 1.0;
};

struct Parser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression error at position " + std::to_string(pos) +
                                ": " + what + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_number() {
    skip_ws();
    return pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.');
  }

  double number() {
    skip_ws();
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) fail("expected a number");
    pos += static_cast<size_t>(end - start);
    return v;
  }

  int trig_kind() {
    skip_ws();
    if (text.compare(pos, 3, "sin") == 0) {
      pos += 3;
      return 1;
    }
    if (text.compare(pos, 3, "cos") == 0) {
      pos += 3;
      return 2;
    }
    return 0;
  }

  Term term() {
    Term t;
    bool have_coef = false;
    if (peek_number()) {
      t.coef = number();
      have_coef = true;
      eat('*');
    }
    const int kind = trig_kind();
    if (kind == 0) {
      if (!have_coef) fail("expected a number, sin, or cos");
      return t;  // pure constant
    }
    t.kind = kind;
    if (!eat('(')) fail("expected '(' after sin/cos");
    if (peek_number()) {
      t.wavenumber = number();
      eat('*');
    }
    if (!eat('x')) fail("expected 'x' inside sin/cos");
    if (!eat(')')) fail("expected ')'");
    return t;
  }

  std::vector<Term> parse() {
    std::vector<Term> terms;
    double sign = 1.0;
    if (eat('-')) sign = -1.0;
    else eat('+');
    for (;;) {
      Term t = term();
      t.coef *= sign;
      terms.push_back(t);
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+')) sign = 1.0;
      else if (eat('-')) sign = -1.0;
      else fail("expected '+' or '-'");
    }
    return terms;
  }
};

}  // namespace

std::function<double(double)> parse_initial_expression(const std::string& text) {
  Parser p{text};
  const std::vector<Term> terms = p.parse();
  return [terms](double x) {
    double v = 0.0;
    for (const auto& t : terms) {
      switch (t.kind) {
        case 0: v += t.coef; break;
        case 1: v += t.coef * std::sin(t.wavenumber * x); break;
        case 2: v += t.coef * std::cos(t.wavenumber * x); break;
      }
    }
    return v;
  };
}

bool looks_like_expression(const std::string& text) {
  if (text.find("sin") != std::string::npos) return true;
  if (text.find("cos") != std::string::npos) return true;
  for (char c : text)
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '.') return true;
  return false;
}

}  // namespace nlb
