#pragma once

// Text form of algebra elements.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' signed-int)?
//   atom   := rational | 'i' | 'q' '[' int ',' int ']' | 'U' int
//           | 'adj' '(' expr ')' | '(' expr ')'
//
// Generator and phase indices are 1-based. render_element() emits the
// canonical normal form, terms sorted by monomial exponent vector, so
// parse_element(render_element(x)) == x.

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>

#include "nclc/algebra.hpp"

namespace nclc {

namespace detail {

class ElementParser {
 public:
  ElementParser(std::string_view text, const Algebra& alg) : text_(text), alg_(alg) {}

  AlgebraElement parse() {
    AlgebraElement r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' at end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    if (!at_digit()) fail("expected a number");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long index() {
    std::string d = digits();
    if (d.size() > 9) fail("index too large");
    return std::stol(d);
  }

  int signed_int() {
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    std::string d = digits();
    if (d.size() > 9) fail("exponent too large");
    int v = std::stoi(d);
    return neg ? -v : v;
  }

  AlgebraElement expr() {
    AlgebraElement r(alg_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    AlgebraElement t = term();
    r = negate ? -t : t;
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else break;
    }
    return r;
  }

  AlgebraElement term() {
    AlgebraElement r = factor();
    while (accept('*')) r = r * factor();
    return r;
  }

  AlgebraElement factor() {
    std::size_t at = pos_;
    AlgebraElement base = atom();
    if (!accept('^')) return base;
    int e = signed_int();
    if (e < 0) {
      if (!is_monomial(base)) {
        pos_ = at;
        fail("negative power of a non-monomial");
      }
      base = invert(base);
      e = -e;
    }
    AlgebraElement r = AlgebraElement::one(alg_);
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
  }

  AlgebraElement atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        den = digits();
        if (den.find_first_not_of('0') == std::string::npos) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      Rational q(num + "/" + den);
      q.canonicalize();
      return AlgebraElement::scalar(alg_, Complex(q));
    }
    if (c == '(') {
      ++pos_;
      AlgebraElement r = expr();
      expect(')');
      return r;
    }
    if (text_.substr(pos_, 3) == "adj") {
      pos_ += 3;
      expect('(');
      AlgebraElement r = expr();
      expect(')');
      return star(r);
    }
    if (c == 'i') {
      ++pos_;
      return AlgebraElement::scalar(alg_, Complex::i());
    }
    if (c == 'U') {
      ++pos_;
      std::size_t at = pos_;
      long g = index();
      if (g < 1 || static_cast<std::size_t>(g) > alg_.n) {
        pos_ = at;
        fail("generator U" + std::to_string(g) + " out of range");
      }
      return AlgebraElement::generator(alg_, static_cast<std::size_t>(g - 1));
    }
    if (c == 'q') {
      ++pos_;
      expect('[');
      std::size_t at = pos_;
      long a = index();
      expect(',');
      long b = index();
      expect(']');
      auto n = static_cast<long>(alg_.n);
      if (a < 1 || b < 1 || a > n || b > n) {
        pos_ = at;
        fail("phase symbol index out of range");
      }
      return AlgebraElement::phase(alg_, static_cast<std::size_t>(a - 1),
                                   static_cast<std::size_t>(b - 1));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Algebra alg_;
  std::size_t pos_ = 0;
};

inline void append_power(std::string& out, const std::string& base, int power) {
  if (power == 0) return;
  if (!out.empty()) out += '*';
  out += base;
  if (power != 1) out += "^" + std::to_string(power);
}

// Phase and monomial factors for one term, e.g. "q[1,2]^-1*U1*U3^2".
inline std::string render_factors(const Algebra& alg, const Exponents& phase,
                                  const Exponents& monomial) {
  std::string out;
  for (std::size_t a = 0; a < alg.n; ++a)
    for (std::size_t b = a + 1; b < alg.n; ++b)
      append_power(out, "q[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]",
                   phase.empty() ? 0 : phase[alg.pair_index(a, b)]);
  for (std::size_t g = 0; g < monomial.size(); ++g)
    append_power(out, "U" + std::to_string(g + 1), monomial[g]);
  return out;
}

struct SignedText {
  bool negative = false;
  std::string text;
};

// c * factors with the sign pulled out where the coefficient allows it.
inline SignedText render_scaled(const Complex& c, const std::string& factors) {
  SignedText r;
  std::string coeff;
  if (c.is_real() || c.is_imaginary()) {
    Rational mag = c.is_real() ? c.re() : c.im();
    r.negative = sgn(mag) < 0;
    mag = abs(mag);
    bool imaginary = !c.is_real();
    if (mag != 1) coeff = mag.get_str();
    if (imaginary) coeff += coeff.empty() ? "i" : "*i";
  } else {
    Rational im = c.im();
    coeff = "(" + c.re().get_str() + (sgn(im) < 0 ? " - " : " + ");
    Rational mag = abs(im);
    coeff += (mag == 1 ? std::string("i") : mag.get_str() + "*i") + ")";
  }
  if (coeff.empty() && factors.empty()) r.text = "1";
  else if (coeff.empty()) r.text = factors;
  else if (factors.empty()) r.text = coeff;
  else r.text = coeff + "*" + factors;
  return r;
}

inline void join_signed(std::string& out, const SignedText& t) {
  if (out.empty()) out = t.negative ? "-" + t.text : t.text;
  else out += (t.negative ? " - " : " + ") + t.text;
}

}  // namespace detail

inline AlgebraElement parse_element(std::string_view text, const Algebra& alg) {
  return detail::ElementParser(text, alg).parse();
}

inline std::string render_element(const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  const Algebra& alg = x.algebra();
  const Exponents no_phase(alg.pair_count(), 0);
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (c.is_single_term()) {
      const auto& [e, z] = *c.terms().begin();
      detail::join_signed(out, detail::render_scaled(z, detail::render_factors(alg, e, k)));
      continue;
    }
    std::string inner;
    for (const auto& [e, z] : c.terms())
      detail::join_signed(inner, detail::render_scaled(z, detail::render_factors(alg, e, {})));
    std::string monomial = detail::render_factors(alg, no_phase, k);
    detail::SignedText t{false, "(" + inner + ")" + (monomial.empty() ? "" : "*" + monomial)};
    detail::join_signed(out, t);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const AlgebraElement& x) {
  return os << render_element(x);
}

}  // namespace nclc
