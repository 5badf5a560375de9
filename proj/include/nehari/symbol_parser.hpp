#ifndef NEHARI_SYMBOL_PARSER_HPP
#define NEHARI_SYMBOL_PARSER_HPP

// Symbol expressions on T^2.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (['*'] power)*         juxtaposition multiplies
//   unary   := '-' unary | '+' unary | power
//   power   := primary ['^' integer]
//   primary := number | 'i' | 'pi' | 'x' | 'y' | '(' expr ')'
//            | 'exp' '(' expr ')' | 'conj' '(' expr ')'
//            | 'B_x' '(' zeros ')' | 'B_y' '(' zeros ')'
//   zeros   := expr (',' expr)*             constants in the open disk
//
// x and y may appear only inside exp, whose argument must reduce to
// c + i(m x + n y) with integers m, n.  B_x(a, ...) is the Blaschke product
// in x with those zeros, expanded to 1e-15 in l^1.

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <cmath>
#include <string>
#include <vector>

#include "blaschke.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "model.hpp"

namespace nehari {

namespace detail {

/// Either an affine form c0 + cx x + cy y, or a trigonometric polynomial.
struct SymbolValue {
  bool affine = true;
  cplx c0{}, cx{}, cy{};
  TrigPoly2 p;

  static SymbolValue constant(cplx c) { return {true, c, {}, {}, {}}; }
  bool is_constant() const { return affine && cx == cplx{} && cy == cplx{}; }
};

class SymbolParser {
 public:
  explicit SymbolParser(std::string s) : s_(std::move(s)) {}

  TrigPoly2 parse() {
    SymbolValue v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return to_poly(v).trimmed();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("symbol: " + what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool keyword(const char* k) {
    skip();
    const std::string w(k);
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'i' || c == 'x' ||
           c == 'y' || c == 'e' || c == 'c' || c == 'B' || c == 'p';
  }

  TrigPoly2 to_poly(const SymbolValue& v) const {
    if (!v.affine) return v.p;
    if (!v.is_constant()) throw ConfigError("symbol: x and y may appear only inside exp(...) in \"" + s_ + "\"");
    return TrigPoly2::constant(v.c0);
  }

  SymbolValue add(const SymbolValue& a, const SymbolValue& b, double sign) const {
    if (a.affine && b.affine) return {true, a.c0 + sign * b.c0, a.cx + sign * b.cx, a.cy + sign * b.cy, {}};
    TrigPoly2 r = to_poly(a);
    if (sign > 0) r += to_poly(b);
    else r -= to_poly(b);
    return {false, {}, {}, {}, r};
  }

  SymbolValue mul(const SymbolValue& a, const SymbolValue& b) const {
    if (a.affine && b.affine) {
      if (a.is_constant()) return {true, a.c0 * b.c0, a.c0 * b.cx, a.c0 * b.cy, {}};
      if (b.is_constant()) return {true, a.c0 * b.c0, a.cx * b.c0, a.cy * b.c0, {}};
      throw ConfigError("symbol: product of two affine forms in x, y in \"" + s_ + "\"");
    }
    if (a.is_constant()) return {false, {}, {}, {}, b.p * a.c0};
    if (b.is_constant()) return {false, {}, {}, {}, a.p * b.c0};
    return {false, {}, {}, {}, multiply(to_poly(a), to_poly(b))};
  }

  SymbolValue expr() {
    SymbolValue v = term();
    for (;;) {
      if (eat('+')) v = add(v, term(), 1.0);
      else if (eat('-')) v = add(v, term(), -1.0);
      else return v;
    }
  }

  SymbolValue term() {
    SymbolValue v = unary();
    for (;;) {
      if (eat('*')) v = mul(v, power());
      else if (starts_primary()) v = mul(v, power());
      else return v;
    }
  }

  SymbolValue power() {
    SymbolValue v = primary();
    if (!eat('^')) return v;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const int k = std::stoi(s_.substr(start, pos_ - start));
    if (k > 64) fail("exponent too large");
    SymbolValue r = SymbolValue::constant(1.0);
    for (int j = 0; j < k; ++j) r = mul(r, v);
    return r;
  }

  SymbolValue unary() {
    if (eat('-')) return mul(SymbolValue::constant(-1.0), unary());
    if (eat('+')) return unary();
    return power();
  }

  SymbolValue number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return SymbolValue::constant(v);
  }

  std::vector<cplx> zeros() {
    expect('(');
    std::vector<cplx> z;
    if (eat(')')) return z;
    do {
      const SymbolValue v = expr();
      if (!v.is_constant()) fail("Blaschke zeros must be constants");
      z.push_back(v.c0);
    } while (eat(','));
    expect(')');
    return z;
  }

  SymbolValue blaschke(Axis axis) {
    const std::size_t at = pos_;
    const std::vector<cplx> z = zeros();
    for (cplx a : z)
      if (!(std::abs(a) < 1.0)) {
        pos_ = at;
        fail("Blaschke zero outside the open disk");
      }
    const BlaschkeProduct b(z);
    return {false, {}, {}, {}, lift(coeffs(b, series_degree(b)), axis)};
  }

  SymbolValue exponential() {
    expect('(');
    const SymbolValue a = expr();
    expect(')');
    if (!a.affine) fail("exp argument must be affine in x and y");
    const double m = (a.cx / I).real(), n = (a.cy / I).real();
    const double mi = std::round(m), ni = std::round(n);
    if (std::abs((a.cx / I).imag()) > 1e-12 || std::abs((a.cy / I).imag()) > 1e-12 || std::abs(m - mi) > 1e-12 ||
        std::abs(n - ni) > 1e-12)
      fail("exp argument must be i(m x + n y) with integer m, n");
    const int M = static_cast<int>(mi), Nn = static_cast<int>(ni);
    TrigPoly2 p(std::max(std::abs(M), std::abs(Nn)));
    p(M, Nn) = std::exp(a.c0);
    return {false, {}, {}, {}, p};
  }

  SymbolValue primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (eat('(')) {
      SymbolValue v = expr();
      expect(')');
      return v;
    }
    if (keyword("exp")) return exponential();
    if (keyword("conj")) {
      expect('(');
      const SymbolValue v = expr();
      expect(')');
      if (v.affine) {
        if (!v.is_constant()) fail("conj of an affine form in x and y");
        return SymbolValue::constant(std::conj(v.c0));
      }
      return {false, {}, {}, {}, conjugate(v.p)};
    }
    if (keyword("B_x")) return blaschke(Axis::x);
    if (keyword("B_y")) return blaschke(Axis::y);
    if (keyword("pi")) return SymbolValue::constant(std::numbers::pi);
    if (eat('i')) return SymbolValue::constant(I);
    if (eat('x')) return {true, {}, 1.0, {}, {}};
    if (eat('y')) return {true, {}, {}, 1.0, {}};
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline TrigPoly2 parse_symbol(const std::string& text) { return detail::SymbolParser(text).parse(); }

/// For symbols of x alone.
inline TrigPoly1 parse_symbol_1d(const std::string& text) {
  const TrigPoly2 p = parse_symbol(text);
  TrigPoly1 out(p.N());
  for (int m = -p.N(); m <= p.N(); ++m)
    for (int n = -p.N(); n <= p.N(); ++n) {
      if (n != 0 && p(m, n) != cplx{}) throw ConfigError("symbol: \"" + text + "\" depends on y");
      if (n == 0) out(m) = p(m, 0);
    }
  return out;
}

}  // namespace nehari

#endif
