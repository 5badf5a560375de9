#include <gtest/gtest.h>

#include <functional>

#include "nehari/symbol_parser.hpp"

using namespace nehari;

namespace {

cplx eval_at(const TrigPoly2& p, double x, double y) {
  cplx v{};
  for (int m = -p.N(); m <= p.N(); ++m)
    for (int n = -p.N(); n <= p.N(); ++n) v += p(m, n) * std::polar(1.0, m * x + n * y);
  return v;
}

double max_error(const std::string& text, const std::function<cplx(double, double)>& f) {
  const TrigPoly2 p = parse_symbol(text);
  double e = 0.0;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const double x = 0.37 + 0.9 * a, y = -1.1 + 0.83 * b;
      e = std::max(e, std::abs(eval_at(p, x, y) - f(x, y)));
    }
  return e;
}

cplx ex(double t) { return std::polar(1.0, t); }

}  // namespace

TEST(SymbolParser, Monomials) {
  const TrigPoly2 p = parse_symbol("exp(i*x) + 2*exp(-i*y) - 0.5");
  EXPECT_EQ(p.N(), 1);
  EXPECT_EQ(p(1, 0), cplx(1.0));
  EXPECT_EQ(p(0, -1), cplx(2.0));
  EXPECT_EQ(p(0, 0), cplx(-0.5));
  EXPECT_EQ(parse_symbol("conj(exp(i(2x - y)))")(-2, 1), cplx(1.0));
}

TEST(SymbolParser, JuxtapositionAndPrecedence) {
  EXPECT_LT(max_error("2 exp(ix) exp(iy)", [](double x, double y) { return 2.0 * ex(x + y); }), 1e-14);
  EXPECT_LT(max_error("-exp(ix)^2 + 3", [](double x, double) { return 3.0 - ex(2 * x); }), 1e-14);
  EXPECT_LT(max_error("(1 + i) exp(i pi) exp(-3iy)", [](double, double y) { return -(1.0 + I) * ex(-3 * y); }),
            1e-14);
}

TEST(SymbolParser, PowersAgreeWithPointwiseValues) {
  EXPECT_LT(max_error("(exp(ix) + conj(exp(iy)))^3", [](double x, double y) { return std::pow(ex(x) + ex(-y), 3); }),
            1e-12);
  EXPECT_LT(max_error("(0.5 exp(ix) - exp(-2iy))^0", [](double, double) { return cplx(1.0); }), 0.0 + 1e-15);
}

TEST(SymbolParser, BlaschkeFactorsMatchClosedForm) {
  const cplx a = 0.5, b = cplx(0.0, 0.3);
  auto f = [&](double x, double y) {
    return BlaschkeProduct::factor(a, ex(x)) * BlaschkeProduct::factor(b, ex(x)) *
           BlaschkeProduct::factor(cplx(-0.2, 0.1), ex(y));
  };
  EXPECT_LT(max_error("B_x(0.5, 0.3i) B_y(-0.2 + 0.1i)", f), 1e-12);
  EXPECT_LT(max_error("B_x()", [](double, double) { return cplx(1.0); }), 1e-15);
}

TEST(SymbolParser, MalformedInputIsAConfigError) {
  for (const char* bad : {"x", "exp(0.5ix)", "exp(x)", "B_x(1.2)", "B_y(exp(ix))", "1 +", "foo", "exp(ix)^65",
                          "(exp(ix)", "exp(ix) exp(iy))", "x y", "conj(x)", "2^-1"})
    EXPECT_THROW(parse_symbol(bad), ConfigError) << bad;
}

TEST(SymbolParser, OneDimensionalSymbols) {
  const TrigPoly1 f = parse_symbol_1d("exp(2ix) + 0.25 conj(exp(ix))");
  EXPECT_EQ(f(2), cplx(1.0));
  EXPECT_EQ(f(-1), cplx(0.25));
  EXPECT_THROW(parse_symbol_1d("exp(ix) exp(iy)"), ConfigError);
}
