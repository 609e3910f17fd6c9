#ifndef HYPOCONE_RATIONAL_HPP
#define HYPOCONE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hypocone/errors.hpp"

namespace hypocone {

// Exact rational scalar. All lie_core arithmetic runs on these; doubles are
// derived views, never authoritative.
using Rational = mpq_class;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline double to_double(const Rational& q) { return q.get_d(); }

// Parses "p", "p/q" or decimal strings like "-0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  // strip whitespace
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.empty()) throw_model("empty rational literal");
  if (t[0] == '+') t.erase(t.begin());
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw_model("rational literal mixes '.' and '/': " + text);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits == "" || digits == "-" || digits == "+")
      throw_model("bad rational literal: " + text);
    try {
      mpz_class num(digits, 10);
      mpz_class den(1);
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      Rational r(num, den);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw_model("bad rational literal: " + text);
    }
  }
  try {
    Rational r(t, 10);
    r.canonicalize();
    if (sgn(r.get_den()) == 0) throw_model("zero denominator: " + text);
    return r;
  } catch (const std::invalid_argument&) {
    throw_model("bad rational literal: " + text);
  }
}

inline std::string to_string(const Rational& q) {
  return q.get_str();  // "p" or "p/q", canonical
}

// Complex number with exact rational parts; used for operator coefficients
// and character-valued symbols.
struct RationalC {
  Rational re{0};
  Rational im{0};

  RationalC() = default;
  RationalC(Rational r) : re(std::move(r)) {}
  RationalC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  RationalC operator+(const RationalC& o) const { return {re + o.re, im + o.im}; }
  RationalC operator-(const RationalC& o) const { return {re - o.re, im - o.im}; }
  RationalC operator-() const { return {-re, -im}; }
  RationalC operator*(const RationalC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RationalC& operator+=(const RationalC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalC& operator*=(const RationalC& o) {
    *this = *this * o;
    return *this;
  }
  bool operator==(const RationalC& o) const { return re == o.re && im == o.im; }
};

// "p/q", "p/qi", "p/q+r/si" (and unicode-free minus forms).
RationalC parse_rational_c(const std::string& text);
std::string to_string(const RationalC& z);

}  // namespace hypocone

#endif
