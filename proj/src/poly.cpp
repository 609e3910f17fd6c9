#include "hypocone/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypocone/errors.hpp"

namespace hypocone {

RationalC parse_rational_c(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw_model("empty coefficient literal");
  // Split into at most two signed parts; a trailing 'i' marks the imaginary
  // one: "3/4", "-1/2i", "1+2i", "1/3-1/6i".
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '+' &&
        t[i - 1] != '-') {
      parts.push_back(t.substr(start, i - start));
      start = i;
    }
  }
  parts.push_back(t.substr(start));
  if (parts.size() > 2) throw_model("bad coefficient literal: " + text);
  RationalC out;
  for (auto& p : parts) {
    bool imag = !p.empty() && p.back() == 'i';
    if (imag) {
      p.pop_back();
      if (p.empty() || p == "+") p = "1";
      if (p == "-") p = "-1";
      if (!p.empty() && p.back() == '*') p.pop_back();
    }
    Rational r = parse_rational(p);
    if (imag)
      out.im += r;
    else
      out.re += r;
  }
  return out;
}

std::string to_string(const RationalC& z) {
  if (z.is_zero()) return "0";
  std::string out;
  if (!is_zero(z.re)) out += to_string(z.re);
  if (!is_zero(z.im)) {
    if (!out.empty() && sgn(z.im) > 0) out += "+";
    if (z.im == -1)
      out += "-";
    else if (z.im != 1)
      out += to_string(z.im);
    out += "i";
  }
  return out;
}

namespace frame {

namespace {

// Canonical comparison key ignoring the coefficient.
int shape_cmp(const Monomial& a, const Monomial& b) {
  if (a.exponents != b.exponents) return a.exponents < b.exponents ? -1 : 1;
  if (a.harmonics != b.harmonics) return a.harmonics < b.harmonics ? -1 : 1;
  if (a.phase != b.phase) return a.phase < b.phase ? -1 : 1;
  return 0;
}

bool zero_harmonics(const std::vector<int>& h) {
  return std::all_of(h.begin(), h.end(), [](int k) { return k == 0; });
}

// Fixes the sign convention: the first nonzero harmonic is positive
// (cos is even, sin odd); sin with zero harmonics vanishes.
bool canonicalize(Monomial& m) {
  if (zero_harmonics(m.harmonics)) {
    if (m.phase == Phase::sin) return false;  // sin(0) = 0
    return !m.coeff.is_zero();
  }
  for (int k : m.harmonics) {
    if (k > 0) break;
    if (k < 0) {
      for (auto& h : m.harmonics) h = -h;
      if (m.phase == Phase::sin) m.coeff = -m.coeff;
      break;
    }
  }
  return !m.coeff.is_zero();
}

}  // namespace

Poly normalized(int vars, std::vector<Monomial> raw) {
  Poly p(vars);
  for (auto& m : raw) p.add_term(std::move(m));
  return p;
}

void Poly::add_term(Monomial m) {
  if (static_cast<int>(m.exponents.size()) != vars_ ||
      static_cast<int>(m.harmonics.size()) != vars_)
    throw_usage("monomial arity mismatch");
  if (!canonicalize(m)) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Monomial& a, const Monomial& b) { return shape_cmp(a, b) < 0; });
  if (it != terms_.end() && shape_cmp(*it, m) == 0) {
    it->coeff += m.coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(m));
  }
}

Poly Poly::constant(int vars, RationalC c) {
  Monomial m;
  m.coeff = std::move(c);
  m.exponents.assign(vars, 0);
  m.harmonics.assign(vars, 0);
  return normalized(vars, {std::move(m)});
}

Poly Poly::variable(int vars, int axis) {
  Monomial m;
  m.coeff = RationalC(Rational(1));
  m.exponents.assign(vars, 0);
  m.exponents[axis] = 1;
  m.harmonics.assign(vars, 0);
  return normalized(vars, {std::move(m)});
}

Poly Poly::monomial(Monomial m) {
  int vars = static_cast<int>(m.exponents.size());
  return normalized(vars, {std::move(m)});
}

bool Poly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial& m) { return m.coeff.is_real(); });
}

bool Poly::has_trig() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Monomial& m) {
    return !zero_harmonics(m.harmonics);
  });
}

int Poly::max_harmonic() const {
  int h = 0;
  for (const auto& m : terms_)
    for (int k : m.harmonics) h = std::max(h, std::abs(k));
  return h;
}

int Poly::max_exponent_on(int axis) const {
  int e = 0;
  for (const auto& m : terms_) e = std::max(e, m.exponents[axis]);
  return e;
}

Poly Poly::operator+(const Poly& o) const {
  if (vars_ != o.vars_) throw_usage("polynomial arity mismatch");
  Poly out = *this;
  for (const auto& m : o.terms_) out.add_term(m);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& m : out.terms_) m.coeff = -m.coeff;
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const RationalC& c) const {
  if (c.is_zero()) return Poly(vars_);
  Poly out = *this;
  for (auto& m : out.terms_) m.coeff *= c;
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  if (vars_ != o.vars_) throw_usage("polynomial arity mismatch");
  std::vector<Monomial> raw;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<int> expo(vars_);
      for (int i = 0; i < vars_; ++i) expo[i] = a.exponents[i] + b.exponents[i];
      std::vector<int> hsum(vars_), hdiff(vars_);
      for (int i = 0; i < vars_; ++i) {
        hsum[i] = a.harmonics[i] + b.harmonics[i];
        hdiff[i] = a.harmonics[i] - b.harmonics[i];
      }
      RationalC half = a.coeff * b.coeff * RationalC(Rational(1, 2));
      auto push = [&](std::vector<int> h, Phase ph, RationalC c) {
        Monomial m;
        m.coeff = std::move(c);
        m.exponents = expo;
        m.harmonics = std::move(h);
        m.phase = ph;
        raw.push_back(std::move(m));
      };
      if (a.phase == Phase::cos && b.phase == Phase::cos) {
        // cos A cos B = (cos(A-B) + cos(A+B)) / 2
        push(hdiff, Phase::cos, half);
        push(hsum, Phase::cos, half);
      } else if (a.phase == Phase::sin && b.phase == Phase::sin) {
        // sin A sin B = (cos(A-B) - cos(A+B)) / 2
        push(hdiff, Phase::cos, half);
        push(hsum, Phase::cos, -half);
      } else if (a.phase == Phase::sin && b.phase == Phase::cos) {
        // sin A cos B = (sin(A+B) + sin(A-B)) / 2
        push(hsum, Phase::sin, half);
        push(hdiff, Phase::sin, half);
      } else {
        // cos A sin B = (sin(A+B) - sin(A-B)) / 2
        push(hsum, Phase::sin, half);
        push(hdiff, Phase::sin, -half);
      }
    }
  }
  return normalized(vars_, std::move(raw));
}

Poly Poly::derivative(int axis) const {
  std::vector<Monomial> raw;
  for (const auto& m : terms_) {
    if (m.exponents[axis] > 0) {
      Monomial d = m;
      d.coeff *= RationalC(Rational(m.exponents[axis]));
      d.exponents[axis] -= 1;
      raw.push_back(std::move(d));
    }
    if (m.harmonics[axis] != 0) {
      Monomial d = m;
      Rational k(m.harmonics[axis]);
      if (m.phase == Phase::cos) {
        d.phase = Phase::sin;
        d.coeff *= RationalC(-k);
      } else {
        d.phase = Phase::cos;
        d.coeff *= RationalC(k);
      }
      raw.push_back(std::move(d));
    }
  }
  return normalized(vars_, std::move(raw));
}

std::optional<RationalC> Poly::eval_exact(const RatVec& x) const {
  if (static_cast<int>(x.size()) != vars_)
    throw_usage("evaluation point arity mismatch");
  RationalC acc;
  for (const auto& m : terms_) {
    Rational angle(0);
    for (int i = 0; i < vars_; ++i)
      if (m.harmonics[i] != 0) angle += Rational(m.harmonics[i]) * x[i];
    Rational trig;
    if (hypocone::is_zero(angle))
      trig = (m.phase == Phase::cos) ? 1 : 0;
    else
      return std::nullopt;
    if (hypocone::is_zero(trig)) continue;
    Rational mono(1);
    for (int i = 0; i < vars_; ++i)
      for (int e = 0; e < m.exponents[i]; ++e) mono *= x[i];
    acc += m.coeff * RationalC(mono * trig);
  }
  return acc;
}

std::complex<double> Poly::eval(const Eigen::VectorXd& x) const {
  if (x.size() != vars_) throw_usage("evaluation point arity mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& m : terms_) {
    double angle = 0.0;
    for (int i = 0; i < vars_; ++i) angle += m.harmonics[i] * x[i];
    double trig = (m.phase == Phase::cos) ? std::cos(angle) : std::sin(angle);
    double mono = 1.0;
    for (int i = 0; i < vars_; ++i)
      mono *= std::pow(x[i], m.exponents[i]);
    acc += std::complex<double>(to_double(m.coeff.re), to_double(m.coeff.im)) *
           (mono * trig);
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (shape_cmp(terms_[i], o.terms_[i]) != 0) return false;
    if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms_) {
    std::string c = hypocone::to_string(m.coeff);
    if (!first) {
      os << (c[0] == '-' ? " - " : " + ");
      if (c[0] == '-') c = c.substr(1);
    } else if (c == "-1") {
      os << "-";
      c = "1";
    }
    first = false;

    std::vector<std::string> factors;
    bool unit_coeff = (c == "1");
    for (int i = 0; i < vars_; ++i) {
      if (m.exponents[i] == 0) continue;
      std::string f = "x" + std::to_string(i + 1);
      if (m.exponents[i] > 1) f += "^" + std::to_string(m.exponents[i]);
      factors.push_back(f);
    }
    if (!zero_harmonics(m.harmonics)) {
      std::string arg;
      bool afirst = true;
      for (int i = 0; i < vars_; ++i) {
        int k = m.harmonics[i];
        if (k == 0) continue;
        std::string piece;
        if (std::abs(k) != 1) piece += std::to_string(std::abs(k)) + "*";
        piece += "x" + std::to_string(i + 1);
        if (afirst)
          arg += (k < 0 ? "-" : "") + piece;
        else
          arg += (k < 0 ? "-" : "+") + piece;
        afirst = false;
      }
      factors.push_back((m.phase == Phase::cos ? "cos(" : "sin(") + arg + ")");
    }
    if (factors.empty()) {
      os << c;
    } else {
      if (!unit_coeff) {
        bool needs_parens = c.find('+') != std::string::npos ||
                            c.find('i') != std::string::npos ||
                            (c.find('-') != std::string::npos && c[0] != '-');
        os << (needs_parens ? "(" + c + ")" : c) << "*";
      }
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
      }
    }
  }
  return os.str();
}

}  // namespace frame
}  // namespace hypocone
