#pragma once

#include <gmpxx.h>

#include <cctype>
#include <concepts>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qlattice/common.hpp"

namespace qlattice {

// ---------------------------------------------------------------------------
// Rational scalars. GMP keeps them canonical (lowest terms, positive
// denominator), which is what makes bit-identical subspace comparison sound.
// ---------------------------------------------------------------------------

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline std::string to_decimal_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw InputError("bad rational literal: " + s);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Cyclotomic scalars: elements of Q(zeta_n) stored as polynomials in zeta of
// degree < phi(n), reduced modulo the n-th cyclotomic polynomial. Conductor 1
// means plain rationals; an element whose non-constant coefficients are all
// zero is demoted to conductor 1 so equal values have equal representations.
// Mixed conductors are only combined when one side is rational.
// ---------------------------------------------------------------------------

namespace detail {

using QPoly = std::vector<Rational>;  // coefficient list, low degree first

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (is_zero(b[j])) continue;
      Rational t = a[i] * b[j];
      r[i + j] += t;
    }
  }
  qpoly_trim(r);
  return r;
}

// Remainder of a modulo m (m monic-ish: leading coefficient invertible).
inline QPoly qpoly_mod(QPoly a, const QPoly& m) {
  qpoly_trim(a);
  ensure(!m.empty(), "qpoly_mod: zero modulus");
  while (a.size() >= m.size()) {
    Rational f = a.back() / m.back();
    std::size_t off = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      Rational t = f * m[i];
      a[off + i] -= t;
    }
    qpoly_trim(a);
  }
  return a;
}

// Exact division, used to peel cyclotomic factors off x^n - 1.
inline QPoly qpoly_divexact(QPoly a, const QPoly& b) {
  qpoly_trim(a);
  ensure(!b.empty(), "qpoly_divexact: zero divisor");
  if (a.empty()) return {};
  ensure(a.size() >= b.size(), "qpoly_divexact: degree mismatch");
  QPoly q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    q[off] = f;
    for (std::size_t i = 0; i < b.size(); ++i) {
      Rational t = f * b[i];
      a[off + i] -= t;
    }
    qpoly_trim(a);
    if (a.empty()) break;
  }
  ensure(a.empty(), "qpoly_divexact: nonzero remainder");
  return q;
}

// Extended gcd over Q[x]; returns (g, s, t) with s*a + t*b = g.
inline std::tuple<QPoly, QPoly, QPoly> qpoly_xgcd(QPoly a, QPoly b) {
  QPoly s0{Rational(1)}, s1{}, t0{}, t1{Rational(1)};
  qpoly_trim(a);
  qpoly_trim(b);
  while (!b.empty()) {
    // a = q*b + r
    QPoly r = a;
    QPoly q(r.size() >= b.size() ? r.size() - b.size() + 1 : 1, Rational(0));
    while (r.size() >= b.size()) {
      Rational f = r.back() / b.back();
      std::size_t off = r.size() - b.size();
      q[off] += f;
      for (std::size_t i = 0; i < b.size(); ++i) {
        Rational t = f * b[i];
        r[off + i] -= t;
      }
      qpoly_trim(r);
    }
    QPoly s2 = s0, t2 = t0;
    {
      QPoly qs = qpoly_mul(q, s1), qt = qpoly_mul(q, t1);
      s2.resize(std::max(s2.size(), qs.size()), Rational(0));
      for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      t2.resize(std::max(t2.size(), qt.size()), Rational(0));
      for (std::size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
      qpoly_trim(s2);
      qpoly_trim(t2);
    }
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return {a, s0, t0};
}

inline int euler_phi(int n) {
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// Phi_n via Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline const QPoly& cyclotomic_polynomial(int n) {
  static std::map<int, QPoly> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<const QPoly&(int)> get = [&](int k) -> const QPoly& {
    auto found = cache.find(k);
    if (found != cache.end()) return found->second;
    QPoly num(k + 1, Rational(0));
    num[0] = Rational(-1);
    num[k] = Rational(1);
    for (int d = 1; d < k; ++d)
      if (k % d == 0) num = qpoly_divexact(std::move(num), get(d));
    return cache.emplace(k, std::move(num)).first->second;
  };
  return get(n);
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_{Rational(0)} {}
  Cyclotomic(int v) : conductor_(1), coeffs_{Rational(v)} {}   // NOLINT
  Cyclotomic(long v) : conductor_(1), coeffs_{Rational(static_cast<signed long>(v))} {}  // NOLINT
  Cyclotomic(const Rational& v) : conductor_(1), coeffs_{v} {}  // NOLINT

  /// Element of Q(zeta_n) with the given coefficient list (low degree first,
  /// length at most phi(n); shorter lists are zero padded).
  Cyclotomic(int conductor, std::vector<Rational> coeffs) {
    require(conductor >= 1, "conductor must be positive");
    detail::QPoly p = std::move(coeffs);
    if (conductor > 1) p = detail::qpoly_mod(std::move(p), detail::cyclotomic_polynomial(conductor));
    detail::qpoly_trim(p);
    if (p.size() <= 1) {
      conductor_ = 1;
      coeffs_ = {p.empty() ? Rational(0) : p[0]};
    } else {
      conductor_ = conductor;
      coeffs_ = std::move(p);
    }
  }

  static Cyclotomic zeta(int n) {
    require(n >= 1, "conductor must be positive");
    std::vector<Rational> c(2, Rational(0));
    c[1] = Rational(1);
    return Cyclotomic(n, std::move(c));
  }

  int conductor() const { return conductor_; }
  bool is_rational() const { return conductor_ == 1; }
  const Rational& rational_part() const { return coeffs_[0]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Coefficient list padded to length phi(n), for serialization.
  std::vector<Rational> padded_coefficients(int conductor) const {
    int width = conductor == 1 ? 1 : detail::euler_phi(conductor);
    require(conductor_ == 1 || conductor_ == conductor,
            "cyclotomic element does not live in the requested field");
    std::vector<Rational> out(static_cast<std::size_t>(width), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i];
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [n, x, y] = promote(a, b);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return Cyclotomic(n, std::move(x));
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [n, x, y] = promote(a, b);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    return Cyclotomic(n, std::move(x));
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (Rational& c : r.coeffs_) c = -c;
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [n, x, y] = promote(a, b);
    return Cyclotomic(n, detail::qpoly_mul(x, y));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }

  Cyclotomic inverse() const {
    require(!is_zero_value(), "division by zero");
    if (conductor_ == 1) return Cyclotomic(Rational(1) / coeffs_[0]);
    auto [g, s, t] = detail::qpoly_xgcd(coeffs_, detail::cyclotomic_polynomial(conductor_));
    (void)t;
    ensure(g.size() == 1 && !is_zero(g[0]), "cyclotomic polynomial not coprime to element");
    for (Rational& c : s) c /= g[0];
    return Cyclotomic(conductor_, std::move(s));
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Total order used only for canonical sorting, not arithmetic meaning.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int c = cmp(a.coeffs_[i], b.coeffs_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  bool is_zero_value() const { return conductor_ == 1 && qlattice::is_zero(coeffs_[0]); }

  std::string str() const {
    if (conductor_ == 1) return to_decimal_string(coeffs_[0]);
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (qlattice::is_zero(coeffs_[i])) continue;
      if (!out.empty()) out += " + ";
      out += to_decimal_string(coeffs_[i]);
      if (i >= 1) out += "*z" + std::to_string(conductor_) + "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static std::tuple<int, detail::QPoly, detail::QPoly> promote(const Cyclotomic& a,
                                                               const Cyclotomic& b) {
    int n;
    if (a.conductor_ == b.conductor_ || b.conductor_ == 1)
      n = a.conductor_;
    else if (a.conductor_ == 1)
      n = b.conductor_;
    else
      throw InputError("cannot mix cyclotomic fields Q(zeta_" + std::to_string(a.conductor_) +
                       ") and Q(zeta_" + std::to_string(b.conductor_) + ")");
    std::size_t width = std::max(a.coeffs_.size(), b.coeffs_.size());
    detail::QPoly x(width, Rational(0)), y(width, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) x[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) y[i] = b.coeffs_[i];
    return {n, std::move(x), std::move(y)};
  }

  int conductor_;
  std::vector<Rational> coeffs_;  // size >= 1; size 1 iff conductor 1
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero_value(); }

// ---------------------------------------------------------------------------
// The scalar concept every templated module is written against.
// ---------------------------------------------------------------------------

template <class K>
concept FieldScalar = requires(K a, K b) {
  { K(0) };
  { K(1) };
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { is_zero(a) } -> std::convertible_to<bool>;
};

inline std::string scalar_to_string(const Rational& x) { return to_decimal_string(x); }
inline std::string scalar_to_string(const Cyclotomic& x) { return x.str(); }

/// Deterministic total order for canonical sorting (no arithmetic meaning).
inline bool scalar_less(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
inline bool scalar_less(const Cyclotomic& a, const Cyclotomic& b) { return a < b; }

/// True when the scalar is a rational number (always for Rational).
inline bool scalar_is_rational(const Rational&) { return true; }
inline bool scalar_is_rational(const Cyclotomic& x) { return x.is_rational(); }

inline Rational scalar_rational_value(const Rational& x) { return x; }
inline Rational scalar_rational_value(const Cyclotomic& x) {
  require(x.is_rational(), "scalar is not rational");
  return x.rational_part();
}

template <FieldScalar K>
K scalar_from_rational(const Rational& x) {
  if constexpr (std::same_as<K, Rational>)
    return x;
  else
    return K(x);
}

}  // namespace qlattice
