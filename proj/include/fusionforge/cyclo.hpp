#pragma once

// Exact arithmetic in cyclotomic fields.  A value is stored at a conductor m
// as rational coordinates over the power basis 1, z, ..., z^(phi(m)-1) where
// z = exp(2*pi*i/m); coordinates are kept reduced modulo the m-th cyclotomic
// polynomial, which makes the representation canonical at a fixed conductor.
// Values at different conductors compare by lifting to the lcm.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fusionforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline unsigned euler_phi(unsigned m) {
  unsigned result = m, n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Coefficients of the m-th cyclotomic polynomial (low degree first, monic).
inline const std::vector<Integer>& cyclotomic_polynomial(unsigned m) {
  static std::map<unsigned, std::vector<Integer>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by the cyclotomic polynomials of all proper divisors
  std::function<std::vector<Integer>(unsigned)> compute =
      [&](unsigned mm) -> std::vector<Integer> {
    std::vector<Integer> poly(mm + 1, 0);
    poly[0] = -1;
    poly[mm] = 1;
    for (unsigned d = 1; d < mm; ++d) {
      if (mm % d != 0) continue;
      auto itd = cache.find(d);
      if (itd == cache.end()) itd = cache.emplace(d, compute(d)).first;
      const std::vector<Integer>& div = itd->second;
      // exact division poly /= div (both monic over Z)
      std::vector<Integer> quot(poly.size() - div.size() + 1, 0);
      std::vector<Integer> rem = poly;
      for (std::size_t k = quot.size(); k-- > 0;) {
        Integer c = rem[k + div.size() - 1];
        quot[k] = c;
        if (c != 0)
          for (std::size_t j = 0; j < div.size(); ++j)
            rem[k + j] -= c * div[j];
      }
      for (const Integer& r : rem)
        if (r != 0) throw std::logic_error("cyclotomic division not exact");
      poly = std::move(quot);
    }
    return poly;
  };
  it = cache.emplace(m, compute(m)).first;
  return it->second;
}

/// Reduces a coefficient vector indexed by exponents 0..m-1 modulo the m-th
/// cyclotomic polynomial; result has phi(m) entries.
inline std::vector<Rational> reduce_mod_cyclotomic(std::vector<Rational> c,
                                                   unsigned m) {
  const auto& phi_poly = cyclotomic_polynomial(m);
  const std::size_t deg = phi_poly.size() - 1; // = phi(m)
  if (c.size() < m) c.resize(m, Rational(0));
  for (std::size_t k = c.size(); k-- > deg;) {
    Rational coeff = c[k];
    if (coeff == 0) continue;
    c[k] = 0;
    // x^k = x^(k-deg) * (x^deg - phi_poly) since phi is monic
    for (std::size_t j = 0; j < deg; ++j)
      c[k - deg + j] -= coeff * Rational(phi_poly[j]);
  }
  c.resize(deg);
  return c;
}

} // namespace detail

class Cyclotomic {
public:
  Cyclotomic() : m_(1), c_{Rational(0)} {}
  Cyclotomic(const Rational& r) : m_(1), c_{r} {}
  Cyclotomic(long v) : m_(1), c_{Rational(v)} {}
  Cyclotomic(const Integer& v) : m_(1), c_{Rational(v)} {}

  /// zeta_m^k.
  static Cyclotomic root_of_unity(long m, long k) {
    if (m <= 0) throw std::invalid_argument("root_of_unity: m must be positive");
    unsigned mu = unsigned(m);
    long kk = ((k % m) + m) % m;
    std::vector<Rational> c(mu, Rational(0));
    c[std::size_t(kk)] = 1;
    return Cyclotomic(mu, detail::reduce_mod_cyclotomic(std::move(c), mu));
  }

  unsigned conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// The value as a rational number, when it is one.
  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_[0];
  }

  /// The value as a rational integer, when it is one.
  std::optional<Integer> as_integer() const {
    auto r = as_rational();
    if (!r) return std::nullopt;
    if (boost::multiprecision::denominator(*r) != 1) return std::nullopt;
    return boost::multiprecision::numerator(*r);
  }

  /// Lifts to a conductor that m divides.
  Cyclotomic lifted_to(unsigned big) const {
    if (big % m_ != 0) throw std::invalid_argument("lift target not a multiple");
    if (big == m_) return *this;
    const unsigned stride = big / m_;
    std::vector<Rational> c(big, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      c[k * stride] = c_[k];
    return Cyclotomic(big, detail::reduce_mod_cyclotomic(std::move(c), big));
  }

  /// Expresses the value at a divisor conductor, when it lies in that
  /// subfield; empty otherwise.
  std::optional<Cyclotomic> reduced_to(unsigned small) const {
    if (m_ % small != 0)
      throw std::invalid_argument("reduction target must divide the conductor");
    if (small == m_) return *this;
    const unsigned phis = detail::euler_phi(small);
    const std::size_t rows = c_.size();
    // columns: lifts of zeta_small^k for k < phi(small)
    std::vector<std::vector<Rational>> a(rows,
                                         std::vector<Rational>(phis + 1, 0));
    for (unsigned k = 0; k < phis; ++k) {
      auto basis = root_of_unity(small, k).lifted_to(m_);
      for (std::size_t r = 0; r < rows; ++r) a[r][k] = basis.c_[r];
    }
    for (std::size_t r = 0; r < rows; ++r) a[r][phis] = c_[r];
    // exact Gaussian elimination
    std::vector<std::size_t> pivot_row(phis, std::size_t(-1));
    std::size_t rank = 0;
    for (unsigned col = 0; col < phis && rank < rows; ++col) {
      std::size_t sel = std::size_t(-1);
      for (std::size_t r = rank; r < rows; ++r)
        if (a[r][col] != 0) {
          sel = r;
          break;
        }
      if (sel == std::size_t(-1)) continue;
      std::swap(a[sel], a[rank]);
      Rational inv = a[rank][col];
      for (auto& v : a[rank]) v /= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || a[r][col] == 0) continue;
        Rational f = a[r][col];
        for (std::size_t j = col; j <= phis; ++j) a[r][j] -= f * a[rank][j];
      }
      pivot_row[col] = rank;
      ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
      if (a[r][phis] != 0) return std::nullopt; // inconsistent: not in subfield
    std::vector<Rational> sol(phis, Rational(0));
    for (unsigned col = 0; col < phis; ++col)
      if (pivot_row[col] != std::size_t(-1)) sol[col] = a[pivot_row[col]][phis];
    return Cyclotomic(small, std::move(sol));
  }

  /// Rewrites at the smallest possible conductor.
  Cyclotomic reduced() const {
    for (unsigned d = 1; d < m_; ++d) {
      if (m_ % d != 0) continue;
      if (auto r = reduced_to(d)) return *r;
    }
    return *this;
  }

  /// Image under the Galois map zeta -> zeta^j, gcd(j, m) = 1.
  Cyclotomic galois(long j) const {
    long jj = ((j % long(m_)) + long(m_)) % long(m_);
    if (std::gcd(unsigned(jj), m_) != 1)
      throw std::invalid_argument("galois exponent not coprime to conductor");
    std::vector<Rational> c(m_, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      c[(k * std::size_t(jj)) % m_] += c_[k];
    return Cyclotomic(m_, detail::reduce_mod_cyclotomic(std::move(c), m_));
  }

  /// Complex conjugate.
  Cyclotomic conjugate() const { return galois(-1); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = std::lcm(a.m_, b.m_);
    Cyclotomic la = a.lifted_to(m), lb = b.lifted_to(m);
    for (std::size_t i = 0; i < la.c_.size(); ++i) la.c_[i] += lb.c_[i];
    return la;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = std::lcm(a.m_, b.m_);
    Cyclotomic la = a.lifted_to(m), lb = b.lifted_to(m);
    for (std::size_t i = 0; i < la.c_.size(); ++i) la.c_[i] -= lb.c_[i];
    return la;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = std::lcm(a.m_, b.m_);
    Cyclotomic la = a.lifted_to(m), lb = b.lifted_to(m);
    std::vector<Rational> prod(m, Rational(0));
    for (std::size_t i = 0; i < la.c_.size(); ++i) {
      if (la.c_[i] == 0) continue;
      for (std::size_t j = 0; j < lb.c_.size(); ++j) {
        if (lb.c_[j] == 0) continue;
        prod[(i + j) % m] += la.c_[i] * lb.c_[j];
      }
    }
    return Cyclotomic(m, detail::reduce_mod_cyclotomic(std::move(prod), m));
  }

  friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    unsigned m = std::lcm(a.m_, b.m_);
    return a.lifted_to(m).c_ == b.lifted_to(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  std::string to_string() const {
    std::string s;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!first) s += " + ";
      first = false;
      s += c_[k].str();
      if (k > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(k);
    }
    if (first) s = "0";
    return s;
  }

private:
  Cyclotomic(unsigned m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {
    c_.resize(detail::euler_phi(m_), Rational(0));
  }

  unsigned m_;
  std::vector<Rational> c_;
};

/// Three-way arithmetic dispatcher (add | mul | sub).
inline Cyclotomic arith(const Cyclotomic& a, const Cyclotomic& b,
                        const std::string& op) {
  if (op == "add") return a + b;
  if (op == "mul") return a * b;
  if (op == "sub") return a - b;
  throw std::invalid_argument("arith op must be add, mul, or sub");
}

} // namespace fusionforge
