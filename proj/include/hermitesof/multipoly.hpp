#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hermitesof {

/// Exponent vector over the gain variables k_1..k_N.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

/// Graded order: lower total degree first; within a degree, lexicographically
/// larger exponent vectors first (k1*k2 before k2^2).
struct GradedOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    const int dx = total_degree(x);
    const int dy = total_degree(y);
    if (dx != dy) return dx < dy;
    return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
  }
};

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Sparse multivariate polynomial in the gain variables with real or complex
/// coefficients. Zero coefficients are never stored.
///
/// A polynomial over zero variables is a plain constant and combines with a
/// polynomial over any number of variables.
template <class Scalar>
class BasicMultiPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedOrder>;

  BasicMultiPoly() = default;
  explicit BasicMultiPoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
  }

  template <class Other>
  explicit BasicMultiPoly(const BasicMultiPoly<Other>& other) : num_vars_(other.num_vars()) {
    for (const auto& [m, c] : other.terms()) terms_.emplace(m, Scalar(c));
  }

  static BasicMultiPoly constant(int num_vars, Scalar c) {
    BasicMultiPoly p(num_vars);
    p.add_term(Monomial(num_vars, 0), c);
    return p;
  }

  static BasicMultiPoly variable(int num_vars, int index, Scalar coef = Scalar(1)) {
    if (index < 0 || index >= num_vars) throw std::out_of_range("variable index");
    Monomial m(num_vars, 0);
    m[index] = 1;
    BasicMultiPoly p(num_vars);
    p.add_term(std::move(m), coef);
    return p;
  }

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Scalar constant_term() const { return coefficient(Monomial(num_vars_, 0)); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  void add_term(Monomial m, Scalar c) {
    if (static_cast<int>(m.size()) != num_vars_) throw std::invalid_argument("monomial length mismatch");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  /// Evaluate at a numeric gain vector.
  Scalar operator()(std::span<const double> k) const {
    if (!terms_.empty() && static_cast<int>(k.size()) != num_vars_) {
      throw std::invalid_argument("gain vector length mismatch");
    }
    Scalar sum(0);
    for (const auto& [m, c] : terms_) {
      double prod = 1.0;
      for (int v = 0; v < num_vars_; ++v) {
        if (m[v] != 0) prod *= std::pow(k[v], m[v]);
      }
      sum += c * prod;
    }
    return sum;
  }

  BasicMultiPoly partial(int var) const {
    if (var < 0 || var >= num_vars_) throw std::out_of_range("variable index");
    BasicMultiPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      --d[var];
      out.add_term(std::move(d), c * Scalar(m[var]));
    }
    return out;
  }

  /// Keep only terms for which `keep(monomial)` holds.
  template <class Pred>
  BasicMultiPoly filtered(Pred keep) const {
    BasicMultiPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      if (keep(m)) out.terms_.emplace_hint(out.terms_.end(), m, c);
    }
    return out;
  }

  /// Largest coefficient magnitude; 0 for the zero polynomial.
  double max_abs_coefficient() const {
    double mx = 0.0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, static_cast<double>(std::abs(c)));
    return mx;
  }

  BasicMultiPoly promoted(int num_vars) const {
    if (num_vars == num_vars_) return *this;
    if (num_vars_ != 0) throw std::invalid_argument("incompatible variable counts");
    BasicMultiPoly out(num_vars);
    for (const auto& [m, c] : terms_) out.add_term(Monomial(num_vars, 0), c);
    return out;
  }

  BasicMultiPoly operator-() const {
    BasicMultiPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  BasicMultiPoly& operator+=(const BasicMultiPoly& rhs) { return accumulate(rhs, Scalar(1)); }
  BasicMultiPoly& operator-=(const BasicMultiPoly& rhs) { return accumulate(rhs, Scalar(-1)); }

  BasicMultiPoly& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = (it->second == Scalar(0)) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend BasicMultiPoly operator+(BasicMultiPoly a, const BasicMultiPoly& b) { return a += b; }
  friend BasicMultiPoly operator-(BasicMultiPoly a, const BasicMultiPoly& b) { return a -= b; }
  friend BasicMultiPoly operator*(BasicMultiPoly a, Scalar s) { return a *= s; }
  friend BasicMultiPoly operator*(Scalar s, BasicMultiPoly a) { return a *= s; }

  friend BasicMultiPoly operator*(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    const int nv = common_vars(a, b);
    const BasicMultiPoly& x = a;
    const BasicMultiPoly& y = b;
    BasicMultiPoly out(nv);
    Monomial m(nv, 0);
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) {
        for (int v = 0; v < nv; ++v) {
          m[v] = (v < x.num_vars_ ? mx[v] : 0) + (v < y.num_vars_ ? my[v] : 0);
        }
        out.add_term(m, cx * cy);
      }
    }
    return out;
  }

  friend bool operator==(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.num_vars_ != b.num_vars_) {
      const int nv = common_vars(a, b);
      return a.promoted(nv).terms_ == b.promoted(nv).terms_;
    }
    return a.terms_ == b.terms_;
  }

 private:
  static int common_vars(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    if (a.num_vars_ == b.num_vars_) return a.num_vars_;
    if (a.num_vars_ == 0) return b.num_vars_;
    if (b.num_vars_ == 0) return a.num_vars_;
    throw std::invalid_argument("incompatible variable counts");
  }

  BasicMultiPoly& accumulate(const BasicMultiPoly& rhs, Scalar sign) {
    const int nv = common_vars(*this, rhs);
    if (nv != num_vars_) *this = promoted(nv);
    const BasicMultiPoly& r = rhs.num_vars_ == nv ? rhs : rhs.promoted(nv);
    for (const auto& [m, c] : r.terms_) add_term(m, sign * c);
    return *this;
  }

  int num_vars_ = 0;
  TermMap terms_;
};

using MultiPoly = BasicMultiPoly<double>;
using ComplexMultiPoly = BasicMultiPoly<std::complex<double>>;

inline MultiPoly real_part(const ComplexMultiPoly& p) {
  MultiPoly out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.real());
  return out;
}

inline MultiPoly imag_part(const ComplexMultiPoly& p) {
  MultiPoly out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.imag());
  return out;
}

inline ComplexMultiPoly conj(const ComplexMultiPoly& p) {
  ComplexMultiPoly out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, std::conj(c));
  return out;
}

/// Human-readable form in graded order, e.g. "-13*k2 - 5*k1*k2 + k2^2".
/// Coefficients use `digits` significant digits.
std::string to_string(const MultiPoly& p, int digits = 8, const std::string& var = "k");

}  // namespace hermitesof
