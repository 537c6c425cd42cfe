#include "hermitesof/poly_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hermitesof/errors.hpp"

namespace hermitesof {

// ---------------------------------------------------------------------------
// MultiPoly printing

std::string to_string(const MultiPoly& p, int digits, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool is_const = total_degree(m) == 0;
    double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (is_const || mag != 1.0) {
      std::snprintf(buf, sizeof buf, "%.*g", digits, mag);
      out += buf;
      if (!is_const) out += "*";
    }
    bool first_var = true;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!first_var) out += "*";
      first_var = false;
      out += var + std::to_string(v + 1);
      if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SystemInstance

void SystemInstance::validate() const {
  const auto n = A.rows();
  if (n < 1 || A.cols() != n) throw InputError(name + ": A must be square and nonempty");
  if (B.rows() != n || B.cols() < 1) {
    throw InputError(name + ": B must have " + std::to_string(n) + " rows and at least one column");
  }
  if (C.cols() != n || C.rows() < 1) {
    throw InputError(name + ": C must have " + std::to_string(n) + " columns and at least one row");
  }
}

// ---------------------------------------------------------------------------
// RealPoly

int RealPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[i] != 0.0) return i;
  }
  return -1;
}

double RealPoly::leading() const {
  const int d = degree();
  return d < 0 ? 0.0 : coeffs[d];
}

double RealPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex RealPoly::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RealPoly RealPoly::derivative(int order) const {
  std::vector<double> c = coeffs;
  for (int r = 0; r < order; ++r) {
    if (c.size() <= 1) return RealPoly({0.0});
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    c = std::move(d);
  }
  return RealPoly(std::move(c));
}

RealPoly RealPoly::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return RealPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// PolyInS

PolyInS::PolyInS(std::vector<MultiPoly> c, int nv) : coeffs(std::move(c)), num_vars(nv) {
  for (auto& p : coeffs) p = p.promoted(nv);
}

PolyInS PolyInS::constant(const RealPoly& p, int num_vars) {
  std::vector<MultiPoly> c;
  c.reserve(p.coeffs.size());
  for (double v : p.coeffs) c.push_back(MultiPoly::constant(num_vars, v));
  return PolyInS(std::move(c), num_vars);
}

int PolyInS::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (!coeffs[i].is_zero()) return i;
  }
  return -1;
}

RealPoly PolyInS::at(std::span<const double> k) const {
  std::vector<double> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i](k);
  return RealPoly(std::move(c));
}

Complex PolyInS::eval(Complex u, std::span<const double> k) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + (*it)(k);
  return acc;
}

ComplexMultiPoly PolyInS::eval(Complex u) const {
  ComplexMultiPoly acc(num_vars);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= u;
    acc += ComplexMultiPoly(*it);
  }
  return acc;
}

MultiPoly PolyInS::eval(double u) const {
  MultiPoly acc(num_vars);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= u;
    acc += *it;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Operations

std::vector<double> stack_columns(const Eigen::MatrixXd& K) {
  std::vector<double> k(static_cast<std::size_t>(K.size()));
  for (Eigen::Index j = 0; j < K.cols(); ++j) {
    for (Eigen::Index i = 0; i < K.rows(); ++i) k[j * K.rows() + i] = K(i, j);
  }
  return k;
}

Eigen::MatrixXd unstack_columns(std::span<const double> k, int m, int p) {
  if (static_cast<int>(k.size()) != m * p) throw InputError("gain vector length must be m*p");
  Eigen::MatrixXd K(m, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < m; ++i) K(i, j) = k[j * m + i];
  }
  return K;
}

PolyInS char_poly(const SystemInstance& sys) {
  sys.validate();
  const int n = sys.order();
  const int m = sys.inputs();
  const int p = sys.outputs();
  const int nv = m * p;

  // Closed-loop matrix A + B K C with symbolic K.
  std::vector<MultiPoly> M(static_cast<std::size_t>(n * n), MultiPoly(nv));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      MultiPoly e = MultiPoly::constant(nv, sys.A(i, j));
      for (int c = 0; c < p; ++c) {
        for (int r = 0; r < m; ++r) {
          const double w = sys.B(i, r) * sys.C(c, j);
          if (w != 0.0) e += MultiPoly::variable(nv, c * m + r, w);
        }
      }
      M[i * n + j] = std::move(e);
    }
  }

  // The determinant is affine in each entry of K and its total degree is
  // bounded by the largest minor of K. Monomials outside that set cancel in
  // the final coefficients, and multiplying by M never lowers a monomial, so
  // they are dropped from the iterates.
  const int max_deg = std::min({m, p, n});
  auto admissible = [max_deg](const Monomial& mono) {
    int d = 0;
    for (int e : mono) {
      if (e > 1) return false;
      d += e;
    }
    return d <= max_deg;
  };

  // Faddeev-LeVerrier: N_j = M N_{j-1} + c_{n-j+1} I, c_{n-j} = -tr(M N_j) / j.
  std::vector<MultiPoly> coeffs(static_cast<std::size_t>(n + 1), MultiPoly(nv));
  coeffs[n] = MultiPoly::constant(nv, 1.0);
  std::vector<MultiPoly> N(static_cast<std::size_t>(n * n), MultiPoly(nv));
  std::vector<MultiPoly> MN(static_cast<std::size_t>(n * n), MultiPoly(nv));
  for (int j = 1; j <= n; ++j) {
    for (int r = 0; r < n; ++r) N[r * n + r] += coeffs[n - j + 1];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        MultiPoly acc(nv);
        for (int l = 0; l < n; ++l) {
          if (M[r * n + l].is_zero() || N[l * n + c].is_zero()) continue;
          acc += M[r * n + l] * N[l * n + c];
        }
        MN[r * n + c] = acc.filtered(admissible);
      }
    }
    MultiPoly trace(nv);
    for (int r = 0; r < n; ++r) trace += MN[r * n + r];
    coeffs[n - j] = trace * (-1.0 / j);
    N.swap(MN);
  }
  return PolyInS(std::move(coeffs), nv);
}

ReImPair split_re_im(const PolyInS& q) {
  const std::size_t len = q.coeffs.size();
  std::vector<MultiPoly> a(len, MultiPoly(q.num_vars));
  std::vector<MultiPoly> b(len, MultiPoly(q.num_vars));
  for (std::size_t i = 0; i < len; ++i) {
    if (i % 2 == 0) {
      b[i] = (i / 2) % 2 == 0 ? q.coeffs[i] : -q.coeffs[i];
    } else {
      a[i] = ((i - 1) / 2) % 2 == 0 ? q.coeffs[i] : -q.coeffs[i];
    }
  }
  return {PolyInS(std::move(a), q.num_vars), PolyInS(std::move(b), q.num_vars)};
}

NumericReIm split_re_im(const RealPoly& q) {
  const std::size_t len = q.coeffs.size();
  std::vector<double> a(len, 0.0), b(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    const double sign = (i / 2) % 2 == 0 ? 1.0 : -1.0;
    if (i % 2 == 0) {
      b[i] = sign * q.coeffs[i];
    } else {
      a[i] = sign * q.coeffs[i];
    }
  }
  return {RealPoly(std::move(a)), RealPoly(std::move(b))};
}

PolyInS differentiate(const PolyInS& p, int order) {
  if (order < 1) throw InputError("derivative order must be >= 1");
  const int len = static_cast<int>(p.coeffs.size());
  if (order >= len) return PolyInS({MultiPoly(p.num_vars)}, p.num_vars);
  std::vector<MultiPoly> out;
  out.reserve(len - order);
  for (int i = order; i < len; ++i) {
    double f = 1.0;
    for (int r = 0; r < order; ++r) f *= static_cast<double>(i - r);
    out.push_back(p.coeffs[i] * f);
  }
  return PolyInS(std::move(out), p.num_vars);
}

double optimal_rho(const RealPoly& q) {
  const int n = q.degree();
  if (n < 1) throw DegenerateInputError("optimal_rho: polynomial must have degree >= 1");
  const double q0 = q.coeffs[0];
  if (q0 == 0.0) throw DegenerateInputError("optimal_rho: zero constant coefficient");
  return std::pow(std::abs(q.coeffs[n]) / std::abs(q0), 1.0 / n);
}

}  // namespace hermitesof
