#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hermitesof/multipoly.hpp"
#include "hermitesof/system.hpp"

namespace hermitesof {

using Complex = std::complex<double>;

/// Univariate polynomial with numeric real coefficients, ascending powers.
struct RealPoly {
  std::vector<double> coeffs;

  RealPoly() = default;
  explicit RealPoly(std::vector<double> c) : coeffs(std::move(c)) {}

  /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  double leading() const;
  double operator()(double x) const;
  Complex operator()(Complex x) const;
  RealPoly derivative(int order = 1) const;

  /// Monic polynomial with the given roots. Imaginary round-off of
  /// conjugate-closed root lists is discarded.
  static RealPoly from_roots(std::span<const Complex> roots);
};

/// Polynomial in the frequency variable (s or u) whose coefficients are
/// polynomials in the gain vector k. coeffs[i] multiplies the i-th power.
struct PolyInS {
  std::vector<MultiPoly> coeffs;
  int num_vars = 0;

  PolyInS() = default;
  PolyInS(std::vector<MultiPoly> c, int nv);

  /// Lift a numeric polynomial into a gain-free PolyInS.
  static PolyInS constant(const RealPoly& p, int num_vars = 0);

  int degree() const;
  const MultiPoly& operator[](int i) const { return coeffs.at(i); }

  /// Numeric polynomial at a fixed gain vector.
  RealPoly at(std::span<const double> k) const;

  /// Horner evaluation at numeric (u, k).
  Complex eval(Complex u, std::span<const double> k) const;

  /// Horner evaluation at numeric u with symbolic k.
  ComplexMultiPoly eval(Complex u) const;
  MultiPoly eval(double u) const;
};

/// a(u) = Im q(ju), b(u) = Re q(ju).
struct ReImPair {
  PolyInS a;
  PolyInS b;
};

struct NumericReIm {
  RealPoly a;
  RealPoly b;
};

/// det(sI - A - BKC) with K symbolic; k = vec(K) stacked column-wise,
/// so k index j*m + i holds K(i, j).
PolyInS char_poly(const SystemInstance& sys);

ReImPair split_re_im(const PolyInS& q);
NumericReIm split_re_im(const RealPoly& q);

/// order-th derivative in the frequency variable; order >= 1.
PolyInS differentiate(const PolyInS& p, int order = 1);

/// Frequency scaling that balances |q_0| and |q_n|: (|q_n| / |q_0|)^(1/n).
double optimal_rho(const RealPoly& q);

/// Column-stacked gain vector of an m x p gain matrix.
std::vector<double> stack_columns(const Eigen::MatrixXd& K);
Eigen::MatrixXd unstack_columns(std::span<const double> k, int m, int p);

}  // namespace hermitesof
