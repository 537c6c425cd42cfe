#include "hermitesof/stability.hpp"

#include <algorithm>
#include <cmath>

#include "hermitesof/errors.hpp"

namespace hermitesof {
namespace {

// Parlett-Reinsch style balancing by powers of two; companion matrices of
// badly scaled polynomials otherwise lose most of their digits.
void balance(Eigen::MatrixXd& M) {
  const auto n = M.rows();
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = M.row(i).lpNorm<1>() - std::abs(M(i, i));
      const double col = M.col(i).lpNorm<1>() - std::abs(M(i, i));
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double f = std::ldexp(1.0, exponent);
      if (col * f + row / f < 0.95 * (col + row)) {
        M.col(i) *= f;
        M.row(i) /= f;
        changed = true;
      }
    }
  }
}

Complex newton_polish(const RealPoly& q, const RealPoly& dq, Complex z) {
  const Complex f = q(z);
  const Complex df = dq(z);
  if (df == Complex(0.0)) return z;
  const Complex candidate = z - f / df;
  return std::abs(q(candidate)) < std::abs(f) ? candidate : z;
}

}  // namespace

std::vector<Complex> roots(const RealPoly& q) {
  const int n = q.degree();
  if (n < 1) throw DegenerateInputError("roots: polynomial must have degree >= 1");
  double scale = 0.0;
  for (int i = 0; i <= n; ++i) scale = std::max(scale, std::abs(q.coeffs[i]));
  const double lead = q.coeffs[n];
  if (std::abs(lead) <= 1e-14 * scale) throw DegenerateInputError("roots: leading coefficient is numerically zero");

  if (n == 1) return {Complex(-q.coeffs[0] / lead, 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.coeffs[i] / lead;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw DegenerateInputError("roots: eigenvalue iteration failed");

  const RealPoly dq = q.derivative();
  std::vector<Complex> out;
  out.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex z = solver.eigenvalues()(i);
    z = newton_polish(q, dq, z);
    out.push_back(z);
  }
  return out;
}

HurwitzResult is_hurwitz(const RealPoly& q) {
  const auto r = roots(q);
  double margin = -std::numeric_limits<double>::infinity();
  for (const Complex& z : r) margin = std::max(margin, z.real());
  return {margin < 0.0, margin};
}

RouthResult routh_hurwitz(const RealPoly& q) {
  const int n = q.degree();
  if (n < 1) throw DegenerateInputError("routh_hurwitz: polynomial must have degree >= 1");
  const double sign = q.coeffs[n] < 0 ? -1.0 : 1.0;
  const int width = n / 2 + 1;

  // Rows hold descending-power coefficients a_n, a_{n-2}, ... and a_{n-1}, a_{n-3}, ...
  std::vector<double> upper(width, 0.0), lower(width, 0.0);
  for (int i = 0; i <= n; ++i) {
    const int power = n - i;
    (i % 2 == 0 ? upper : lower)[i / 2] = sign * q.coeffs[power];
  }

  RouthResult result;
  auto row_max = [](const std::vector<double>& r) {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
  };
  bool sign_change = upper[0] <= 0.0;
  for (int row = 1; row <= n; ++row) {
    const double scale = std::max(row_max(upper), row_max(lower));
    if (row_max(lower) <= 1e-13 * scale) {
      // Entire row vanishes: roots symmetric about the origin, not Hurwitz.
      result.stable = false;
      return result;
    }
    if (std::abs(lower[0]) <= 1e-13 * scale) {
      lower[0] = 1e-9 * scale;
      result.inconclusive = true;
    }
    if (lower[0] < 0.0) sign_change = true;
    std::vector<double> next(width, 0.0);
    for (int j = 0; j + 1 < width; ++j) {
      next[j] = (lower[0] * upper[j + 1] - upper[0] * lower[j + 1]) / lower[0];
    }
    upper = std::move(lower);
    lower = std::move(next);
  }
  result.stable = !sign_change && !result.inconclusive;
  return result;
}

RealPoly build_target(const std::vector<Complex>& open_loop_poles, const TargetSpec& spec) {
  std::vector<Complex> target;
  if (spec.mode == TargetSpec::Mode::kExplicitRoots) {
    if (spec.roots.empty()) throw InputError("build_target: explicit root list is empty");
    NodeSet check(spec.roots);  // throws unless closed under conjugation
    target = spec.roots;
  } else {
    if (open_loop_poles.empty()) throw InputError("build_target: pole list is empty");
    if (!(spec.shift < 0.0)) throw InputError("build_target: shift must be negative");
    for (const Complex& z : open_loop_poles) {
      target.push_back(z.real() > -kMarginalPole ? Complex(spec.shift, z.imag()) : z);
    }
  }
  return RealPoly::from_roots(target);
}

std::vector<Complex> roots_of_parity_poly(const RealPoly& p) {
  const int d = p.degree();
  if (d < 0) throw DegenerateInputError("roots_of_parity_poly: zero polynomial");
  bool has_even = false, has_odd = false;
  for (int i = 0; i <= d; ++i) {
    if (p.coeffs[i] == 0.0) continue;
    (i % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) throw InputError("roots_of_parity_poly: polynomial is neither even nor odd");

  const int offset = has_odd ? 1 : 0;
  std::vector<double> reduced;
  for (int i = offset; i <= d; i += 2) reduced.push_back(p.coeffs[i]);
  RealPoly r(std::move(reduced));

  std::vector<Complex> out;
  if (offset == 1) out.emplace_back(0.0, 0.0);
  if (r.degree() >= 1) {
    for (const Complex& w : roots(r)) {
      Complex u = std::sqrt(w);
      if (w.imag() == 0.0 && w.real() < 0.0) u = Complex(0.0, std::sqrt(-w.real()));
      out.push_back(u);
      out.push_back(-u);
    }
  }
  return out;
}

NodeSet nodes_from_target(const RealPoly& target, NodePart part) {
  const int n = target.degree();
  if (n < 1) throw DegenerateInputError("nodes_from_target: target degree must be >= 1");
  const NumericReIm parts = split_re_im(target);
  if (part == NodePart::kAuto) part = n % 2 == 1 ? NodePart::kImag : NodePart::kReal;
  const RealPoly& p = part == NodePart::kImag ? parts.a : parts.b;
  if (p.degree() != n) {
    throw NodeCountError("nodes_from_target: " + to_string(part) + " part has degree " + std::to_string(p.degree()) +
                         ", short of " + std::to_string(n) + " nodes");
  }
  const std::vector<Complex> r = roots_of_parity_poly(p);
  return NodeSet(r);
}

bool interlacing_check(const NumericReIm& pair) {
  if (pair.a.degree() < 0 || pair.b.degree() < 0) throw InputError("interlacing_check: both parts must be nonzero");
  struct Tagged {
    double x;
    int part;
  };
  std::vector<Tagged> all;
  auto collect = [&](const RealPoly& p, int tag) {
    if (p.degree() < 1) return true;
    for (const Complex& z : roots_of_parity_poly(p)) {
      if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z))) return false;
      all.push_back({z.real(), tag});
    }
    return true;
  };
  if (!collect(pair.a, 0) || !collect(pair.b, 1)) return false;
  std::sort(all.begin(), all.end(), [](const Tagged& l, const Tagged& r) { return l.x < r.x; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].part == all[i - 1].part) return false;
    if (all[i].x - all[i - 1].x <= 1e-9 * (1.0 + std::abs(all[i].x))) return false;
  }
  return true;
}

}  // namespace hermitesof
