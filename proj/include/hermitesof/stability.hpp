#pragma once

#include <vector>

#include "hermitesof/hermite.hpp"
#include "hermitesof/poly_core.hpp"

namespace hermitesof {

/// Roots via companion-matrix eigenvalues, each polished by one Newton step.
/// Throws DegenerateInputError for degree < 1.
std::vector<Complex> roots(const RealPoly& q);

struct HurwitzResult {
  bool stable = false;
  double margin = 0.0;  // max real part over the roots
};

HurwitzResult is_hurwitz(const RealPoly& q);

struct RouthResult {
  bool stable = false;
  /// A zero pivot appeared in the first column and was replaced by a small
  /// epsilon; the verdict then describes the perturbed polynomial.
  bool inconclusive = false;
};

/// Tabular Routh array test on the coefficients.
RouthResult routh_hurwitz(const RealPoly& q);

/// How to build a target characteristic polynomial from open-loop poles.
struct TargetSpec {
  enum class Mode { kExplicitRoots, kMirrorShift };

  Mode mode = Mode::kMirrorShift;
  std::vector<Complex> roots;  // explicit mode
  double shift = -0.5;         // mirror-shift mode, must be < 0

  static TargetSpec explicit_roots(std::vector<Complex> r) {
    return {Mode::kExplicitRoots, std::move(r), -0.5};
  }
  static TargetSpec mirror_shift(double s = -0.5) { return {Mode::kMirrorShift, {}, s}; }
};

/// Poles with real part above -1e-9 count as unstable for shifting.
inline constexpr double kMarginalPole = 1e-9;

/// Monic target polynomial. In mirror-shift mode unstable poles get their
/// real part replaced by the shift (imaginary parts kept); stable poles stay.
RealPoly build_target(const std::vector<Complex>& open_loop_poles, const TargetSpec& spec);

/// Roots of Im or Re of target(ju) as a canonical NodeSet. kAuto uses the
/// part of full degree (Im for odd n, Re for even n). Throws NodeCountError
/// when the selected part has fewer than n roots.
NodeSet nodes_from_target(const RealPoly& target, NodePart part = NodePart::kAuto);

/// Roots of a numeric polynomial that is even (or odd) in u, computed through
/// w = u^2 so that +/- pairs and the root at 0 are exact.
std::vector<Complex> roots_of_parity_poly(const RealPoly& p);

/// All roots of a and b real and strictly interlacing (tolerance 1e-9).
bool interlacing_check(const NumericReIm& pair);

}  // namespace hermitesof
