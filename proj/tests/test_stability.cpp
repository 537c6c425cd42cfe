#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hermitesof/benchmarks.hpp"
#include "hermitesof/errors.hpp"
#include "hermitesof/hermite.hpp"
#include "hermitesof/stability.hpp"
#include "oracles.hpp"

using namespace hermitesof;

namespace {

bool has_root(const std::vector<Complex>& r, Complex z, double rel) {
  return std::any_of(r.begin(), r.end(), [&](Complex w) { return std::abs(w - z) <= rel * std::abs(z); });
}

RealPoly open_loop(const char* name) {
  const PolyInS& q = registry().polynomial(name)->q;
  return q.at(std::vector<double>(q.num_vars, 0.0));
}

double max_real(const std::vector<Complex>& r) {
  double m = -INFINITY;
  for (const Complex& z : r) m = std::max(m, z.real());
  return m;
}

}  // namespace

TEST_CASE("roots examples") {
  const std::vector<Complex> ac4 = roots(open_loop("AC4-open-loop"));
  REQUIRE(ac4.size() == 4);
  for (double want : {2.5792, -5.0000e-2, -3.4552, -150.00}) CHECK(has_root(ac4, want, 1e-3));

  const std::vector<Complex> triple = roots(RealPoly({1.0, 3.0, 3.0, 1.0}));
  REQUIRE(triple.size() == 3);
  for (const Complex& z : triple) CHECK(std::abs(z + 1.0) <= 1e-4);

  const std::vector<Complex> nn6 = roots(open_loop("NN6"));
  REQUIRE(nn6.size() == 9);
  CHECK(has_root(nn6, 2.7303, 1e-3));
  CHECK(has_root(nn6, Complex(-7.2028e-2, 60.804), 1e-4));
  CHECK(has_root(nn6, Complex(-7.2028e-2, -60.804), 1e-4));

  CHECK_THROWS_AS(roots(RealPoly({3.0})), DegenerateInputError);
}

TEST_CASE("is_hurwitz examples") {
  CHECK(is_hurwitz(RealPoly({2.0, 3.0, 1.0})).stable);
  CHECK(is_hurwitz(RealPoly({2.0, 3.0, 1.0})).margin == doctest::Approx(-1.0));
  const HurwitzResult ac4 = is_hurwitz(open_loop("AC4-open-loop"));
  CHECK_FALSE(ac4.stable);
  CHECK(ac4.margin == doctest::Approx(2.5792).epsilon(1e-3));
  const HurwitzResult zero = is_hurwitz(RealPoly({0.0, 1.0, 1.0}));
  CHECK_FALSE(zero.stable);
  CHECK(zero.margin == doctest::Approx(0.0));
}

TEST_CASE("routh_hurwitz examples") {
  CHECK(routh_hurwitz(RealPoly({1.0, 1.0, 1.0})).stable);
  CHECK_FALSE(routh_hurwitz(RealPoly({1.0, 1.0, 0.0, 1.0})).stable);
  // The missing s^2 term is itself a zero pivot.
  CHECK(routh_hurwitz(RealPoly({1.0, 1.0, 0.0, 1.0})).inconclusive);
  CHECK_FALSE(routh_hurwitz(RealPoly({1.0, 2.0, 1.0, 1.0})).inconclusive);
  // s^4 + s^3 + 2s^2 + 2s + 1 has a zero pivot in the third row.
  const RouthResult zero_pivot = routh_hurwitz(RealPoly({1.0, 2.0, 2.0, 1.0, 1.0}));
  CHECK(zero_pivot.inconclusive);
  CHECK_FALSE(zero_pivot.stable);
  CHECK(routh_hurwitz(RealPoly({5.0, 1.0})).stable);
  CHECK_FALSE(routh_hurwitz(RealPoly({-5.0, 1.0})).stable);
}

TEST_CASE("roots, Routh array and Hermite positivity agree") {
  int stable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = oracle::uniform_int(2, 9);
    // Roots keep |Re| >= 1e-2, well outside the 1e-6 margin band.
    const std::vector<Complex> r = oracle::random_roots(n, trial % 3 == 0 ? 0.0 : 0.25, 1e-2);
    const bool truth = max_real(r) < 0.0;
    const RealPoly q(oracle::poly_from_roots(r));
    const bool by_roots = is_hurwitz(q).stable;
    const bool by_routh = routh_hurwitz(q).stable;
    const Eigen::MatrixXd H = hermite_power(PolyInS::constant(q)).evaluate({});
    const bool by_hermite = Eigen::LLT<Eigen::MatrixXd>(H).info() == Eigen::Success;
    CHECK(by_roots == truth);
    CHECK(by_routh == truth);
    CHECK(by_hermite == truth);
    stable += truth;
  }
  CHECK(stable > 100);
  CHECK(stable < 400);
}

TEST_CASE("build_target examples") {
  const std::vector<Complex> ac4_poles = roots(open_loop("AC4-open-loop"));
  const RealPoly ac4_target = build_target(ac4_poles, TargetSpec::explicit_roots(registry().roots("AC4-target")->roots));
  const NodeSet nodes = nodes_from_target(ac4_target, NodePart::kReal);
  REQUIRE(nodes.size() == 4);
  for (double want : {23.100, -23.100, 4.9276e-2, -4.9276e-2}) CHECK(has_root(nodes.nodes(), want, 1e-4));

  const std::vector<Complex> stable_poles{{-1.0, 0.0}, {-2.0, 1.0}, {-2.0, -1.0}};
  const RealPoly same = build_target(stable_poles, TargetSpec::mirror_shift());
  const std::vector<double> want = oracle::poly_from_roots(stable_poles);
  for (int i = 0; i <= 3; ++i) CHECK(same.coeffs[i] == doctest::Approx(want[i]));

  const std::vector<Complex>& sigma1 = registry().roots("NN6-sigma1")->roots;
  const RealPoly nn6 = build_target(roots(open_loop("NN6")), TargetSpec::explicit_roots(sigma1));
  REQUIRE(nn6.degree() == 9);
  CHECK(nn6.coeffs[9] == 1.0);
  const std::vector<Complex> back = roots(nn6);
  for (const Complex& z : sigma1) CHECK(has_root(back, z, 1e-6));

  // Unstable real poles move to the shift; complex pairs keep their imaginary part.
  const std::vector<Complex> mixed{{2.0, 0.0}, {0.0, 0.0}, {0.3, 4.0}, {0.3, -4.0}, {-7.0, 0.0}};
  const std::vector<Complex> shifted = roots(build_target(mixed, TargetSpec::mirror_shift(-0.5)));
  for (Complex z : std::vector<Complex>{{-0.5, 0.0}, {-0.5, 4.0}, {-0.5, -4.0}, {-7.0, 0.0}}) {
    CHECK(std::any_of(shifted.begin(), shifted.end(), [&](Complex w) { return std::abs(w - z) <= 1e-4; }));
  }
}

TEST_CASE("mirror-shift targets are Hurwitz") {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = oracle::uniform_int(1, 9);
    const std::vector<Complex> poles = oracle::random_roots(n, 0.5);
    const double shift = -oracle::uniform(0.01, 2.0);
    const RealPoly t = build_target(poles, TargetSpec::mirror_shift(shift));
    CHECK(t.degree() == n);
    CHECK(is_hurwitz(t).stable);
  }
}

TEST_CASE("nodes_from_target examples") {
  const NodeSet three = nodes_from_target(RealPoly({6.0, 11.0, 6.0, 1.0}), NodePart::kImag);
  REQUIRE(three.size() == 3);
  CHECK(three.nodes()[0] == Complex(0.0));
  CHECK(three.nodes()[1].real() == doctest::Approx(std::sqrt(11.0)));
  CHECK(three.nodes()[2].real() == doctest::Approx(-std::sqrt(11.0)));

  // The Im part of s^2 + s + 1 is u, a single root for a degree-2 target.
  CHECK_THROWS_AS(nodes_from_target(RealPoly({1.0, 1.0, 1.0}), NodePart::kImag), NodeCountError);
  CHECK(nodes_from_target(RealPoly({1.0, 1.0, 1.0}), NodePart::kAuto).size() == 2);

  const NodeSet nn5 = nodes_from_target(open_loop("NN5-open-loop"), NodePart::kImag);
  int singles = 0, pairs = 0;
  for (const Complex& z : nn5.nodes()) (z.imag() == 0.0 ? singles : pairs)++;
  CHECK(singles == 5);
  CHECK(pairs == 2);
}

TEST_CASE("stable targets give real nodes") {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = oracle::uniform_int(1, 9);
    const RealPoly q(oracle::poly_from_roots(oracle::random_roots(n, 0.0)));
    for (NodePart part : {NodePart::kImag, NodePart::kReal, NodePart::kAuto}) {
      NodeSet ns;
      try {
        ns = nodes_from_target(q, part);
      } catch (const NodeCountError&) {
        // Only the part of lower degree can fall short.
        CHECK(part != NodePart::kAuto);
        continue;
      }
      for (const Complex& z : ns.nodes()) CHECK(z.imag() == 0.0);
    }
  }
}

TEST_CASE("interlacing examples and property") {
  CHECK(interlacing_check(split_re_im(RealPoly({6.0, 11.0, 6.0, 1.0}))));
  CHECK_FALSE(interlacing_check(split_re_im(RealPoly({1.0, -1.0, 0.0, 1.0}))));
  CHECK(interlacing_check(split_re_im(RealPoly({1.0, 1.0}))));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = oracle::uniform_int(2, 8);
    const std::vector<Complex> r = oracle::random_roots(n, 0.3, 1e-2);
    const RealPoly q(oracle::poly_from_roots(r));
    // Stability implies interlacing, and the converse holds for a positive leading coefficient
    // whenever the low-order coefficients share its sign.
    if (max_real(r) < 0.0) CHECK(interlacing_check(split_re_im(q)));
    if (interlacing_check(split_re_im(q)) && q.coeffs[0] > 0.0 && q.coeffs[1] > 0.0) CHECK(max_real(r) < 0.0);
  }
}

TEST_CASE("roots round trip") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = oracle::uniform_int(1, 9);
    std::vector<Complex> r;
    while (static_cast<int>(r.size()) < n) {
      const std::vector<Complex> cand = oracle::random_roots(n - static_cast<int>(r.size()) == 1 ? 1 : 2, 0.5);
      bool separated = true;
      for (const Complex& z : cand) {
        for (const Complex& w : r) separated = separated && std::abs(z - w) >= 1e-2;
      }
      if (separated && static_cast<int>(r.size() + cand.size()) <= n) r.insert(r.end(), cand.begin(), cand.end());
    }
    const std::vector<Complex> back = roots(RealPoly(oracle::poly_from_roots(r)));
    REQUIRE(back.size() == r.size());
    for (const Complex& z : r) {
      const auto best = std::min_element(back.begin(), back.end(),
                                         [&](Complex a, Complex b) { return std::abs(a - z) < std::abs(b - z); });
      CHECK(std::abs(*best - z) <= 1e-6 * std::max(1.0, std::abs(z)));
    }
  }
}
