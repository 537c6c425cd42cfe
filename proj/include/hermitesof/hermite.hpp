#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermitesof/poly_core.hpp"

namespace hermitesof {

/// Two nodes are treated as equal when |x - y| <= kNodeTolerance * (1 + |y|).
inline constexpr double kNodeTolerance = 1e-9;

/// Interpolation nodes, closed under conjugation, in canonical order:
/// a zero node first, then real nodes by decreasing magnitude (positive
/// before negative), then conjugate pairs by decreasing magnitude with the
/// positive-imaginary member first. Repeated values are adjacent.
class NodeSet {
 public:
  enum class Kind { kReal, kImaginary, kComplex };

  struct Cluster {
    Complex value;
    int multiplicity = 1;
    int first = 0;  // index of the first copy in nodes()
    Kind kind = Kind::kReal;
  };

  NodeSet() = default;

  /// Snaps near-real / near-imaginary values, groups repeats and sorts.
  /// Throws InputError when the list is not closed under conjugation.
  explicit NodeSet(std::span<const Complex> nodes);
  static NodeSet real(std::span<const double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  Kind kind(int i) const;
  bool all_real() const;
  bool has_general_complex() const;
  bool distinct() const { return clusters_.size() == nodes_.size(); }

 private:
  std::vector<Complex> nodes_;
  std::vector<Cluster> clusters_;
  std::vector<int> cluster_of_;
};

/// Dense square matrix of gain polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int n, int num_vars) : n_(n), cells_(static_cast<std::size_t>(n * n), MultiPoly(num_vars)) {}

  int size() const { return n_; }
  MultiPoly& operator()(int i, int j) { return cells_.at(static_cast<std::size_t>(i * n_ + j)); }
  const MultiPoly& operator()(int i, int j) const { return cells_.at(static_cast<std::size_t>(i * n_ + j)); }

  Eigen::MatrixXd evaluate(std::span<const double> k) const;

 private:
  int n_ = 0;
  std::vector<MultiPoly> cells_;
};

enum class Basis { kPower, kLagrange, kScaledLagrange };
std::string to_string(Basis b);

/// Positive diagonal scaling. `warning` is set when some governing entry
/// was zero and the corresponding scale fell back to 1.
struct ScalingDiag {
  std::vector<double> values;
  bool warning = false;
};

/// Hermite matrix whose entries are polynomials in the gains.
///
/// `entries` holds the real part. In Hermitian mode (`hermitian == true`)
/// `imag` holds the imaginary part and the numeric evaluation is
/// entries(k) + i*imag(k); otherwise the form is real symmetric.
struct HermiteForm {
  Basis basis = Basis::kPower;
  PolyMatrix entries;
  PolyMatrix imag;
  bool hermitian = false;
  std::optional<NodeSet> nodes;
  ScalingDiag scaling;
  int num_vars = 0;

  int size() const { return entries.size(); }
  Eigen::MatrixXd evaluate(std::span<const double> k) const;
  Eigen::MatrixXcd evaluate_complex(std::span<const double> k) const;
};

/// Bezoutian of a and b: (a(u)b(v) - a(v)b(u)) / (u - v) = sum b_ij u^i v^j.
HermiteForm bezoutian(const PolyInS& a, const PolyInS& b);

/// Hermite matrix in the power basis: Bezoutian of Im q(ju) and Re q(ju).
HermiteForm hermite_power(const PolyInS& q);

enum class FormMode { kRealSymmetric, kHermitian };

/// Hermite matrix in the (possibly confluent) Lagrange basis on `nodes`.
///
/// Entry (i, j) evaluates the Bezoutian kernel at (conj u_i, u_j). Repeated
/// nodes use Taylor coefficients of the kernel, so a node of multiplicity r
/// contributes value and derivatives up to order r-1.
///
/// In kRealSymmetric mode general complex nodes are rejected, and so is any
/// node set that produces non-real entries, with UnsupportedNodeError.
HermiteForm hermite_lagrange(const PolyInS& q, const NodeSet& nodes, FormMode mode = FormMode::kRealSymmetric);

/// Max |H^L - V^* H^P V| for a numeric polynomial, with V the (confluent)
/// Vandermonde matrix of the nodes. Test support.
double congruence_check(const RealPoly& q, const NodeSet& nodes);

/// (Confluent) Vandermonde matrix: column for node cluster z and derivative
/// order t holds binom(m, t) z^(m-t), m = 0..n-1.
Eigen::MatrixXcd confluent_vandermonde(const NodeSet& nodes);

/// Diagonal scaling normalizing the governing entry of each row of a block
/// diagonal matrix (1x1 blocks use the diagonal, 2x2 blocks the coupling).
ScalingDiag scaling_from_numeric(const Eigen::MatrixXd& H);
ScalingDiag scaling_from_numeric(const Eigen::MatrixXcd& H);

/// Same, with the block pattern taken from the nodes: a cluster's block is
/// the cluster together with its conjugate partner. Insensitive to rounding
/// noise outside the blocks.
ScalingDiag scaling_from_numeric(const Eigen::MatrixXcd& H, const NodeSet& nodes);

enum class NodePart { kAuto, kImag, kReal };
std::string to_string(NodePart p);

/// S H^L(k) S, with nodes and S taken from the numeric target polynomial.
/// kAuto picks whichever part of the target has degree n.
HermiteForm scaled_hermite(const PolyInS& q, const RealPoly& target, NodePart part = NodePart::kAuto,
                           FormMode mode = FormMode::kRealSymmetric);
HermiteForm scaled_hermite(const SystemInstance& sys, const RealPoly& target, NodePart part = NodePart::kAuto,
                           FormMode mode = FormMode::kRealSymmetric);

/// S_rho H S_rho with S_rho = diag(rho^(n-1), ..., rho, 1).
Eigen::MatrixXd power_scale(const Eigen::MatrixXd& H, double rho);

struct Conditioning {
  double value = 0.0;
  bool singular = false;
};

/// ||H||_F ||H^-1||_F; +inf with `singular` set when H is not invertible.
Conditioning cond_frobenius(const Eigen::MatrixXd& H);

}  // namespace hermitesof
