#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermitesof/hermite.hpp"
#include "hermitesof/poly_core.hpp"
#include "hermitesof/system.hpp"

namespace hermitesof {

/// Gain regularizer r(k) in the objective mu r(k) - lambda.
///  kSquared:    ||k||^2 (bounded objective whenever mu > 0)
///  kEuclidean:  ||k||, which leaves the program unbounded below whenever
///               lambda_min(H(t k)) grows faster than linearly in t.
enum class GainPenalty { kSquared, kEuclidean };
std::string to_string(GainPenalty g);

/// min_{k, lambda}  mu r(k) - lambda   s.t.  H(k) - lambda I >= 0.
///
/// The decision vector is x = (k_1, ..., k_mp, lambda).
struct SofProgram {
  HermiteForm H;
  int gain_rows = 1;  // m
  int gain_cols = 1;  // p
  double mu = 0.0;
  GainPenalty gain_penalty = GainPenalty::kSquared;

  int num_gains() const { return gain_rows * gain_cols; }
  int dimension() const { return num_gains() + 1; }
};

/// Evaluates a real polynomial matrix and its partial derivatives in k.
class CompiledForm {
 public:
  explicit CompiledForm(const HermiteForm& H);

  int size() const { return n_; }
  int num_vars() const { return num_vars_; }

  /// H(k); when `partials` is non-null it receives dH/dk_v for every v, and
  /// when `second` is non-null it receives d2H/dk_a dk_b at index a*N + b.
  void evaluate(std::span<const double> k, Eigen::MatrixXd& H, std::vector<Eigen::MatrixXd>* partials,
                std::vector<Eigen::MatrixXd>* second = nullptr) const;

 private:
  struct Term {
    int row, col;
    double coef;
    std::vector<int> exps;
  };
  int n_ = 0;
  int num_vars_ = 0;
  int max_exp_ = 0;
  std::vector<Term> terms_;  // upper triangle only
};

struct ConstraintValue {
  Eigen::MatrixXd G;                 // H(k) - lambda I
  std::vector<Eigen::MatrixXd> dG;   // dG/dx_i, i = 0..mp (last is -I)
};

ConstraintValue constraint_eval(const SofProgram& prog, std::span<const double> x);

/// Spectral penalty phi_p applied to the eigenvalues of Z = -G.
///  kLogBarrier:  phi(t) = -p log(1 - t/p)
///  kReciprocal:  phi(t) = p t / (p - t)
/// Both have phi(0) = 0, phi'(0) = 1 and the domain t < p.
enum class PenaltyKind { kLogBarrier, kReciprocal };

struct ObjectiveValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
  /// D Phi_p(Z)[U]; the next multiplier estimate.
  Eigen::MatrixXd multiplier;
  double objective = 0.0;     // f(x) = mu r(k) - lambda
  double min_eig_G = 0.0;
  /// Sum of the absolute values of the terms of F; sets its roundoff scale.
  double magnitude = 0.0;
  /// Exact Hessian of F; filled only on request.
  Eigen::MatrixXd hessian;
};

/// F(x; U, p) = f(x) + <U, Phi_p(-G(x))> and its gradient (Daleckii-Krein).
/// Throws BarrierDomainError when -G(x) has an eigenvalue >= p.
ObjectiveValue augmented_objective(const SofProgram& prog, std::span<const double> x, const Eigen::MatrixXd& U,
                                   double p, PenaltyKind kind = PenaltyKind::kLogBarrier, bool with_hessian = false);

/// Inner minimizer for the augmented objective.
///  kNewton:  exact Hessian, shifted by a multiple of I until positive definite
///  kBfgs:    inverse BFGS updates starting from a scaled identity
enum class InnerMethod { kNewton, kBfgs };

struct SolveConfig {
  std::vector<double> k0;          // empty means the origin
  std::optional<double> lambda0;   // default: min eig H(k0) - max(1, 1e-9 ||H(k0)||)
  double p0 = 1.0;
  double penalty_shrink = 0.3;
  double min_penalty = 1e-10;
  double outer_tol = 1e-7;
  double inner_tol = 1e-6;
  int max_outer = 50;
  int max_inner = 200;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_linesearch = 60;
  int stall_outer = 10;
  PenaltyKind penalty = PenaltyKind::kLogBarrier;
  InnerMethod inner = InnerMethod::kNewton;
};

enum class SolveStatus { kConverged, kLinesearchFailure, kMaxIters, kInfeasibleStall };
std::string to_string(SolveStatus s);

/// Strict feasibility threshold on min eig H(k) at the returned point.
inline constexpr double kStrictFeasibility = 1e-9;

struct OuterRecord {
  double objective = 0.0;
  double lambda = 0.0;
  double min_eig_G = 0.0;
  double penalty = 0.0;
  int inner_iters = 0;
};

struct SolveReport {
  Eigen::MatrixXd K;
  std::vector<double> k;
  double lambda = 0.0;
  double objective = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
  int linesearch_steps = 0;
  SolveStatus status = SolveStatus::kMaxIters;
  std::vector<OuterRecord> history;
};

SolveReport solve_sof(const SofProgram& prog, const SolveConfig& cfg = {});

struct VerifyReport {
  std::vector<Complex> poles;
  bool stable = false;
  double margin = 0.0;
};

/// Closed-loop poles: roots of the characteristic polynomial at k = vec(K).
VerifyReport verify_solution(const PolyInS& q, std::span<const double> k);
VerifyReport verify_solution(const SystemInstance& sys, const Eigen::MatrixXd& K);

}  // namespace hermitesof
