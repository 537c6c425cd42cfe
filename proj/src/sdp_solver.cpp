#include "hermitesof/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermitesof/errors.hpp"
#include "hermitesof/stability.hpp"

namespace hermitesof {

CompiledForm::CompiledForm(const HermiteForm& H) : n_(H.size()), num_vars_(H.num_vars) {
  if (H.hermitian) throw InputError("CompiledForm: Hermitian forms are not supported by the solver");
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      for (const auto& [mono, c] : H.entries(i, j).terms()) {
        Term t{i, j, c, mono};
        if (t.exps.empty()) t.exps.assign(num_vars_, 0);
        for (int e : t.exps) max_exp_ = std::max(max_exp_, e);
        terms_.push_back(std::move(t));
      }
    }
  }
}

void CompiledForm::evaluate(std::span<const double> k, Eigen::MatrixXd& H, std::vector<Eigen::MatrixXd>* partials,
                            std::vector<Eigen::MatrixXd>* second) const {
  if (static_cast<int>(k.size()) != num_vars_) throw InputError("CompiledForm: gain vector has wrong length");
  const int N = num_vars_;
  // powers[v][e] = k_v^e
  std::vector<std::vector<double>> powers(N, std::vector<double>(max_exp_ + 1, 1.0));
  for (int v = 0; v < N; ++v) {
    for (int e = 1; e <= max_exp_; ++e) powers[v][e] = powers[v][e - 1] * k[v];
  }
  H = Eigen::MatrixXd::Zero(n_, n_);
  if (partials) partials->assign(N, Eigen::MatrixXd::Zero(n_, n_));
  if (second) second->assign(static_cast<std::size_t>(N * N), Eigen::MatrixXd::Zero(n_, n_));

  // d^j/dk^j of k^e, as a multiple of k^(e-j).
  auto falling = [](int e, int j) {
    double f = 1.0;
    for (int i = 0; i < j; ++i) f *= e - i;
    return f;
  };
  std::vector<int> order(N);
  for (const Term& t : terms_) {
    double value = t.coef;
    for (int v = 0; v < N; ++v) value *= powers[v][t.exps[v]];
    H(t.row, t.col) += value;
    if (!partials && !second) continue;
    // Product over variables of the j_v-th derivative of k_v^e_v.
    auto derivative = [&](int a, int b) {
      double d = t.coef;
      for (int v = 0; v < N; ++v) {
        const int j = (v == a) + (v == b);
        const int e = t.exps[v];
        if (j > e) return 0.0;
        d *= falling(e, j) * powers[v][e - j];
      }
      return d;
    };
    for (int a = 0; a < N; ++a) {
      if (t.exps[a] == 0) continue;
      if (partials) (*partials)[a](t.row, t.col) += derivative(a, -1);
      if (!second) continue;
      for (int b = 0; b < N; ++b) {
        if (t.exps[b] == 0 || (a == b && t.exps[a] < 2)) continue;
        (*second)[static_cast<std::size_t>(a * N + b)](t.row, t.col) += derivative(a, b);
      }
    }
  }
  auto mirror = [this](Eigen::MatrixXd& M) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) M(j, i) = M(i, j);
    }
  };
  mirror(H);
  if (partials) {
    for (auto& P : *partials) mirror(P);
  }
  if (second) {
    for (auto& P : *second) mirror(P);
  }
}

namespace {

void check_dimension(const SofProgram& prog, std::span<const double> x) {
  if (static_cast<int>(x.size()) != prog.dimension()) {
    throw InputError("decision vector has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(prog.dimension()));
  }
  if (prog.H.num_vars != prog.num_gains()) throw InputError("Hermite form and gain shape disagree");
}

double phi(PenaltyKind kind, double t, double p) {
  if (kind == PenaltyKind::kLogBarrier) return -p * std::log1p(-t / p);
  return p * t / (p - t);
}

double dphi(PenaltyKind kind, double t, double p) {
  if (kind == PenaltyKind::kLogBarrier) return p / (p - t);
  const double r = p / (p - t);
  return r * r;
}

// Divided differences of log, in w = p - t > 0.
double log1(double a, double b) {
  const double r = (b - a) / a;
  if (std::abs(r) < 1e-8) return (1.0 - 0.5 * r) / a;
  return std::log1p(r) / (b - a);
}

double log2(double a, double b, double c) {
  double w[3] = {a, b, c};
  std::sort(w, w + 3);
  if (w[2] - w[0] <= 1e-3 * w[0]) {
    const double m = w[1];
    const double d1 = w[0] - m, d3 = w[2] - m;
    const double h1 = d1 + d3, h2 = d1 * d1 + d1 * d3 + d3 * d3;
    return -0.5 / (m * m) + h1 / (3.0 * m * m * m) - h2 / (4.0 * m * m * m * m);
  }
  return (log1(w[0], w[1]) - log1(w[1], w[2])) / (w[0] - w[2]);
}

// First divided difference (phi(b) - phi(a)) / (b - a); phi'(a) when a == b.
double divided(PenaltyKind kind, double a, double b, double p) {
  if (kind == PenaltyKind::kReciprocal) return p * p / ((p - a) * (p - b));
  return p * log1(p - a, p - b);
}

// Second divided difference of phi.
double divided2(PenaltyKind kind, double a, double b, double c, double p) {
  if (kind == PenaltyKind::kReciprocal) return p * p / ((p - a) * (p - b) * (p - c));
  return -p * log2(p - a, p - b, p - c);
}

struct Workspace {
  CompiledForm form;
  Eigen::MatrixXd H;
  std::vector<Eigen::MatrixXd> dH;
  std::vector<Eigen::MatrixXd> d2H;
  explicit Workspace(const HermiteForm& h) : form(h) {}
};

// Core evaluation; returns false when the point lies outside the penalty domain.
bool evaluate_objective(const SofProgram& prog, Workspace& ws, std::span<const double> x, const Eigen::MatrixXd& U,
                        double p, PenaltyKind kind, ObjectiveValue& out, bool with_hessian = false) {
  const int N = prog.num_gains();
  const int n = prog.H.size();
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  std::span<const double> k = x.first(static_cast<std::size_t>(N));
  const double lambda = x[static_cast<std::size_t>(N)];
  ws.form.evaluate(k, ws.H, &ws.dH, with_hessian ? &ws.d2H : nullptr);

  const Eigen::MatrixXd Z = lambda * Eigen::MatrixXd::Identity(n, n) - ws.H;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Z);
  if (eig.info() != Eigen::Success) return false;
  const Eigen::VectorXd& z = eig.eigenvalues();
  const Eigen::MatrixXd& Q = eig.eigenvectors();
  if (!z.allFinite() || !(z.maxCoeff() < p)) return false;

  double sq = 0.0;
  for (double v : k) sq += v * v;
  const double norm = std::sqrt(sq);
  const bool squared = prog.gain_penalty == GainPenalty::kSquared;

  const Eigen::MatrixXd Ut = Q.transpose() * U * Q;
  double penalty = 0.0;
  double magnitude = 0.0;
  Eigen::MatrixXd gamma(n, n);
  for (int i = 0; i < n; ++i) {
    const double term = phi(kind, z(i), p) * Ut(i, i);
    penalty += term;
    magnitude += std::abs(term);
    for (int j = 0; j < n; ++j) {
      gamma(i, j) = i == j ? dphi(kind, z(i), p) : divided(kind, z(i), z(j), p);
    }
  }
  // Daleckii-Krein: D Phi(Z)[U] = Q (Gamma o Q^T U Q) Q^T
  const Eigen::MatrixXd W = Q * gamma.cwiseProduct(Ut) * Q.transpose();

  out.objective = prog.mu * (squared ? sq : norm) - lambda;
  out.value = out.objective + penalty;
  out.magnitude = magnitude + prog.mu * (squared ? sq : norm) + std::abs(lambda);
  out.gradient.resize(N + 1);
  for (int v = 0; v < N; ++v) {
    const double reg = squared ? 2.0 * prog.mu * k[v] : (norm > 0.0 ? prog.mu * k[v] / norm : 0.0);
    out.gradient(v) = reg - W.cwiseProduct(ws.dH[v]).sum();
  }
  out.gradient(N) = -1.0 + W.trace();
  out.multiplier = 0.5 * (W + W.transpose());
  out.min_eig_G = -z.maxCoeff();
  if (!std::isfinite(out.value) || !out.gradient.allFinite()) return false;
  if (!with_hessian) return true;

  // Directions dZ/dx_a in the eigenbasis.
  std::vector<Eigen::MatrixXd> A(N + 1);
  for (int a = 0; a < N; ++a) A[a] = -(Q.transpose() * ws.dH[a] * Q);
  A[N] = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> P(static_cast<std::size_t>(n * n * n));
  auto at = [n](int i, int j, int l) { return static_cast<std::size_t>((i * n + j) * n + l); };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int l = j; l < n; ++l) {
        const double v = divided2(kind, z(i), z(j), z(l), p);
        for (auto idx : {at(i, j, l), at(i, l, j), at(j, i, l), at(j, l, i), at(l, i, j), at(l, j, i)}) P[idx] = v;
      }
    }
  }
  out.hessian.setZero(N + 1, N + 1);
  for (int a = 0; a <= N; ++a) {
    for (int b = a; b <= N; ++b) {
      double h = 0.0;
      if (a < N && b < N) {
        h -= W.cwiseProduct(ws.d2H[static_cast<std::size_t>(a * N + b)]).sum();
        if (squared) {
          h += a == b ? 2.0 * prog.mu : 0.0;
        } else if (norm > 0.0) {
          h += prog.mu * ((a == b ? 1.0 : 0.0) / norm - k[a] * k[b] / (norm * norm * norm));
        }
      }
      // sum_{i,j,l} U_ji phi[2](z_i, z_l, z_j) (A_il B_lj + B_il A_lj)
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double inner = 0.0;
          for (int l = 0; l < n; ++l) {
            inner += P[at(i, l, j)] * (A[a](i, l) * A[b](l, j) + A[b](i, l) * A[a](l, j));
          }
          h += Ut(j, i) * inner;
        }
      }
      out.hessian(a, b) = out.hessian(b, a) = h;
    }
  }
  return out.hessian.allFinite();
}

double min_eig(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

enum class InnerResult { kConverged, kMaxIters, kLinesearchFailure };

struct InnerState {
  Eigen::VectorXd x;
  ObjectiveValue obj;
};

// Armijo backtracking along d; on success updates st and returns true.
bool backtrack(const SofProgram& prog, Workspace& ws, const SolveConfig& cfg, const Eigen::MatrixXd& U, double p,
               InnerState& st, const Eigen::VectorXd& d, bool want_hessian, int& ls_steps) {
  const int dim = prog.dimension();
  const double slope = st.obj.gradient.dot(d);
  ObjectiveValue trial;
  double t = 1.0;
  for (int ls = 0; ls < cfg.max_linesearch; ++ls) {
    ++ls_steps;
    const Eigen::VectorXd xt = st.x + t * d;
    if (evaluate_objective(prog, ws, std::span<const double>(xt.data(), dim), U, p, cfg.penalty, trial,
                           want_hessian) &&
        trial.value <= st.obj.value + cfg.armijo_c * t * slope) {
      st.x = xt;
      st.obj = std::move(trial);
      return true;
    }
    t *= cfg.backtrack;
  }
  return false;
}

// Single trial of a step from an already stationary point; kept only when
// F does not rise above its roundoff level.
void probe_step(const SofProgram& prog, Workspace& ws, const SolveConfig& cfg, const Eigen::MatrixXd& U, double p,
                InnerState& st, const Eigen::VectorXd& d, bool want_hessian, int& ls_steps) {
  const int dim = prog.dimension();
  ++ls_steps;
  const Eigen::VectorXd xt = st.x + d;
  ObjectiveValue trial;
  if (evaluate_objective(prog, ws, std::span<const double>(xt.data(), dim), U, p, cfg.penalty, trial, want_hessian) &&
      trial.value <= st.obj.value + 1e-14 * std::max(1.0, st.obj.magnitude)) {
    st.x = xt;
    st.obj = std::move(trial);
  }
}

InnerResult newton_inner(const SofProgram& prog, Workspace& ws, const SolveConfig& cfg, const Eigen::MatrixXd& U,
                         double p, InnerState& st, int& inner_iters, int& ls_steps) {
  const int dim = prog.dimension();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  if (st.obj.hessian.rows() != dim &&
      !evaluate_objective(prog, ws, std::span<const double>(st.x.data(), dim), U, p, cfg.penalty, st.obj, true)) {
    return InnerResult::kLinesearchFailure;
  }
  for (int it = 0; it < cfg.max_inner; ++it) {
    const Eigen::VectorXd& g = st.obj.gradient;
    const bool small_gradient = g.lpNorm<Eigen::Infinity>() <= cfg.inner_tol;
    if (small_gradient && it > 0) return InnerResult::kConverged;
    const Eigen::MatrixXd& Hs = st.obj.hessian;
    // Shift until positive definite.
    const double scale = std::max(Hs.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    double tau = 0.0;
    Eigen::VectorXd d;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::LLT<Eigen::MatrixXd> llt(Hs + tau * I);
      if (llt.info() == Eigen::Success) {
        d = -llt.solve(g);
        if (d.allFinite() && g.dot(d) < 0.0) break;
      }
      d.resize(0);
      tau = tau == 0.0 ? 1e-10 * scale : 10.0 * tau;
    }
    if (d.size() == 0) d = -g;
    // Affine-invariant stop on the Newton decrement g^T H^-1 g.
    const double decrement = -g.dot(d);
    const double floor = 1e-2 * cfg.inner_tol * (1.0 + std::abs(st.obj.value));
    const bool small_decrement = tau == 0.0 && decrement <= floor;
    if (small_decrement && it > 0) return InnerResult::kConverged;
    ++inner_iters;
    // Every call takes at least one step.
    if (small_gradient || small_decrement) {
      probe_step(prog, ws, cfg, U, p, st, d, true, ls_steps);
      return InnerResult::kConverged;
    }
    const double before = st.obj.value;
    if (!backtrack(prog, ws, cfg, U, p, st, d, true, ls_steps)) {
      if (decrement <= floor) return InnerResult::kConverged;
      if (!backtrack(prog, ws, cfg, U, p, st, -g / std::max(1.0, g.norm()), true, ls_steps)) {
        return InnerResult::kLinesearchFailure;
      }
    }
    if (!(st.obj.value < before)) {
      return decrement <= floor ? InnerResult::kConverged : InnerResult::kLinesearchFailure;
    }
  }
  return InnerResult::kMaxIters;
}

InnerResult bfgs_inner(const SofProgram& prog, Workspace& ws, const SolveConfig& cfg, const Eigen::MatrixXd& U,
                       double p, InnerState& st, int& inner_iters, int& ls_steps) {
  const int dim = prog.dimension();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd Hinv = I;
  bool steepest = true;
  bool scaled = false;
  for (int it = 0; it < cfg.max_inner; ++it) {
    const Eigen::VectorXd g = st.obj.gradient;
    if (g.lpNorm<Eigen::Infinity>() <= cfg.inner_tol) {
      if (it > 0) return InnerResult::kConverged;
      ++inner_iters;
      probe_step(prog, ws, cfg, U, p, st, -g, false, ls_steps);
      return InnerResult::kConverged;
    }

    Eigen::VectorXd d = -Hinv * g;
    if (!(g.dot(d) < 0.0)) {
      Hinv = I;
      steepest = true;
      scaled = false;
      d = -g;
    }
    const Eigen::VectorXd x_old = st.x;
    ++inner_iters;
    if (!backtrack(prog, ws, cfg, U, p, st, d, false, ls_steps)) {
      if (steepest) return InnerResult::kLinesearchFailure;
      Hinv = I;
      steepest = true;
      scaled = false;
      continue;
    }
    const Eigen::VectorXd s = st.x - x_old;
    const Eigen::VectorXd y = st.obj.gradient - g;
    const double sy = s.dot(y);
    steepest = false;
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        Hinv = (sy / y.squaredNorm()) * I;
        scaled = true;
      }
      const double rho = 1.0 / sy;
      Hinv = (I - rho * s * y.transpose()) * Hinv * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
  }
  return InnerResult::kMaxIters;
}

InnerResult minimize_inner(const SofProgram& prog, Workspace& ws, const SolveConfig& cfg, const Eigen::MatrixXd& U,
                           double p, InnerState& st, int& inner_iters, int& ls_steps) {
  if (cfg.inner == InnerMethod::kNewton) return newton_inner(prog, ws, cfg, U, p, st, inner_iters, ls_steps);
  return bfgs_inner(prog, ws, cfg, U, p, st, inner_iters, ls_steps);
}

}  // namespace

ConstraintValue constraint_eval(const SofProgram& prog, std::span<const double> x) {
  check_dimension(prog, x);
  const int N = prog.num_gains();
  const int n = prog.H.size();
  CompiledForm form(prog.H);
  ConstraintValue out;
  Eigen::MatrixXd H;
  std::vector<Eigen::MatrixXd> dH;
  form.evaluate(x.first(static_cast<std::size_t>(N)), H, &dH);
  out.G = H - x[static_cast<std::size_t>(N)] * Eigen::MatrixXd::Identity(n, n);
  out.dG = std::move(dH);
  out.dG.push_back(-Eigen::MatrixXd::Identity(n, n));
  return out;
}

ObjectiveValue augmented_objective(const SofProgram& prog, std::span<const double> x, const Eigen::MatrixXd& U,
                                   double p, PenaltyKind kind, bool with_hessian) {
  check_dimension(prog, x);
  if (!(p > 0.0)) throw InputError("augmented_objective: penalty parameter must be positive");
  if (U.rows() != prog.H.size() || U.cols() != prog.H.size()) throw InputError("augmented_objective: multiplier size");
  Workspace ws(prog.H);
  ObjectiveValue out;
  if (!evaluate_objective(prog, ws, x, U, p, kind, out, with_hessian)) {
    throw BarrierDomainError("augmented_objective: point outside the penalty domain");
  }
  return out;
}

std::string to_string(GainPenalty g) {
  return g == GainPenalty::kSquared ? "squared" : "euclidean";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kLinesearchFailure: return "linesearch-failure";
    case SolveStatus::kMaxIters: return "max-iters";
    case SolveStatus::kInfeasibleStall: return "infeasible-stall";
  }
  return "unknown";
}

SolveReport solve_sof(const SofProgram& prog, const SolveConfig& cfg) {
  const int N = prog.num_gains();
  const int n = prog.H.size();
  const int dim = prog.dimension();
  if (prog.H.num_vars != N) throw InputError("solve_sof: Hermite form and gain shape disagree");
  if (n < 1) throw InputError("solve_sof: empty Hermite form");
  if (prog.mu < 0.0) throw InputError("solve_sof: mu must be nonnegative");
  if (!(cfg.p0 > 0.0) || !(cfg.penalty_shrink > 0.0 && cfg.penalty_shrink < 1.0)) {
    throw InputError("solve_sof: invalid penalty settings");
  }
  std::vector<double> k0 = cfg.k0.empty() ? std::vector<double>(N, 0.0) : cfg.k0;
  if (static_cast<int>(k0.size()) != N) throw InputError("solve_sof: K0 has wrong length");

  Workspace ws(prog.H);
  Eigen::MatrixXd H0;
  ws.form.evaluate(k0, H0, nullptr);
  // A unit margin is below eigenvalue accuracy once ||H0|| is large.
  const double margin = std::max(1.0, 1e-9 * H0.norm());
  const double lambda0 = cfg.lambda0 ? *cfg.lambda0 : min_eig(H0) - margin;

  InnerState st;
  st.x.resize(dim);
  for (int v = 0; v < N; ++v) st.x(v) = k0[v];
  st.x(N) = lambda0;

  Eigen::MatrixXd U = Eigen::MatrixXd::Identity(n, n);
  double p = cfg.p0;
  if (!evaluate_objective(prog, ws, std::span<const double>(st.x.data(), dim), U, p, cfg.penalty, st.obj)) {
    throw InputError("solve_sof: starting point lies outside the penalty domain");
  }

  SolveReport rep;
  double prev_violation = std::numeric_limits<double>::infinity();
  double prev_f = std::numeric_limits<double>::quiet_NaN();
  int nonpositive_run = 0;
  bool done = false;

  for (int outer = 0; outer < cfg.max_outer && !done; ++outer) {
    int inner_here = 0;
    st.obj.hessian.resize(0, 0);
    const InnerResult inner = minimize_inner(prog, ws, cfg, U, p, st, inner_here, rep.linesearch_steps);
    rep.inner_iters += inner_here;
    ++rep.outer_iters;

    const double lambda = st.x(N);
    const double violation = std::max(0.0, -st.obj.min_eig_G);
    const double f = st.obj.objective;
    rep.history.push_back({f, lambda, st.obj.min_eig_G, p, inner_here});

    if (inner == InnerResult::kLinesearchFailure) {
      rep.status = SolveStatus::kLinesearchFailure;
      break;
    }

    // Multiplier update and complementarity measure.
    const Eigen::MatrixXd W = st.obj.multiplier;
    const double gap = std::abs(st.obj.value - f);
    const bool f_settled = std::isfinite(prev_f) && std::abs(f - prev_f) <= cfg.outer_tol * (1.0 + std::abs(f));
    if (inner == InnerResult::kConverged && f_settled && violation <= cfg.outer_tol &&
        gap <= cfg.outer_tol * (1.0 + std::abs(f))) {
      // Certify with min eig H(k) = lambda + min eig G, not lambda alone.
      const bool strict = lambda + st.obj.min_eig_G > kStrictFeasibility;
      rep.status = strict ? SolveStatus::kConverged : SolveStatus::kInfeasibleStall;
      done = true;
      break;
    }
    nonpositive_run = lambda > kStrictFeasibility ? 0 : nonpositive_run + 1;
    if (nonpositive_run >= cfg.stall_outer) {
      rep.status = SolveStatus::kInfeasibleStall;
      break;
    }
    prev_f = f;

    U = W;
    // Shrink when feasibility stalls, or when a feasible stationary point
    // is waiting only on complementarity.
    const bool stalled = violation > cfg.outer_tol && violation > 0.5 * prev_violation;
    if (stalled || (inner_here == 0 && violation <= cfg.outer_tol)) {
      // Keep the current point strictly inside the shrunk domain.
      p = std::min(p, std::max({cfg.penalty_shrink * p, 2.0 * violation, cfg.min_penalty}));
    }
    prev_violation = violation;
    if (!evaluate_objective(prog, ws, std::span<const double>(st.x.data(), dim), U, p, cfg.penalty, st.obj)) {
      rep.status = SolveStatus::kLinesearchFailure;
      break;
    }
    if (outer + 1 == cfg.max_outer) rep.status = SolveStatus::kMaxIters;
  }

  rep.k.assign(st.x.data(), st.x.data() + N);
  rep.lambda = st.x(N);
  rep.objective = st.obj.objective;
  rep.K = unstack_columns(rep.k, prog.gain_rows, prog.gain_cols);
  return rep;
}

VerifyReport verify_solution(const PolyInS& q, std::span<const double> k) {
  if (static_cast<int>(k.size()) != q.num_vars) throw InputError("verify_solution: gain vector has wrong length");
  const RealPoly closed = q.at(k);
  VerifyReport out;
  out.poles = roots(closed);
  const HurwitzResult h = is_hurwitz(closed);
  out.stable = h.stable;
  out.margin = h.margin;
  return out;
}

VerifyReport verify_solution(const SystemInstance& sys, const Eigen::MatrixXd& K) {
  if (K.rows() != sys.inputs() || K.cols() != sys.outputs()) throw InputError("verify_solution: K has wrong shape");
  const Eigen::MatrixXd Acl = sys.A + sys.B * K * sys.C;
  VerifyReport out;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(Acl, false);
  if (eig.info() != Eigen::Success) throw DegenerateInputError("verify_solution: eigenvalue iteration failed");
  out.margin = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    out.poles.push_back(eig.eigenvalues()(i));
    out.margin = std::max(out.margin, eig.eigenvalues()(i).real());
  }
  out.stable = out.margin < 0.0;
  return out;
}

}  // namespace hermitesof
