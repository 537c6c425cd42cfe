#include "hermitesof/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "hermitesof/errors.hpp"
#include "hermitesof/stability.hpp"

namespace hermitesof {
namespace {

double node_tol(Complex z) { return kNodeTolerance * (1.0 + std::abs(z)); }

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Taylor coefficients p^(r)(w) / r!, r = 0..max_order, of a PolyInS at w.
std::vector<ComplexMultiPoly> taylor(const PolyInS& p, Complex w, int max_order) {
  std::vector<ComplexMultiPoly> out;
  out.reserve(max_order + 1);
  const int len = static_cast<int>(p.coeffs.size());
  for (int r = 0; r <= max_order; ++r) {
    ComplexMultiPoly acc(p.num_vars);
    for (int m = r; m < len; ++m) {
      if (p.coeffs[m].is_zero()) continue;
      const Complex w_pow = std::pow(w, m - r);
      acc += ComplexMultiPoly(p.coeffs[m]) * (binom(m, r) * w_pow);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

struct TaylorAt {
  std::vector<ComplexMultiPoly> a;
  std::vector<ComplexMultiPoly> b;
};

}  // namespace

// ---------------------------------------------------------------------------
// NodeSet

NodeSet::NodeSet(std::span<const Complex> input) {
  struct Raw {
    Complex value;
    int count;
  };
  std::vector<Raw> raw;
  for (Complex z : input) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("non-finite interpolation node");
    const double tol = node_tol(z);
    if (std::abs(z.imag()) <= tol) z.imag(0.0);
    if (std::abs(z.real()) <= tol) z.real(0.0);
    auto it = std::find_if(raw.begin(), raw.end(),
                           [&](const Raw& r) { return std::abs(r.value - z) <= node_tol(r.value); });
    if (it == raw.end()) {
      raw.push_back({z, 1});
    } else {
      ++it->count;
    }
  }
  for (const Raw& r : raw) {
    if (r.value.imag() == 0.0) continue;
    const Complex c = std::conj(r.value);
    auto it = std::find_if(raw.begin(), raw.end(), [&](const Raw& o) { return std::abs(o.value - c) <= node_tol(c); });
    if (it == raw.end() || it->count != r.count) throw InputError("interpolation nodes are not closed under conjugation");
  }

  auto rank = [](const Raw& r) {
    if (r.value == Complex(0.0)) return 0;
    return r.value.imag() == 0.0 ? 1 : 2;
  };
  std::sort(raw.begin(), raw.end(), [&](const Raw& x, const Raw& y) {
    const int rx = rank(x), ry = rank(y);
    if (rx != ry) return rx < ry;
    const double mx = std::abs(x.value), my = std::abs(y.value);
    if (mx != my) return mx > my;
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });

  for (const Raw& r : raw) {
    Cluster c;
    c.value = r.value;
    c.multiplicity = r.count;
    c.first = static_cast<int>(nodes_.size());
    if (r.value.imag() == 0.0) {
      c.kind = Kind::kReal;
    } else if (r.value.real() == 0.0) {
      c.kind = Kind::kImaginary;
    } else {
      c.kind = Kind::kComplex;
    }
    for (int t = 0; t < r.count; ++t) {
      nodes_.push_back(r.value);
      cluster_of_.push_back(static_cast<int>(clusters_.size()));
    }
    clusters_.push_back(c);
  }
}

NodeSet NodeSet::real(std::span<const double> nodes) {
  std::vector<Complex> z(nodes.begin(), nodes.end());
  return NodeSet(z);
}

NodeSet::Kind NodeSet::kind(int i) const { return clusters_.at(cluster_of_.at(i)).kind; }

bool NodeSet::all_real() const {
  return std::all_of(clusters_.begin(), clusters_.end(), [](const Cluster& c) { return c.kind == Kind::kReal; });
}

bool NodeSet::has_general_complex() const {
  return std::any_of(clusters_.begin(), clusters_.end(), [](const Cluster& c) { return c.kind == Kind::kComplex; });
}

// ---------------------------------------------------------------------------
// Matrices

Eigen::MatrixXd PolyMatrix::evaluate(std::span<const double> k) const {
  Eigen::MatrixXd out(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(i, j) = (*this)(i, j)(k);
  }
  return out;
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::kPower:
      return "power";
    case Basis::kLagrange:
      return "lagrange";
    case Basis::kScaledLagrange:
      return "scaled-lagrange";
  }
  return "?";
}

std::string to_string(NodePart p) {
  switch (p) {
    case NodePart::kAuto:
      return "auto";
    case NodePart::kImag:
      return "im";
    case NodePart::kReal:
      return "re";
  }
  return "?";
}

Eigen::MatrixXd HermiteForm::evaluate(std::span<const double> k) const { return entries.evaluate(k); }

Eigen::MatrixXcd HermiteForm::evaluate_complex(std::span<const double> k) const {
  Eigen::MatrixXcd out = entries.evaluate(k).cast<Complex>();
  if (hermitian) out += Complex(0.0, 1.0) * imag.evaluate(k).cast<Complex>();
  return out;
}

// ---------------------------------------------------------------------------
// Power basis

HermiteForm bezoutian(const PolyInS& a, const PolyInS& b) {
  const int n = std::max(a.degree(), b.degree());
  if (n < 0) throw DegenerateInputError("bezoutian: both polynomials are zero");
  const int nv = std::max(a.num_vars, b.num_vars);
  HermiteForm form;
  form.basis = Basis::kPower;
  form.num_vars = nv;
  form.entries = PolyMatrix(n, nv);
  form.scaling.values.assign(n, 1.0);
  if (n == 0) return form;

  auto coef = [nv](const PolyInS& p, int i) {
    return i < static_cast<int>(p.coeffs.size()) ? p.coeffs[i].promoted(nv) : MultiPoly(nv);
  };
  std::vector<MultiPoly> ac, bc;
  for (int i = 0; i <= n; ++i) {
    ac.push_back(coef(a, i));
    bc.push_back(coef(b, i));
  }
  auto cross = [&](int i, int j) { return ac[i] * bc[j] - ac[j] * bc[i]; };

  // (u - v) sum B_ij u^i v^j = a(u)b(v) - a(v)b(u) gives
  // B_ij = B_{i-1, j+1} - (a_i b_{j+1} - a_{j+1} b_i), with B_{-1, *} = 0 and
  // B_{*, n} = 0. Row i only reads columns > i of row i-1, so the upper
  // triangle suffices and is mirrored.
  std::vector<MultiPoly> prev(static_cast<std::size_t>(n + 1), MultiPoly(nv));
  for (int i = 0; i < n; ++i) {
    std::vector<MultiPoly> row(static_cast<std::size_t>(n + 1), MultiPoly(nv));
    for (int j = i; j < n; ++j) row[j] = prev[j + 1] - cross(i, j + 1);
    for (int j = i; j < n; ++j) {
      form.entries(i, j) = row[j];
      form.entries(j, i) = row[j];
    }
    prev = std::move(row);
  }
  return form;
}

HermiteForm hermite_power(const PolyInS& q) {
  if (q.degree() < 1) throw DegenerateInputError("hermite_power: degree must be >= 1");
  const ReImPair p = split_re_im(q);
  HermiteForm form = bezoutian(p.a, p.b);
  form.num_vars = q.num_vars;
  return form;
}

// ---------------------------------------------------------------------------
// Lagrange basis

HermiteForm hermite_lagrange(const PolyInS& q, const NodeSet& nodes, FormMode mode) {
  const int n = q.degree();
  if (n < 1) throw DegenerateInputError("hermite_lagrange: degree must be >= 1");
  if (nodes.size() != n) {
    throw InputError("hermite_lagrange: need " + std::to_string(n) + " nodes, got " + std::to_string(nodes.size()));
  }
  if (mode == FormMode::kRealSymmetric && nodes.has_general_complex()) {
    throw UnsupportedNodeError("general complex nodes require Hermitian mode");
  }

  const ReImPair parts = split_re_im(q);
  const auto& clusters = nodes.clusters();
  std::vector<TaylorAt> at_node, at_conj;
  for (const auto& c : clusters) {
    at_node.push_back({taylor(parts.a, c.value, n), taylor(parts.b, c.value, n)});
    at_conj.push_back({taylor(parts.a, std::conj(c.value), n), taylor(parts.b, std::conj(c.value), n)});
  }

  // Map node index -> (cluster, derivative order).
  std::vector<std::pair<int, int>> slot;
  for (int g = 0; g < static_cast<int>(clusters.size()); ++g) {
    for (int s = 0; s < clusters[g].multiplicity; ++s) slot.emplace_back(g, s);
  }

  const int nv = q.num_vars;
  std::vector<ComplexMultiPoly> cells(static_cast<std::size_t>(n * n), ComplexMultiPoly(nv));
  auto zero = ComplexMultiPoly(nv);
  auto tay = [&](const std::vector<ComplexMultiPoly>& v, int r) -> const ComplexMultiPoly& {
    return r < static_cast<int>(v.size()) ? v[r] : zero;
  };

  for (int i = 0; i < n; ++i) {
    const auto [g, s] = slot[i];
    const Complex x = std::conj(clusters[g].value);
    for (int j = i; j < n; ++j) {
      const auto [h, t] = slot[j];
      const Complex y = clusters[h].value;
      ComplexMultiPoly entry(nv);
      if (std::abs(x - y) <= node_tol(y)) {
        // Coincident points: Taylor coefficient of the kernel at (y, y).
        const TaylorAt& ty = at_node[h];
        for (int kk = 0; kk <= s; ++kk) {
          entry += tay(ty.a, t + 1 + kk) * tay(ty.b, s - kk);
          entry -= tay(ty.a, s - kk) * tay(ty.b, t + 1 + kk);
        }
      } else {
        // Distinct points: Leibniz rule on N(u,v) * (u - v)^-1.
        const TaylorAt& tx = at_conj[g];
        const TaylorAt& ty = at_node[h];
        const Complex inv = 1.0 / (x - y);
        for (int p = 0; p <= s; ++p) {
          for (int r = 0; r <= t; ++r) {
            const int alpha = s - p;
            const int beta = t - r;
            const double sign = alpha % 2 == 0 ? 1.0 : -1.0;
            const Complex w = sign * binom(alpha + beta, alpha) * std::pow(inv, 1 + alpha + beta);
            ComplexMultiPoly term = tay(tx.a, p) * tay(ty.b, r);
            term -= tay(ty.a, r) * tay(tx.b, p);
            entry += term * w;
          }
        }
      }
      cells[i * n + j] = entry;
      if (j != i) cells[j * n + i] = conj(entry);
    }
  }

  HermiteForm form;
  form.basis = Basis::kLagrange;
  form.num_vars = nv;
  form.nodes = nodes;
  form.scaling.values.assign(n, 1.0);
  form.entries = PolyMatrix(n, nv);
  form.imag = PolyMatrix(n, nv);
  double real_scale = 0.0;
  double imag_max = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      form.entries(i, j) = real_part(cells[i * n + j]);
      form.imag(i, j) = imag_part(cells[i * n + j]);
      real_scale = std::max(real_scale, form.entries(i, j).max_abs_coefficient());
      imag_max = std::max(imag_max, form.imag(i, j).max_abs_coefficient());
    }
  }
  if (mode == FormMode::kHermitian) {
    form.hermitian = true;
    return form;
  }
  if (imag_max > 1e-8 * std::max(real_scale, 1e-300)) {
    throw UnsupportedNodeError("node set yields a non-real Hermite matrix; use Hermitian mode");
  }
  form.imag = PolyMatrix();
  return form;
}

Eigen::MatrixXcd confluent_vandermonde(const NodeSet& nodes) {
  const int n = nodes.size();
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& c : nodes.clusters()) {
    for (int t = 0; t < c.multiplicity; ++t) {
      const int col = c.first + t;
      for (int m = t; m < n; ++m) V(m, col) = binom(m, t) * std::pow(c.value, m - t);
    }
  }
  return V;
}

double congruence_check(const RealPoly& q, const NodeSet& nodes) {
  const PolyInS qs = PolyInS::constant(q);
  const Eigen::MatrixXd HP = hermite_power(qs).evaluate({});
  const Eigen::MatrixXcd HL = hermite_lagrange(qs, nodes, FormMode::kHermitian).evaluate_complex({});
  const Eigen::MatrixXcd V = confluent_vandermonde(nodes);
  const Eigen::MatrixXcd expected = V.adjoint() * HP.cast<Complex>() * V;
  return (HL - expected).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Scaling and conditioning

ScalingDiag scaling_from_numeric(const Eigen::MatrixXcd& H) {
  const auto n = H.rows();
  if (H.cols() != n) throw InputError("scaling_from_numeric: matrix must be square");
  ScalingDiag S;
  S.values.assign(static_cast<std::size_t>(n), 1.0);
  const double scale = n > 0 ? H.cwiseAbs().maxCoeff() : 0.0;
  const double zero_tol = 1e-12 * scale;
  for (Eigen::Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) off = std::max(off, std::abs(H(i, j)));
    }
    const double h = std::max(std::abs(H(i, i)), off);
    if (!(h > zero_tol) || h == 0.0) {
      S.warning = true;
      continue;
    }
    S.values[i] = 1.0 / std::sqrt(h);
  }
  return S;
}

ScalingDiag scaling_from_numeric(const Eigen::MatrixXd& H) { return scaling_from_numeric(Eigen::MatrixXcd(H.cast<Complex>())); }

ScalingDiag scaling_from_numeric(const Eigen::MatrixXcd& H, const NodeSet& nodes) {
  const int n = static_cast<int>(H.rows());
  if (H.cols() != n || nodes.size() != n) throw InputError("scaling_from_numeric: size mismatch with node set");
  const auto& clusters = nodes.clusters();
  // Block of a cluster: itself plus its conjugate partner.
  std::vector<int> partner(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    partner[c] = static_cast<int>(c);
    for (std::size_t d = 0; d < clusters.size(); ++d) {
      if (std::abs(clusters[d].value - std::conj(clusters[c].value)) <= kNodeTolerance * (1.0 + std::abs(clusters[c].value))) {
        partner[c] = static_cast<int>(d);
      }
    }
  }
  ScalingDiag S;
  S.values.assign(static_cast<std::size_t>(n), 1.0);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& own = clusters[c];
    const auto& other = clusters[static_cast<std::size_t>(partner[c])];
    for (int i = own.first; i < own.first + own.multiplicity; ++i) {
      double h = 0.0;
      for (const auto* cl : {&own, &other}) {
        for (int j = cl->first; j < cl->first + cl->multiplicity; ++j) h = std::max(h, std::abs(H(i, j)));
      }
      if (!(h > 0.0) || !std::isfinite(h)) {
        S.warning = true;
        continue;
      }
      S.values[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(h);
    }
  }
  return S;
}

HermiteForm scaled_hermite(const PolyInS& q, const RealPoly& target, NodePart part, FormMode mode) {
  const int n = q.degree();
  if (target.degree() != n) {
    throw InputError("target polynomial must have degree " + std::to_string(n));
  }
  const NodeSet nodes = nodes_from_target(target, part);
  const Eigen::MatrixXcd ref =
      hermite_lagrange(PolyInS::constant(target), nodes, FormMode::kHermitian).evaluate_complex({});
  const ScalingDiag S = scaling_from_numeric(ref, nodes);

  HermiteForm form = hermite_lagrange(q, nodes, mode);
  form.basis = Basis::kScaledLagrange;
  form.scaling = S;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = S.values[i] * S.values[j];
      form.entries(i, j) *= w;
      if (form.hermitian) form.imag(i, j) *= w;
    }
  }
  return form;
}

HermiteForm scaled_hermite(const SystemInstance& sys, const RealPoly& target, NodePart part, FormMode mode) {
  return scaled_hermite(char_poly(sys), target, part, mode);
}

Eigen::MatrixXd power_scale(const Eigen::MatrixXd& H, double rho) {
  if (!(rho > 0.0)) throw InputError("power_scale: rho must be positive");
  const auto n = H.rows();
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::pow(rho, static_cast<double>(n - 1 - i));
  return s.asDiagonal() * H * s.asDiagonal();
}

Conditioning cond_frobenius(const Eigen::MatrixXd& H) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
  if (H.rows() == 0 || !lu.isInvertible()) return {std::numeric_limits<double>::infinity(), true};
  const Eigen::MatrixXd inv = lu.inverse();
  const double value = H.norm() * inv.norm();
  if (!std::isfinite(value)) return {std::numeric_limits<double>::infinity(), true};
  return {value, false};
}

}  // namespace hermitesof
