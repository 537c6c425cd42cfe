// hermitesof command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermitesof/benchmarks.hpp"
#include "hermitesof/errors.hpp"
#include "hermitesof/hermite.hpp"
#include "hermitesof/sdp_solver.hpp"
#include "hermitesof/stability.hpp"

namespace hs = hermitesof;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string fixture;
  std::string instance;
  std::string basis = "power";
  std::string roots;
  std::optional<double> shift;
  std::string part = "auto";
  double mu = 1.0;
  std::string k0;
  std::optional<double> lambda0;
  double p0 = hs::SolveConfig{}.p0;
  double outer_tol = hs::SolveConfig{}.outer_tol;
  double inner_tol = hs::SolveConfig{}.inner_tol;
  int max_outer = hs::SolveConfig{}.max_outer;
  int max_inner = hs::SolveConfig{}.max_inner;
  std::string penalty = "log";
  std::string inner = "newton";
  std::string gain_norm = "squared";
  std::string format = "text";
  std::string gains;
  std::string matrix;
  std::string suite = "examples";
  std::string out;
  int jobs = 1;
};

std::string num(double v) { return hs::format_number(v); }

std::string num(hs::Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  std::string s = num(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  return s + num(std::abs(z.imag())) + "i";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

double parse_real(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (tok.empty() || used != tok.size()) throw hs::InputError(what + ": '" + tok + "' is not a number");
  return v;
}

// "a", "bi", "a+bi" or "a-bi".
hs::Complex parse_complex(const std::string& tok) {
  if (tok.empty() || (tok.back() != 'i' && tok.back() != 'j')) return {parse_real(tok, "--roots"), 0.0};
  const std::string body = tok.substr(0, tok.size() - 1);
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      const double im = body.size() == i + 1 ? (body[i] == '-' ? -1.0 : 1.0) : parse_real(body.substr(i), "--roots");
      return {parse_real(body.substr(0, i), "--roots"), im};
    }
  }
  if (body.empty() || body == "+" || body == "-") return {0.0, body == "-" ? -1.0 : 1.0};
  return {0.0, parse_real(body, "--roots")};
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::string t = text;
  if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<double> out;
  if (t.find_first_not_of(" \t") == std::string::npos) return out;
  for (const auto& tok : split(t, t.find(',') != std::string::npos ? ',' : ' ')) {
    if (!tok.empty()) out.push_back(parse_real(tok, what));
  }
  return out;
}

// "[a b; c d]" or "a,b;c,d".
Eigen::MatrixXd parse_matrix(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<std::vector<double>> rows;
  for (const auto& r : split(t, ';')) rows.push_back(parse_list(r, "--matrix"));
  if (rows.empty() || rows[0].empty()) throw hs::InputError("--matrix: empty matrix");
  Eigen::MatrixXd M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw hs::InputError("--matrix: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
  }
  return M;
}

hs::Problem load_problem(const Options& o) {
  if (!o.fixture.empty() && !o.instance.empty()) throw hs::InputError("give either --fixture or --instance, not both");
  if (!o.instance.empty()) return hs::problem_from_instance(hs::load_instance(o.instance));
  if (o.fixture.empty()) throw hs::InputError("missing --fixture or --instance");
  auto p = hs::find_problem(o.fixture, hs::data_dir());
  if (!p) throw hs::InputError("unknown fixture '" + o.fixture + "' (no embedded data and no file in the data dir)");
  return *p;
}

hs::Basis parse_basis(const std::string& b) {
  if (b == "power") return hs::Basis::kPower;
  if (b == "lagrange") return hs::Basis::kScaledLagrange;
  if (b == "lagrange-raw") return hs::Basis::kLagrange;
  throw hs::InputError("--basis must be power, lagrange or lagrange-raw");
}

hs::NodePart parse_part(const std::string& p) {
  if (p == "auto") return hs::NodePart::kAuto;
  if (p == "im") return hs::NodePart::kImag;
  if (p == "re") return hs::NodePart::kReal;
  throw hs::InputError("--part must be auto, im or re");
}

// Explicit target from --roots (numbers or a registered list) or --shift.
std::optional<hs::TargetSpec> explicit_target(const Options& o) {
  if (!o.roots.empty() && o.shift) throw hs::InputError("--roots and --shift are mutually exclusive");
  if (o.shift) {
    if (!(*o.shift < 0.0)) throw hs::InputError("--shift must be negative");
    return hs::TargetSpec::mirror_shift(*o.shift);
  }
  if (o.roots.empty()) return std::nullopt;
  if (const auto* listed = hs::registry().roots(o.roots)) return hs::TargetSpec::explicit_roots(listed->roots);
  std::vector<hs::Complex> r;
  for (const auto& tok : split(o.roots, ',')) r.push_back(parse_complex(tok));
  return hs::TargetSpec::explicit_roots(std::move(r));
}

hs::RealPoly target_poly(const hs::Problem& p, const hs::TargetSpec& spec) {
  const auto poles = spec.mode == hs::TargetSpec::Mode::kMirrorShift ? hs::open_loop_poles(p) : std::vector<hs::Complex>{};
  return hs::build_target(poles, spec);
}

std::vector<double> gains_or_zero(const std::string& text, int n, const std::string& what) {
  std::vector<double> k = parse_list(text, what);
  if (k.empty()) k.assign(n, 0.0);
  if (static_cast<int>(k.size()) != n) {
    throw hs::InputError(what + " has " + std::to_string(k.size()) + " entries, expected " + std::to_string(n));
  }
  return k;
}

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

json nodes_json(const hs::NodeSet& nodes) {
  json a = json::array();
  for (const auto& z : nodes.nodes()) a.push_back(num(z));
  return a;
}

int cmd_hermite(const Options& o) {
  const hs::Problem p = load_problem(o);
  const hs::Basis basis = parse_basis(o.basis);
  hs::HermiteForm H;
  if (basis == hs::Basis::kPower) {
    H = hs::hermite_power(p.q);
  } else {
    const auto spec = explicit_target(o);
    if (!spec) throw hs::InputError("--basis " + o.basis + " needs --roots or --shift");
    const hs::RealPoly target = target_poly(p, *spec);
    if (basis == hs::Basis::kScaledLagrange) {
      H = hs::scaled_hermite(p.q, target, parse_part(o.part));
    } else {
      H = hs::hermite_lagrange(p.q, hs::nodes_from_target(target, parse_part(o.part)));
    }
  }
  const int n = H.size();
  if (o.format == "json") {
    json doc;
    doc["system"] = p.name;
    doc["basis"] = hs::to_string(H.basis);
    doc["size"] = n;
    if (H.nodes) doc["nodes"] = nodes_json(*H.nodes);
    if (H.basis == hs::Basis::kScaledLagrange) {
      json s = json::array();
      for (double v : H.scaling.values) s.push_back(num(v));
      doc["scaling"] = s;
    }
    json entries = json::array();
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        entries.push_back({{"i", i + 1}, {"j", j + 1}, {"value", hs::to_string(H.entries(i, j))}});
      }
    }
    doc["entries"] = entries;
    emit(doc.dump(2) + "\n");
    return kExitOk;
  }
  if (o.format == "csv") {
    emit("i,j,value\n");
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        emit(std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + hs::to_string(H.entries(i, j)) + "\n");
      }
    }
    return kExitOk;
  }
  std::string out = "system " + p.name + "\nbasis " + hs::to_string(H.basis) + "\nsize " + std::to_string(n) + "\n";
  if (H.nodes) {
    out += "nodes";
    for (const auto& z : H.nodes->nodes()) out += " " + num(z);
    out += "\n";
  }
  if (H.basis == hs::Basis::kScaledLagrange) {
    out += "scaling";
    for (double v : H.scaling.values) out += " " + num(v);
    out += H.scaling.warning ? "  (warning: zero governing entry)\n" : "\n";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out += "H(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + hs::to_string(H.entries(i, j)) + "\n";
    }
  }
  emit(out);
  return kExitOk;
}

struct CondRow {
  std::string form;
  std::optional<hs::Conditioning> cond;
  std::string note;
};

int cmd_cond(const Options& o) {
  std::vector<CondRow> rows;
  std::string system = "matrix";
  if (!o.matrix.empty()) {
    const Eigen::MatrixXd M = parse_matrix(o.matrix);
    if (M.rows() != M.cols()) throw hs::InputError("--matrix must be square");
    rows.push_back({"matrix", hs::cond_frobenius(M), ""});
  } else {
    const hs::Problem p = load_problem(o);
    system = p.name;
    const std::vector<double> k = gains_or_zero(o.gains, p.q.num_vars, "--K");
    const hs::RealPoly q = p.q.at(k);
    const hs::PolyInS qk = hs::PolyInS::constant(q);
    const Eigen::MatrixXd HP = hs::hermite_power(qk).evaluate({});
    rows.push_back({"H^P", hs::cond_frobenius(HP), ""});
    try {
      const double rho = hs::optimal_rho(q);
      rows.push_back({"H^P scaled", hs::cond_frobenius(hs::power_scale(HP, rho)), "rho=" + num(rho)});
    } catch (const std::exception& e) {
      rows.push_back({"H^P scaled", std::nullopt, e.what()});
    }
    const auto spec = explicit_target(o);
    const hs::RealPoly target = spec ? target_poly(p, *spec) : q;
    const hs::NodePart part = parse_part(o.part);
    try {
      const hs::NodeSet nodes = hs::nodes_from_target(target, part);
      rows.push_back({"H^L", hs::cond_frobenius(hs::hermite_lagrange(qk, nodes).evaluate({})), ""});
    } catch (const std::exception& e) {
      rows.push_back({"H^L", std::nullopt, e.what()});
    }
    try {
      rows.push_back({"H^S", hs::cond_frobenius(hs::scaled_hermite(qk, target, part).evaluate({})), ""});
    } catch (const std::exception& e) {
      rows.push_back({"H^S", std::nullopt, e.what()});
    }
  }
  auto value = [](const CondRow& r) {
    if (!r.cond) return std::string("n/a");
    return r.cond->singular ? std::string("singular") : num(r.cond->value);
  };
  if (o.format == "json") {
    json doc;
    doc["system"] = system;
    json a = json::array();
    for (const auto& r : rows) {
      json row = {{"form", r.form}, {"cond", value(r)}};
      if (!r.note.empty()) row["note"] = r.note;
      a.push_back(row);
    }
    doc["rows"] = a;
    emit(doc.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string out = "system,form,cond,note\n";
    for (const auto& r : rows) out += system + "," + r.form + "," + value(r) + "," + r.note + "\n";
    emit(out);
  } else {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-12s %-16s %s\n", "form", "cond", "note");
    out += line;
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%-12s %-16s %s\n", r.form.c_str(), value(r).c_str(), r.note.c_str());
      out += line;
    }
    emit(out);
  }
  return kExitOk;
}

hs::SolveConfig solver_config(const Options& o) {
  hs::SolveConfig sc;
  sc.lambda0 = o.lambda0;
  sc.p0 = o.p0;
  sc.outer_tol = o.outer_tol;
  sc.inner_tol = o.inner_tol;
  sc.max_outer = o.max_outer;
  sc.max_inner = o.max_inner;
  if (!(o.p0 > 0.0) || !(o.outer_tol > 0.0) || !(o.inner_tol > 0.0)) {
    throw hs::InputError("--P0 and tolerances must be positive");
  }
  if (o.penalty == "log") {
    sc.penalty = hs::PenaltyKind::kLogBarrier;
  } else if (o.penalty == "reciprocal") {
    sc.penalty = hs::PenaltyKind::kReciprocal;
  } else {
    throw hs::InputError("--penalty must be log or reciprocal");
  }
  if (o.inner == "newton") {
    sc.inner = hs::InnerMethod::kNewton;
  } else if (o.inner == "bfgs") {
    sc.inner = hs::InnerMethod::kBfgs;
  } else {
    throw hs::InputError("--inner must be newton or bfgs");
  }
  return sc;
}

json poles_json(const std::vector<hs::Complex>& poles) {
  json a = json::array();
  for (const auto& z : poles) a.push_back(num(z));
  return a;
}

int cmd_solve(const Options& o) {
  const hs::Problem p = load_problem(o);
  if (p.q.num_vars == 0) throw hs::InputError("fixture '" + p.name + "' has no gains to solve for");
  hs::ExperimentConfig cfg;
  cfg.system = p.name;
  cfg.basis = parse_basis(o.basis);
  if (cfg.basis == hs::Basis::kLagrange) throw hs::InputError("solve supports --basis power or lagrange");
  cfg.mu = o.mu;
  cfg.part = parse_part(o.part);
  cfg.target = explicit_target(o);
  if (!cfg.target) {
    if (const auto* listed = hs::registry().roots(p.name + "-target")) {
      cfg.target = hs::TargetSpec::explicit_roots(listed->roots);
    }
  }
  const int N = p.gain_rows * p.gain_cols;
  cfg.k0 = gains_or_zero(o.k0, N, "--K0");
  cfg.solver = solver_config(o);
  cfg.solver.k0 = cfg.k0;

  hs::SofProgram prog{hs::build_form(p, cfg), p.gain_rows, p.gain_cols, cfg.mu};
  if (o.gain_norm == "euclidean") {
    prog.gain_penalty = hs::GainPenalty::kEuclidean;
  } else if (o.gain_norm != "squared") {
    throw hs::InputError("--gain-norm must be squared or euclidean");
  }
  const hs::SolveReport rep = hs::solve_sof(prog, cfg.solver);
  const hs::VerifyReport ver =
      p.instance ? hs::verify_solution(*p.instance, rep.K) : hs::verify_solution(p.q, rep.k);
  const bool ok = rep.status == hs::SolveStatus::kConverged && ver.stable;

  if (o.format == "csv") {
    hs::ExperimentRow row;
    row.system = p.name;
    row.basis = cfg.basis;
    row.mu = cfg.mu;
    row.k0 = cfg.k0;
    row.outer = rep.outer_iters;
    row.inner = rep.inner_iters;
    row.linesearch = rep.linesearch_steps;
    row.K = rep.K;
    row.lambda = rep.lambda;
    row.status = hs::to_string(rep.status);
    row.stable = ver.stable;
    row.ran = true;
    emit(hs::report_csv({row}));
  } else if (o.format == "json") {
    json doc;
    doc["system"] = p.name;
    doc["basis"] = hs::to_string(cfg.basis);
    doc["mu"] = num(cfg.mu);
    doc["K0"] = hs::format_vector(cfg.k0);
    doc["status"] = hs::to_string(rep.status);
    doc["outer"] = rep.outer_iters;
    doc["inner"] = rep.inner_iters;
    doc["linesearch"] = rep.linesearch_steps;
    doc["K"] = hs::format_matrix(rep.K);
    doc["lambda"] = num(rep.lambda);
    doc["objective"] = num(rep.objective);
    doc["stable"] = ver.stable;
    doc["poles"] = poles_json(ver.poles);
    emit(doc.dump(2) + "\n");
  } else {
    std::string out;
    out += "system      " + p.name + "\n";
    out += "basis       " + hs::to_string(cfg.basis) + "\n";
    out += "mu          " + num(cfg.mu) + "\n";
    out += "K0          " + hs::format_vector(cfg.k0) + "\n";
    out += "status      " + hs::to_string(rep.status) + "\n";
    out += "outer       " + std::to_string(rep.outer_iters) + "\n";
    out += "inner       " + std::to_string(rep.inner_iters) + "\n";
    out += "linesearch  " + std::to_string(rep.linesearch_steps) + "\n";
    out += "K           " + hs::format_matrix(rep.K) + "\n";
    out += "lambda      " + num(rep.lambda) + "\n";
    out += "objective   " + num(rep.objective) + "\n";
    out += std::string("stable      ") + (ver.stable ? "yes" : "no") + "\n";
    out += "poles      ";
    for (const auto& z : ver.poles) out += " " + num(z);
    out += "\n";
    emit(out);
  }
  return ok ? kExitOk : kExitFail;
}

int cmd_verify(const Options& o) {
  const hs::Problem p = load_problem(o);
  hs::VerifyReport ver;
  std::vector<double> k;
  if (p.instance) {
    const int m = p.gain_rows, q = p.gain_cols;
    Eigen::MatrixXd K;
    if (o.gains.find(';') != std::string::npos) {
      K = parse_matrix(o.gains);
    } else {
      k = gains_or_zero(o.gains, m * q, "--K");
      K = hs::unstack_columns(k, m, q);
    }
    if (K.rows() != m || K.cols() != q) throw hs::InputError("--K has the wrong shape");
    k = hs::stack_columns(K);
    ver = hs::verify_solution(*p.instance, K);
  } else {
    k = gains_or_zero(o.gains, p.q.num_vars, "--K");
    ver = hs::verify_solution(p.q, k);
  }
  if (o.format == "json") {
    json doc;
    doc["system"] = p.name;
    doc["K"] = hs::format_vector(k);
    doc["stable"] = ver.stable;
    doc["margin"] = num(ver.margin);
    doc["poles"] = poles_json(ver.poles);
    emit(doc.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string out = "system,K,stable,margin\n";
    out += p.name + "," + hs::format_vector(k) + "," + (ver.stable ? "yes" : "no") + "," + num(ver.margin) + "\n";
    emit(out);
  } else {
    std::string out = "system  " + p.name + "\nK       " + hs::format_vector(k) + "\n";
    out += std::string("stable  ") + (ver.stable ? "yes" : "no") + "\nmargin  " + num(ver.margin) + "\npoles  ";
    for (const auto& z : ver.poles) out += " " + num(z);
    emit(out + "\n");
  }
  return ver.stable ? kExitOk : kExitFail;
}

int cmd_bench(const Options& o) {
  if (o.jobs < 1) throw hs::InputError("--jobs must be at least 1");
  const auto configs = hs::suite(o.suite);
  const auto rows = hs::run_experiment(configs, hs::data_dir(), o.jobs);
  const std::string csv = hs::report_csv(rows);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw hs::InputError("cannot write '" + o.out + "'");
    f << csv;
  }
  if (o.format == "csv") {
    emit(csv);
  } else if (o.format == "json") {
    json a = json::array();
    for (const auto& r : rows) {
      json row = {{"system", r.system}, {"basis", hs::to_string(r.basis)}, {"mu", num(r.mu)},
                  {"K0", hs::format_vector(r.k0)}, {"status", r.status}};
      if (r.ran) {
        row["outer"] = r.outer;
        row["inner"] = r.inner;
        row["linesearch"] = r.linesearch;
        row["K"] = hs::format_matrix(r.K);
        row["lambda"] = num(r.lambda);
      }
      if (r.stable) row["stable"] = *r.stable;
      a.push_back(row);
    }
    emit(a.dump(2) + "\n");
  } else {
    emit(hs::report_text(rows));
  }
  return kExitOk;
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--fixture", o.fixture, "embedded fixture or <name>.json in the data dir");
  cmd->add_option("--instance", o.instance, "path to a JSON instance file");
}

void add_target(CLI::App* cmd, Options& o) {
  cmd->add_option("--roots", o.roots, "target roots, e.g. -1,-2,-3 or -1+2i,-1-2i, or a registered list name");
  cmd->add_option("--shift", o.shift, "mirror-shift target: unstable poles moved to this real part");
  cmd->add_option("--part", o.part, "interpolation nodes from the im or re part of the target")
      ->check(CLI::IsMember({"auto", "im", "re"}));
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-matrix stability and static output feedback design"};
  app.require_subcommand(1);
  Options o;

  auto* hermite = app.add_subcommand("hermite", "print the Hermite matrix of a fixture");
  add_source(hermite, o);
  hermite->add_option("--basis", o.basis, "power, lagrange (scaled) or lagrange-raw");
  add_target(hermite, o);
  add_format(hermite, o);

  auto* cond = app.add_subcommand("cond", "Frobenius condition numbers of the Hermite matrices");
  add_source(cond, o);
  cond->add_option("--K", o.gains, "gain vector at which to evaluate (default 0)");
  cond->add_option("--matrix", o.matrix, "explicit matrix, e.g. \"[1 0; 0 1]\"");
  add_target(cond, o);
  add_format(cond, o);

  auto* solve = app.add_subcommand("solve", "design a static output feedback gain");
  add_source(solve, o);
  solve->add_option("--basis", o.basis, "power or lagrange");
  add_target(solve, o);
  solve->add_option("--mu", o.mu, "gain regularization weight");
  solve->add_option("--K0", o.k0, "initial gain vector (default 0)");
  solve->add_option("--lambda0", o.lambda0, "initial lambda (default: min eig H(K0) - max(1, 1e-9 ||H(K0)||))");
  solve->add_option("--P0", o.p0, "initial penalty parameter");
  solve->add_option("--outer-tol", o.outer_tol, "outer tolerance");
  solve->add_option("--inner-tol", o.inner_tol, "inner gradient tolerance");
  solve->add_option("--max-outer", o.max_outer, "maximum outer iterations");
  solve->add_option("--max-inner", o.max_inner, "maximum inner iterations per outer step");
  solve->add_option("--penalty", o.penalty, "log or reciprocal");
  solve->add_option("--inner", o.inner, "newton or bfgs");
  solve->add_option("--gain-norm", o.gain_norm, "squared or euclidean");
  add_format(solve, o);

  auto* verify = app.add_subcommand("verify", "closed-loop poles for a given gain");
  add_source(verify, o);
  verify->add_option("--K", o.gains, "gain vector (column-stacked) or matrix \"[a b; c d]\"");
  add_format(verify, o);

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", o.suite, "table1, table2 or examples");
  bench->add_option("--out", o.out, "write the CSV report to this file");
  bench->add_option("--jobs", o.jobs, "worker threads");
  add_format(bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*hermite) return cmd_hermite(o);
    if (*cond) return cmd_cond(o);
    if (*solve) return cmd_solve(o);
    if (*verify) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
