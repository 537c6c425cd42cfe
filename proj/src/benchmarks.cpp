#include "hermitesof/benchmarks.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hermitesof/errors.hpp"

namespace hermitesof {
namespace {

using json = nlohmann::json;

// c0 + sum_v c[v] k_{v+1}
MultiPoly affine(int nv, double c0, std::initializer_list<double> c) {
  MultiPoly p = MultiPoly::constant(nv, c0);
  int v = 0;
  for (double cv : c) {
    if (cv != 0.0) p += MultiPoly::variable(nv, v, cv);
    ++v;
  }
  return p;
}

PolyInS numeric(std::vector<double> ascending) {
  return PolyInS::constant(RealPoly(std::move(ascending)), 0);
}

std::vector<Complex> real_roots(std::initializer_list<double> r) {
  std::vector<Complex> out;
  for (double x : r) out.emplace_back(x, 0.0);
  return out;
}

Registry build_registry() {
  Registry reg;

  SystemInstance nn1;
  nn1.name = "NN1";
  nn1.A.resize(3, 3);
  nn1.A << 0, 1, 0, 0, 0, 1, 0, 13, 0;
  nn1.B.resize(3, 1);
  nn1.B << 0, 0, 1;
  nn1.C.resize(2, 3);
  nn1.C << 0, 5, -1, -1, -1, 0;
  reg.instances.push_back(nn1);

  {
    const int nv = 2;
    std::vector<MultiPoly> c{
        affine(nv, -66.837750, {-980.62500, -867.10818}),
        affine(nv, -1330.6306, {-19613.407, -18322.789}),
        affine(nv, 130.03210, {-18.135000, -19612.500}),
        affine(nv, 150.92600, {}),
        affine(nv, 1.0, {}),
    };
    reg.polynomials.push_back({"AC4", PolyInS(std::move(c), nv), 1, 2, "closed-loop, gains K = [k1 k2]"});
  }
  reg.polynomials.push_back(
      {"AC4-open-loop", numeric({-66.837750, -1330.6306, 130.03210, 150.92600, 1.0}), 1, 0, "det(sI - A)"});
  reg.polynomials.push_back({"NN5-open-loop",
                             numeric({6.3000000, -448.72180, 1.2196400, 2249.4849, 458.42510, 96.515330, 10.171000, 1.0}),
                             1, 0, "det(sI - A)"});
  {
    const int nv = 4;
    std::vector<MultiPoly> c{
        affine(nv, 0.0, {95113415.0, 0, 0, 0}),
        affine(nv, -4315.5562e5, {0, 95113415.0, 3133948.9, 0}),
        affine(nv, -1562.6281e5, {-12660338.0, 0, 3174671.8, 3133948.9}),
        affine(nv, 49276365.0, {0, -12660338.0, 35714.763, 3174671.8}),
        affine(nv, 20216420.0, {-57334.489, 0, 36171.693, 35714.763}),
        affine(nv, 1149834.9, {0, -57334.489, 15.132810, 36171.693}),
        affine(nv, 91133.935, {-14.685000, 0, 14.688300, 15.132810}),
        affine(nv, 4007.6500, {0, -14.685000, 0, 14.688300}),
        affine(nv, 23.300000, {}),
        affine(nv, 1.0, {}),
    };
    reg.polynomials.push_back({"NN6", PolyInS(std::move(c), nv), 1, 4, "closed-loop, gains K = [k1 k2 k3 k4]"});
  }

  reg.root_lists.push_back({"NN1-target", real_roots({-1.0, -2.0, -3.0})});
  reg.root_lists.push_back({"AC4-target", real_roots({-5.0000e-2, -5.0000e-2, -3.4552, -150.00})});
  reg.root_lists.push_back({"NN6-sigma0",
                            {{2.7303, 0}, {0, 0}, {-7.2028e-2, 60.804}, {-7.2028e-2, -60.804}, {-1.0785e-1, 15.677},
                             {-1.0785e-1, -15.677}, {-2.6764, 0}, {-3.3000, 0}, {-19.694, 0}}});
  reg.root_lists.push_back({"NN6-sigma1",
                            {{-1.0000e-3, 1.0}, {-1.0000e-3, -1.0}, {-7.2028e-2, 60.804}, {-7.2028e-2, -60.804},
                             {-1.0785e-1, 15.677}, {-1.0785e-1, -15.677}, {-2.6764, 0}, {-3.3000, 0}, {-19.694, 0}}});
  const Complex pas_pair(-36.646, 523.05);
  auto pas = [&](double r1, double r2) {
    return std::vector<Complex>{{r1, 0}, {r2, 0}, {-9.5970e-1, 0}, pas_pair, std::conj(pas_pair)};
  };
  reg.root_lists.push_back({"PAS-sigma0", pas(0.0, 0.0)});
  reg.root_lists.push_back({"PAS-sigma1", pas(-5.0000e-2, -5.0000e-2)});
  reg.root_lists.push_back({"PAS-sigma2", pas(-1.0000e-3, -1.0000e-3)});
  reg.root_lists.push_back({"PAS-sigma3", pas(0.0, -1.0000e-4)});

  reg.gains.push_back({"NN6-random", {-4.3264e-1, -1.6656, 1.2537e-1, 2.8772e-1}});
  return reg;
}

template <class T>
const T* find_named(const std::vector<T>& items, const std::string& name) {
  for (const T& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

Eigen::MatrixXd parse_matrix(const json& doc, const std::string& field, const std::string& origin) {
  auto fail = [&](const std::string& what) { throw ParseError(origin + ": field '" + field + "': " + what); };
  if (!doc.contains(field)) fail("missing");
  const json& m = doc.at(field);
  if (!m.is_array()) fail("expected an array of rows");
  const auto rows = m.size();
  if (rows == 0) fail("empty matrix");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!m[i].is_array()) fail("row " + std::to_string(i + 1) + " is not an array");
    if (i == 0) cols = m[i].size();
    if (m[i].size() != cols) fail("row " + std::to_string(i + 1) + " has " + std::to_string(m[i].size()) +
                                  " entries, expected " + std::to_string(cols));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!m[i][j].is_number()) {
        fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not a number");
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j].get<double>();
    }
  }
  return out;
}

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

ExperimentConfig make(const std::string& system, Basis basis, double mu, std::vector<double> k0,
                      std::optional<TargetSpec> target = std::nullopt) {
  ExperimentConfig c;
  c.system = system;
  c.basis = basis;
  c.mu = mu;
  c.k0 = std::move(k0);
  c.target = std::move(target);
  return c;
}

TargetSpec listed(const std::string& name) {
  return TargetSpec::explicit_roots(registry().roots(name)->roots);
}

ExperimentRow run_one(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ExperimentRow row;
  row.system = cfg.system;
  row.basis = cfg.basis;
  row.mu = cfg.mu;
  row.k0 = cfg.k0;
  const std::optional<Problem> problem = find_problem(cfg.system, dir);
  if (!problem) {
    row.status = "skipped: data not supplied";
    return row;
  }
  try {
    const int N = problem->gain_rows * problem->gain_cols;
    if (row.k0.empty()) row.k0.assign(N, 0.0);
    SofProgram prog{build_form(*problem, cfg), problem->gain_rows, problem->gain_cols, cfg.mu};
    SolveConfig sc = cfg.solver;
    sc.k0 = row.k0;
    const SolveReport rep = solve_sof(prog, sc);
    row.ran = true;
    row.outer = rep.outer_iters;
    row.inner = rep.inner_iters;
    row.linesearch = rep.linesearch_steps;
    row.K = rep.K;
    row.lambda = rep.lambda;
    row.status = to_string(rep.status);
    row.stable = verify_solution(problem->q, rep.k).stable;
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

const SystemInstance* Registry::instance(const std::string& name) const { return find_named(instances, name); }
const PolyFixture* Registry::polynomial(const std::string& name) const { return find_named(polynomials, name); }
const RootList* Registry::roots(const std::string& name) const { return find_named(root_lists, name); }
const GainFixture* Registry::gain(const std::string& name) const { return find_named(gains, name); }

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& x : instances) out.push_back(x.name);
  for (const auto& x : polynomials) out.push_back(x.name);
  return out;
}

const Registry& registry() {
  static const Registry reg = build_registry();
  return reg;
}

SystemInstance parse_instance(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  SystemInstance sys;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError(origin + ": field 'name': expected a string");
    sys.name = doc["name"].get<std::string>();
  }
  sys.A = parse_matrix(doc, "A", origin);
  sys.B = parse_matrix(doc, "B", origin);
  sys.C = parse_matrix(doc, "C", origin);
  sys.source = SystemInstance::Source::kFile;
  try {
    sys.validate();
  } catch (const InputError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return sys;
}

SystemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  SystemInstance sys = parse_instance(buf.str(), path.string());
  if (sys.name.empty()) sys.name = path.stem().string();
  return sys;
}

std::string instance_to_json(const SystemInstance& sys) {
  json doc;
  doc["name"] = sys.name;
  doc["A"] = matrix_json(sys.A);
  doc["B"] = matrix_json(sys.B);
  doc["C"] = matrix_json(sys.C);
  return doc.dump(2);
}

void save_instance(const SystemInstance& sys, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << instance_to_json(sys) << '\n';
}

std::filesystem::path data_dir() {
  const char* env = std::getenv("HERMITESOF_DATA_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::current_path();
}

Problem problem_from_instance(const SystemInstance& sys) {
  sys.validate();
  return {sys.name, char_poly(sys), sys.inputs(), sys.outputs(), sys};
}

Problem problem_from_fixture(const PolyFixture& fx) {
  return {fx.name, fx.q, fx.gain_rows, fx.gain_cols, std::nullopt};
}

std::optional<Problem> find_problem(const std::string& name, const std::filesystem::path& dir) {
  const Registry& reg = registry();
  if (const SystemInstance* sys = reg.instance(name)) return problem_from_instance(*sys);
  if (const PolyFixture* fx = reg.polynomial(name)) return problem_from_fixture(*fx);
  const std::filesystem::path file = dir / (name + ".json");
  if (std::filesystem::exists(file)) return problem_from_instance(load_instance(file));
  return std::nullopt;
}

std::vector<Complex> open_loop_poles(const Problem& p) {
  const std::vector<double> zero(static_cast<std::size_t>(p.q.num_vars), 0.0);
  return roots(p.q.at(zero));
}

HermiteForm build_form(const Problem& p, const ExperimentConfig& cfg) {
  if (cfg.basis == Basis::kPower) return hermite_power(p.q);
  const TargetSpec spec = cfg.target.value_or(TargetSpec::mirror_shift());
  const std::vector<Complex> poles =
      spec.mode == TargetSpec::Mode::kMirrorShift ? open_loop_poles(p) : std::vector<Complex>{};
  const RealPoly target = build_target(poles, spec);
  return scaled_hermite(p.q, target, cfg.part);
}

std::vector<ExperimentRow> run_experiment(const std::vector<ExperimentConfig>& configs,
                                          const std::filesystem::path& dir, int jobs) {
  std::vector<ExperimentRow> rows(configs.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) rows[i] = run_one(configs[i], dir);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<ExperimentConfig> suite(const std::string& name) {
  const Basis P = Basis::kPower;
  const Basis L = Basis::kScaledLagrange;
  if (name == "table1") {
    return {
        make("AC7", P, 1, {0, 0}),          make("AC7", L, 1e-5, {0, 0}),
        make("AC17", P, 1, {0, 0}),         make("AC17", L, 1, {0, 0}),
        make("REA3", P, 1, {0, 0, 0}),      make("REA3", P, 1e-5, {0, 0, 0}),
        make("REA3", L, 1e-2, {0, 0, 0}),   make("UWV", P, 1, {0, 0, 0, 0}),
        make("UWV", L, 1, {0, 0, 0, 0}),    make("NN5", P, 1, {10, 5}),
        make("NN5", L, 1e-5, {10, 5}),      make("NN1", P, 1e-3, {0, 30}),
        make("NN1", L, 1e-4, {0, 30}),      make("HE1", P, 1, {1, 1}),
        make("HE1", L, 1e-1, {1, 1}),
    };
  }
  if (name == "table2") {
    return {
        make("PAS", P, 1e-3, {0, 0, 0}),
        make("PAS", L, 1e-8, {0, 0, 0}, listed("PAS-sigma1")),
        make("PAS", L, 1e-5, {0, 0, 0}, listed("PAS-sigma2")),
        make("PAS", L, 1e-2, {0, 0, 0}, listed("PAS-sigma3")),
    };
  }
  if (name == "examples") {
    return {
        make("AC4", P, 1e-5, {0, 0}),
        make("AC4", L, 1e-5, {0, 0}, listed("AC4-target")),
        make("AC4", P, 1e-1, {0, 0}),
        make("NN6", P, 1e-5, {0, 0, 0, 0}),
        make("NN6", L, 1e-5, {0, 0, 0, 0}, listed("NN6-sigma1")),
        make("NN1", P, 1e-3, {0, 30}),
        make("NN1", L, 1e-4, {0, 30}, listed("NN1-target")),
    };
  }
  throw InputError("unknown suite '" + name + "' (expected table1, table2 or examples)");
}

std::string format_number(double v, int digits) {
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_vector(const std::vector<double>& v, int digits) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_number(v[i], digits);
  }
  return out + "]";
}

std::string format_matrix(const Eigen::MatrixXd& K, int digits) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      if (j) out += ' ';
      out += format_number(K(i, j), digits);
    }
  }
  return out + "]";
}

namespace {

struct Cells {
  std::vector<std::string> v;
};

Cells cells(const ExperimentRow& r) {
  const std::string basis = r.basis == Basis::kPower ? "power" : "lagrange";
  if (!r.ran) {
    return {{r.system, basis, format_number(r.mu), format_vector(r.k0), "-", "-", "-", "-", "-", csv_safe(r.status),
             "-"}};
  }
  return {{r.system, basis, format_number(r.mu), format_vector(r.k0), std::to_string(r.outer), std::to_string(r.inner),
           std::to_string(r.linesearch), format_matrix(r.K), format_number(r.lambda), csv_safe(r.status),
           r.stable ? (*r.stable ? "yes" : "no") : "-"}};
}

}  // namespace

std::string report_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    const Cells c = cells(r);
    for (std::size_t i = 0; i < c.v.size(); ++i) {
      if (i) out += ',';
      out += c.v[i];
    }
    out += '\n';
  }
  return out;
}

std::string report_text(const std::vector<ExperimentRow>& rows) {
  std::vector<std::vector<std::string>> table;
  {
    std::vector<std::string> header;
    std::stringstream hs(kCsvHeader);
    for (std::string h; std::getline(hs, h, ',');) header.push_back(h);
    table.push_back(header);
  }
  for (const auto& r : rows) table.push_back(cells(r).v);
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : table) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size(), ' ');
    }
    out += line + '\n';
  }
  return out;
}

}  // namespace hermitesof
