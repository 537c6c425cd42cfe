#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermitesof/hermite.hpp"
#include "hermitesof/poly_core.hpp"
#include "hermitesof/sdp_solver.hpp"
#include "hermitesof/stability.hpp"
#include "hermitesof/system.hpp"

namespace hermitesof {

/// Characteristic polynomial printed to 8 significant digits, possibly
/// symbolic in the gains. `gain_rows` x `gain_cols` is the gain shape.
struct PolyFixture {
  std::string name;
  PolyInS q;
  int gain_rows = 1;
  int gain_cols = 1;
  std::string note;
};

struct RootList {
  std::string name;
  std::vector<Complex> roots;
};

struct GainFixture {
  std::string name;
  std::vector<double> k;
};

class Registry {
 public:
  std::vector<SystemInstance> instances;
  std::vector<PolyFixture> polynomials;
  std::vector<RootList> root_lists;
  std::vector<GainFixture> gains;

  const SystemInstance* instance(const std::string& name) const;
  const PolyFixture* polynomial(const std::string& name) const;
  const RootList* roots(const std::string& name) const;
  const GainFixture* gain(const std::string& name) const;
  std::vector<std::string> names() const;
};

/// Embedded fixtures. Built once; safe to share across threads.
const Registry& registry();

/// JSON instance file {"name", "A", "B", "C"}, matrices row-major.
/// Throws ParseError naming the offending field and ValidationError on
/// inconsistent dimensions.
SystemInstance load_instance(const std::filesystem::path& path);
SystemInstance parse_instance(const std::string& text, const std::string& origin = "<string>");
void save_instance(const SystemInstance& sys, const std::filesystem::path& path);
std::string instance_to_json(const SystemInstance& sys);

/// HERMITESOF_DATA_DIR when set, otherwise the current directory.
std::filesystem::path data_dir();

/// A closed-loop characteristic polynomial together with its gain shape.
struct Problem {
  std::string name;
  PolyInS q;
  int gain_rows = 1;
  int gain_cols = 1;
  std::optional<SystemInstance> instance;
};

Problem problem_from_instance(const SystemInstance& sys);
Problem problem_from_fixture(const PolyFixture& fx);

/// Looks up an embedded instance, then an embedded polynomial, then
/// `<dir>/<name>.json`. Returns nullopt when none exists.
std::optional<Problem> find_problem(const std::string& name, const std::filesystem::path& dir);

/// Open-loop poles: roots of q at k = 0.
std::vector<Complex> open_loop_poles(const Problem& p);

struct ExperimentConfig {
  std::string system;
  Basis basis = Basis::kPower;  // kPower or kScaledLagrange
  double mu = 1.0;
  std::vector<double> k0;       // empty means zeros
  std::optional<TargetSpec> target;  // Lagrange only; default mirror-shift
  NodePart part = NodePart::kAuto;
  SolveConfig solver;
};

struct ExperimentRow {
  std::string system;
  Basis basis = Basis::kPower;
  double mu = 0.0;
  std::vector<double> k0;
  int outer = 0;
  int inner = 0;
  int linesearch = 0;
  Eigen::MatrixXd K;
  double lambda = 0.0;
  std::string status;
  std::optional<bool> stable;  // absent when no solve took place
  bool ran = false;
};

/// Runs every config; failures become rows, never exceptions. Rows come
/// back in input order regardless of `jobs`.
std::vector<ExperimentRow> run_experiment(const std::vector<ExperimentConfig>& configs,
                                          const std::filesystem::path& dir, int jobs = 1);

/// Builds the Hermite form for one config (power or scaled Lagrange).
HermiteForm build_form(const Problem& p, const ExperimentConfig& cfg);

/// Named suites: "table1", "table2", "examples".
std::vector<ExperimentConfig> suite(const std::string& name);

inline constexpr const char* kCsvHeader = "system,basis,mu,K0,outer,inner,linesearch,K,lambda,status,stable";

std::string format_number(double v, int digits = 8);
std::string format_vector(const std::vector<double>& v, int digits = 8);
std::string format_matrix(const Eigen::MatrixXd& K, int digits = 8);

std::string report_csv(const std::vector<ExperimentRow>& rows);
std::string report_text(const std::vector<ExperimentRow>& rows);

}  // namespace hermitesof
