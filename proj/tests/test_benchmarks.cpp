#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hermitesof/benchmarks.hpp"
#include "hermitesof/errors.hpp"
#include "oracles.hpp"

using namespace hermitesof;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hermitesof-bench-" + std::to_string(oracle::uniform_int(0, 1 << 30)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path / name;
    std::ofstream(p) << text;
    return p;
  }
};

std::vector<ExperimentConfig> nn1_configs() {
  std::vector<ExperimentConfig> out;
  for (const ExperimentConfig& c : suite("table1")) {
    if (c.system == "NN1") out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("registry fixtures") {
  const Registry& reg = registry();
  const SystemInstance* nn1 = reg.instance("NN1");
  REQUIRE(nn1 != nullptr);
  CHECK(nn1->A.row(2) == Eigen::RowVector3d(0.0, 13.0, 0.0));
  CHECK(nn1->B.rows() == 3);
  CHECK(nn1->C.rows() == 2);

  const PolyInS& nn6 = reg.polynomial("NN6")->q;
  CHECK(nn6[0] == MultiPoly::variable(4, 0) * 95113415.0);
  CHECK(nn6.degree() == 9);
  CHECK(reg.polynomial("NN5-open-loop")->q[0].constant_term() == 6.3000000);
  CHECK(reg.polynomial("AC4")->gain_cols == 2);

  CHECK(reg.roots("NN6-sigma1")->roots.size() == 9);
  for (const char* s : {"PAS-sigma0", "PAS-sigma1", "PAS-sigma2", "PAS-sigma3"}) CHECK(reg.roots(s)->roots.size() == 5);
  CHECK(reg.instance("AC7") == nullptr);
  CHECK(reg.polynomial("nope") == nullptr);
  const std::vector<std::string> names = reg.names();
  CHECK(std::find(names.begin(), names.end(), "NN1") != names.end());
  CHECK(std::find(names.begin(), names.end(), "NN6") != names.end());
}

TEST_CASE("AC4 symbolic fixture is consistent with its open-loop polynomial") {
  const PolyInS& q = registry().polynomial("AC4")->q;
  const PolyInS& open = registry().polynomial("AC4-open-loop")->q;
  for (int d = 0; d <= 4; ++d) CHECK(q[d].constant_term() == doctest::Approx(open[d].constant_term()).epsilon(1e-12));
}

TEST_CASE("instance files round trip") {
  TempDir dir;
  const SystemInstance& nn1 = *registry().instance("NN1");
  const fs::path p = dir.path / "NN1.json";
  save_instance(nn1, p);
  const SystemInstance back = load_instance(p);
  CHECK(back.name == "NN1");
  CHECK(back.A == nn1.A);
  CHECK(back.B == nn1.B);
  CHECK(back.C == nn1.C);
  CHECK(parse_instance(instance_to_json(nn1)).A == nn1.A);

  for (int trial = 0; trial < 20; ++trial) {
    SystemInstance s;
    s.name = "r" + std::to_string(trial);
    const int n = oracle::uniform_int(1, 5), m = oracle::uniform_int(1, 3), q = oracle::uniform_int(1, 3);
    s.A = Eigen::MatrixXd::NullaryExpr(n, n, [] { return oracle::uniform(-1e3, 1e3); });
    s.B = Eigen::MatrixXd::NullaryExpr(n, m, [] { return oracle::uniform(-1.0, 1.0); });
    s.C = Eigen::MatrixXd::NullaryExpr(q, n, [] { return oracle::uniform(-1e-3, 1e-3); });
    const SystemInstance r = parse_instance(instance_to_json(s));
    CHECK(r.A == s.A);
    CHECK(r.B == s.B);
    CHECK(r.C == s.C);
  }
}

TEST_CASE("instance file errors") {
  TempDir dir;
  CHECK_THROWS_AS(load_instance(dir.path / "missing.json"), ParseError);
  CHECK_THROWS_AS(parse_instance("{not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "A": [[1]], "B": [[1]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "A": [[1, "a"]], "B": [[1]], "C": [[1]]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "A": [[1, 2], [3]], "B": [[1], [1]], "C": [[1, 1]]})"), ParseError);
  // B has the wrong number of rows.
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "A": [[1, 0], [0, 1]], "B": [[1]], "C": [[1, 1]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "A": [[1, 0], [0, 1]], "B": [[1], [1]], "C": [[1]]})"),
                  ValidationError);
  try {
    parse_instance(R"({"name": "x", "A": [[1]], "B": [[1]], "C": "oops"})", "bad.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("bad.json") != std::string::npos);
    CHECK(what.find("'C'") != std::string::npos);
  }
}

TEST_CASE("find_problem looks in the registry, then in the data directory") {
  TempDir dir;
  CHECK(find_problem("NN1", dir.path)->instance.has_value());
  const std::optional<Problem> nn6 = find_problem("NN6", dir.path);
  REQUIRE(nn6);
  CHECK(nn6->gain_cols == 4);
  CHECK_FALSE(nn6->instance.has_value());
  CHECK_FALSE(find_problem("AC7", dir.path).has_value());

  SystemInstance s = *registry().instance("NN1");
  s.name = "AC7";
  save_instance(s, dir.path / "AC7.json");
  const std::optional<Problem> ac7 = find_problem("AC7", dir.path);
  REQUIRE(ac7);
  CHECK(ac7->q[0] == char_poly(s)[0]);

  const std::vector<Complex> poles = open_loop_poles(*find_problem("AC4-open-loop", dir.path));
  CHECK(poles.size() == 4);
}

TEST_CASE("run_experiment on an empty list") {
  CHECK(run_experiment({}, ".", 1).empty());
  CHECK(report_csv({}) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("NN1 rows of the table suite") {
  const std::vector<ExperimentConfig> cfgs = nn1_configs();
  REQUIRE(cfgs.size() == 2);
  const std::vector<ExperimentRow> rows = run_experiment(cfgs, ".", 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].basis == Basis::kPower);
  CHECK(rows[1].basis == Basis::kScaledLagrange);
  for (const ExperimentRow& r : rows) {
    CHECK(r.ran);
    CHECK(r.status == "converged");
    REQUIRE(r.stable.has_value());
    CHECK(*r.stable);
    CHECK(r.k0 == std::vector<double>{0.0, 30.0});
    CHECK(r.inner >= r.outer);
    CHECK(r.linesearch >= r.inner);
  }
  CHECK(rows[0].mu == 1e-3);
  CHECK(rows[1].mu == 1e-4);
}

TEST_CASE("systems without data become skipped rows") {
  TempDir dir;
  std::vector<ExperimentConfig> cfgs = suite("table2");
  REQUIRE(cfgs.size() == 4);
  const std::vector<ExperimentRow> rows = run_experiment(cfgs, dir.path, 2);
  REQUIRE(rows.size() == 4);
  for (const ExperimentRow& r : rows) {
    CHECK(r.system == "PAS");
    CHECK_FALSE(r.ran);
    CHECK(r.status == "skipped: data not supplied");
    CHECK_FALSE(r.stable.has_value());
  }
  const std::string csv = report_csv(rows);
  CHECK(csv.find("PAS,lagrange,1e-08,[0 0 0],-,-,-,-,-,skipped: data not supplied,-") != std::string::npos);
}

TEST_CASE("failures become rows") {
  ExperimentConfig bad;
  bad.system = "NN1";
  bad.basis = Basis::kPower;
  bad.mu = 1e-3;
  bad.k0 = {1.0, 2.0, 3.0};
  const std::vector<ExperimentRow> rows = run_experiment({bad}, ".", 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status.rfind("error", 0) == 0);
}

TEST_CASE("reports are deterministic and independent of the job count") {
  std::vector<ExperimentConfig> cfgs = suite("examples");
  const std::string one = report_csv(run_experiment(cfgs, ".", 1));
  const std::string again = report_csv(run_experiment(cfgs, ".", 1));
  const std::string four = report_csv(run_experiment(cfgs, ".", 4));
  CHECK(one == again);
  CHECK(one == four);
  CHECK(one.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(report_text(run_experiment(cfgs, ".", 3)) == report_text(run_experiment(cfgs, ".", 1)));
}

TEST_CASE("number and matrix formatting") {
  CHECK(format_number(0.98287221) == "0.98287221");
  CHECK(format_number(1e-5) == "1e-05");
  CHECK(format_number(-1.0034673e12) == "-1.0034673e+12");
  CHECK(format_number(30.0) == "30");
  CHECK(format_vector({7.992413, 72.170847}) == "[7.992413 72.170847]");
  CHECK(format_vector({}) == "[]");
  Eigen::MatrixXd K(2, 2);
  K << 1, 2, 3, 4;
  CHECK(format_matrix(K) == "[1 2; 3 4]");
  CHECK(format_matrix(Eigen::MatrixXd::Zero(1, 3)) == "[0 0 0]");
}
