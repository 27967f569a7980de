#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperslice/random.hpp"
#include "hyperslice/suites.hpp"

using namespace hyperslice;

namespace {

const std::filesystem::path kConfigDir = HYPERSLICE_CONFIG_DIR;

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + HYPERSLICE_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "/base", "test.ini");
}

ErrorCode parse_error_code(const std::string& text, std::string* message = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "config parsed without error";
  return ErrorCode::Io;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperslice_test_" + name);
}

}  // namespace

TEST(Config, Defaults) {
  const auto cfg = parse("");
  EXPECT_EQ(cfg.suite, SuiteKind::All);
  EXPECT_EQ(cfg.algebra.dim(), 8u);
  EXPECT_EQ(cfg.n, 2u);
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.quadrature.angular_nodes, 64u);
  EXPECT_EQ(cfg.tolerance("bm.reproduction"), 1e-8);
}

TEST(Config, FullFile) {
  const auto cfg = parse(
      "suite = bm\nalgebra = quaternion\nn = 3\nseed = 99\nsamples = 10\n"
      "[quadrature]\nangular_nodes = 32\nradial_nodes = 16\nvolume_refinement = 2\n"
      "[tolerances]\nbm.reproduction = 1e-9\n"
      "[functions]\nf = funcs/f.json\ng = /abs/g.json\n");
  EXPECT_EQ(cfg.suite, SuiteKind::Bm);
  EXPECT_EQ(cfg.algebra.dim(), 4u);
  EXPECT_EQ(cfg.n, 3u);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.samples, 10u);
  EXPECT_EQ(cfg.quadrature.angular_nodes, 32u);
  EXPECT_EQ(cfg.quadrature.radial_nodes, 16u);
  EXPECT_EQ(cfg.quadrature.volume_refinement, 2u);
  EXPECT_EQ(cfg.tolerance("bm.reproduction"), 1e-9);
  EXPECT_EQ(cfg.tolerance("bm.c1"), 5e-3);
  EXPECT_EQ(cfg.functions.at("f"), "/base/funcs/f.json");
  EXPECT_EQ(cfg.functions.at("g"), "/abs/g.json");
}

TEST(Config, SuiteNames) {
  for (const auto& [kind, name] : kSuiteNames) EXPECT_EQ(parse_suite(name), kind);
  EXPECT_EQ(parse("suite = off-slice\n").suite, SuiteKind::OffSlice);
}

TEST(Config, Diagnostics) {
  std::string msg;
  EXPECT_EQ(parse_error_code("suite = nope\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("suite"), std::string::npos);
  EXPECT_EQ(parse_error_code("n = two\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("'n'"), std::string::npos);
  EXPECT_EQ(parse_error_code("n = 0\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("'n'"), std::string::npos);
  EXPECT_EQ(parse_error_code("seed = -3\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("seed"), std::string::npos);
  EXPECT_EQ(parse_error_code("algebra = sedenion\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("algebra"), std::string::npos);
  EXPECT_EQ(parse_error_code("colour = red\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("colour"), std::string::npos);
  EXPECT_EQ(parse_error_code("[tolerances]\nbm.nothing = 1\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("tolerances.bm.nothing"), std::string::npos);
  EXPECT_EQ(parse_error_code("[tolerances]\nbm.c1 = -1\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_EQ(parse_error_code("[quadrature]\nangular_nodes = 2\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("quadrature"), std::string::npos);
  EXPECT_EQ(parse_error_code("[extras]\nx = 1\n", &msg), ErrorCode::InvalidConfig);
  EXPECT_NE(msg.find("extras"), std::string::npos);
}

TEST(Config, SyntaxErrorReportsLine) {
  std::string msg;
  EXPECT_EQ(parse_error_code("suite = all\nseed = 1\n[broken\n", &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("test.ini:3"), std::string::npos) << msg;
}

TEST(Config, ShippedConfigsLoad) {
  for (const auto& entry : std::filesystem::directory_iterator(kConfigDir)) {
    if (entry.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
  }
  EXPECT_THROW(load_config(kConfigDir / "missing.ini"), Error);
}

TEST(Report, JsonRoundTrip) {
  SuiteReport r;
  r.suite = "bm";
  r.algebra = "octonion";
  r.seed = 12345678901234ull;
  r.checks.push_back({"bm.reproduction", true, 1.2345678901234567e-12, 1e-8, 3.5});
  r.checks.push_back({"bm.c1 \"quoted\"", false, std::numeric_limits<double>::quiet_NaN(), 5e-3, 0.0});
  r.convergence.push_back({16, 32, 3, 7.6e-7, 1.0});
  std::ostringstream os;
  write_json(os, r, {true});
  const auto back = parse_report_json(os.str());
  EXPECT_EQ(back.suite, r.suite);
  EXPECT_EQ(back.algebra, r.algebra);
  EXPECT_EQ(back.seed, r.seed);
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_EQ(back.checks[0].name, r.checks[0].name);
  EXPECT_TRUE(back.checks[0].pass);
  EXPECT_NEAR(back.checks[0].metric, r.checks[0].metric, 1e-15 * r.checks[0].metric);
  EXPECT_EQ(back.checks[0].tolerance, 1e-8);
  EXPECT_EQ(back.checks[0].wall_ms, 3.5);
  EXPECT_EQ(back.checks[1].name, r.checks[1].name);
  EXPECT_FALSE(back.checks[1].pass);
  EXPECT_TRUE(std::isnan(back.checks[1].metric));
  ASSERT_EQ(back.convergence.size(), 1u);
  EXPECT_EQ(back.convergence[0].m, 16u);
  EXPECT_EQ(back.convergence[0].r, 32u);
  EXPECT_EQ(back.convergence[0].v, 3u);
  EXPECT_NEAR(back.convergence[0].abs_error, 7.6e-7, 1e-15 * 7.6e-7);
  EXPECT_FALSE(back.pass());
}

TEST(Report, TimingsZeroedByDefault) {
  SuiteReport r;
  r.checks.push_back({"x", true, 0.0, 1.0, 42.0});
  std::ostringstream os;
  write_json(os, r);
  EXPECT_EQ(parse_report_json(os.str()).checks[0].wall_ms, 0.0);
}

TEST(Report, CsvHeaderAndRows) {
  SuiteReport r;
  r.convergence.push_back({64, 32, 3, 1e-15, 2.0});
  std::ostringstream os;
  write_csv(os, r);
  std::istringstream in(os.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "M,R,V,abs_error,wall_ms");
  EXPECT_EQ(row.substr(0, 8), "64,32,3,");
}

TEST(Report, TextSummary) {
  SuiteReport r;
  r.checks.push_back({"a", true, 0.0, 1.0, 0.0});
  r.checks.push_back({"b", false, 2.0, 1.0, 0.0});
  std::ostringstream os;
  write_text(os, r);
  EXPECT_NE(os.str().find("1/2"), std::string::npos) << os.str();
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("json"), ReportFormat::Json);
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(parse_report_format("text"), ReportFormat::Text);
  EXPECT_THROW(parse_report_format("xml"), Error);
}

TEST(Report, EmitToUnwritablePathFails) {
  SuiteReport r;
  try {
    emit_report(r, ReportFormat::Json, "/nonexistent-dir/report.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(RunSuite, AlgebraSuitePasses) {
  ExperimentConfig cfg;
  cfg.suite = SuiteKind::Algebra;
  const auto r = run_suite(cfg);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.checks.empty());
}

TEST(RunSuite, JsonIsByteIdenticalAcrossRuns) {
  ExperimentConfig cfg;
  cfg.suite = SuiteKind::Representation;
  cfg.samples = 50;
  std::ostringstream a, b;
  write_json(a, run_suite(cfg));
  write_json(b, run_suite(cfg));
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunSuite, HartogsInOneVariablePassesByFailingToExtend) {
  ExperimentConfig cfg;
  cfg.suite = SuiteKind::Hartogs;
  cfg.n = 1;
  const auto r = run_suite(cfg);
  EXPECT_TRUE(r.pass());
  bool saw_counterexample = false;
  for (const auto& c : r.checks) {
    if (c.name.find("n1_counterexample") != std::string::npos) {
      saw_counterexample = true;
      EXPECT_GT(c.metric, 0.1);
    }
  }
  EXPECT_TRUE(saw_counterexample);
}

TEST(RunSuite, ConfigFunctionArityChecked) {
  const auto path = temp_path("arity.json");
  {
    std::ofstream out(path);
    out << to_json(StemPolynomial<8>::monomial({1}, Octonion::real(1.0))).dump();
  }
  ExperimentConfig cfg;
  cfg.suite = SuiteKind::Bm;
  cfg.functions["f"] = path.string();
  try {
    EXPECT_FALSE(run_suite(cfg).pass());
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
  std::filesystem::remove(path);
}

TEST(Io, PolynomialRoundTrip) {
  Rng rng(1);
  const auto p = random_polynomial<8>(rng, 3, 3, 6);
  EXPECT_EQ(polynomial_from_json<8>(Json::parse(to_json(p).dump())), p);
  const auto q = random_polynomial<4>(rng, 2, 2, 3);
  EXPECT_EQ(polynomial_from_json<4>(to_json(q)), q);
}

TEST(Io, PolynomialAlgebraMismatch) {
  const auto q = StemPolynomial<4>::monomial({1}, Quaternion::basis(1));
  try {
    polynomial_from_json<8>(to_json(q));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlgebraMismatch);
  }
  Json j = to_json(q);
  j.erase("algebra");
  try {
    polynomial_from_json<8>(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlgebraMismatch);
  }
}

TEST(Io, PolynomialMalformed) {
  EXPECT_THROW(polynomial_from_json<8>(Json::parse(R"({"arity": 1})")), Error);
  EXPECT_THROW(polynomial_from_json<8>(Json::parse(R"({"arity": 1, "terms": [{"mu": [1, 2], "coeff": []}]})")),
               Error);
  EXPECT_THROW(load_polynomial<8>("/nonexistent/poly.json"), Error);
}

TEST(Io, ShippedPolynomialLoads) {
  const auto p = load_polynomial<8>((kConfigDir / "functions" / "cubic.json").string());
  EXPECT_EQ(p.arity(), 2u);
  EXPECT_EQ(p.degree(), 3u);
}

TEST(Io, SlicePointRoundTrip) {
  Rng rng(2);
  const auto x = random_slice_point<8>(rng, 3);
  const auto y = slice_point_from_json<8>(Json::parse(to_json(x).dump()));
  EXPECT_EQ(y.alpha, x.alpha);
  EXPECT_EQ(y.beta, x.beta);
  EXPECT_EQ(y.j.value(), x.j.value());
  EXPECT_THROW(slice_point_from_json<8>(Json::parse(R"({"alpha": [0], "beta": [1], "j": [0, 1, 0, 0]})")), Error);
}

TEST(Io, BMReportRoundTrip) {
  BMReport r{{1.0, 2.0}, {1.0, 2.5}, 0.5, 1234, 7.25};
  const auto back = bm_report_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(back.reproduced, r.reproduced);
  EXPECT_EQ(back.reference, r.reference);
  EXPECT_EQ(back.abs_error, r.abs_error);
  EXPECT_EQ(back.nodes_used, r.nodes_used);
  EXPECT_EQ(back.wall_ms, r.wall_ms);
}

TEST(Cli, TablePrintsBasisProducts) {
  const auto r = run_cli("table --algebra octonion");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("e1  +e1  -e0  +e3"), std::string::npos) << r.out;
  const auto q = run_cli("table --algebra quaternion");
  EXPECT_EQ(q.status, 0);
  EXPECT_EQ(q.out.find("e7"), std::string::npos);
}

TEST(Cli, RunAlgebraSuite) {
  const auto r = run_cli("run --config \"" + (kConfigDir / "algebra.ini").string() + "\" --format json");
  EXPECT_EQ(r.status, 0);
  const auto report = parse_report_json(r.out);
  EXPECT_EQ(report.suite, "algebra");
  EXPECT_TRUE(report.pass());
}

TEST(Cli, HartogsOneVariableConfig) {
  const auto r = run_cli("run --config \"" + (kConfigDir / "hartogs_n1.ini").string() + "\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, OverridesAndOutputFile) {
  const auto out = temp_path("report.csv");
  const auto r = run_cli("run --config \"" + (kConfigDir / "all.ini").string() +
                         "\" --suite bm --seed 3 --format csv --out \"" + out.string() + "\"");
  EXPECT_EQ(r.status, 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "M,R,V,abs_error,wall_ms");
  std::filesystem::remove(out);
}

TEST(Cli, ErrorsExitWithTwo) {
  const auto bad = temp_path("bad.ini");
  {
    std::ofstream out(bad);
    out << "suite = nonsense\n";
  }
  EXPECT_EQ(run_cli("run --config \"" + bad.string() + "\"").status, 2);
  std::filesystem::remove(bad);
  EXPECT_NE(run_cli("run --config /nonexistent.ini").status, 0);
  EXPECT_NE(run_cli("").status, 0);
}

TEST(Cli, FailingSuiteExitsWithOne) {
  const auto strict = temp_path("strict.ini");
  {
    std::ofstream out(strict);
    out << "suite = products\nsamples = 10\n[tolerances]\nproducts.witness = 1e10\n";
  }
  EXPECT_EQ(run_cli("run --config \"" + strict.string() + "\"").status, 1);
  std::filesystem::remove(strict);
}
