#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sdamp/error.hpp"
#include "sdamp/harness/config.hpp"
#include "sdamp/harness/expression.hpp"
#include "sdamp/harness/initial_conditions.hpp"
#include "sdamp/harness/run.hpp"
#include "test_util.hpp"

using namespace sdamp;
using namespace sdamp::harness;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sdamp_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("expression parser") {
  CHECK(Expression::parse("1 + 2*3")(0.0) == cplx(7.0));
  CHECK(Expression::parse("-2^2")(0.0) == cplx(-4.0));
  CHECK(Expression::parse("2^3^2")(0.0) == cplx(512.0));
  CHECK(std::abs(Expression::parse("exp(i*pi)")(0.0) - cplx(-1.0)) < 1e-15);
  CHECK(Expression::parse("1.5e1 / x")(3.0) == cplx(5.0));
  CHECK(Expression::parse("logistic(-10*x)")(-1000.0) == cplx(1.0));
  CHECK(Expression::parse("sech(x)^2")(800.0) == cplx(0.0));

  const auto [v, d] = Expression::parse("1.3*exp(-x^2)").value_and_derivative(0.7);
  CHECK(std::abs(v - 1.3 * std::exp(-0.49)) < 1e-15);
  CHECK(std::abs(d - (-2 * 0.7 * 1.3 * std::exp(-0.49))) < 1e-15);
  const auto [lv, ld] = Expression::parse("logistic(-10*x)").value_and_derivative(0.1);
  const double s = sech(0.5);
  CHECK(std::abs(ld - (-2.5 * s * s)) < 1e-14);
  CHECK(std::abs(lv - 1.0 / (1.0 + std::exp(1.0))) < 1e-15);

  for (const char* bad : {"", "1 +", "foo(x)", "(x", "x x", "2 ** 3", "exp x"})
    CHECK_THROWS_AS(Expression::parse(bad), ConfigError);
}

TEST_CASE("initial condition registry") {
  for (const auto& ic : initial_condition_list()) CHECK_NOTHROW(resolve_initial_condition(ic.name));
  CHECK(resolve_initial_condition("gauss")(0.0) == cplx(1.3));
  CHECK(resolve_initial_condition("expr:2*x")(1.5) == cplx(3.0));
  CHECK_THROWS_AS(resolve_initial_condition("nope"), ConfigError);
  CHECK(has_analytic_solution("kdv-soliton", "kdv"));
  CHECK(has_analytic_solution("zero", "eckhaus"));
  CHECK_FALSE(has_analytic_solution("gauss", "kdv"));
}

TEST_CASE("config round trip through JSON") {
  for (const auto& p : preset_list()) {
    const RunConfig cfg = preset(p.name);
    CAPTURE(p.name);
    CHECK(validation_errors(cfg).empty());
    CHECK(parse_config(dump_config(cfg)) == cfg);
  }
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"damping": {"kk": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dt": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"m": 1000})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dt": 0.03, "t_final": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"L": "wide"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": "burgers"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"L\": 10,\n \"m\": }", "cfg.json"), ConfigError);
  try {
    parse_config("{\"L\": 10,\n \"m\": }", "cfg.json");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.json:2:") != std::string::npos);
  }
  // Every violation is reported, not just the first.
  RunConfig bad;
  bad.dt = -1;
  bad.m = 7;
  bad.model = "nope";
  CHECK(validation_errors(bad).size() >= 3);
  CHECK_THROWS_AS(load_config("/nonexistent/sdamp.json"), IoError);
}

TEST_CASE("overrides apply on top of presets") {
  const RunConfig cfg = with_overrides(preset("kdv-t150"), json{{"L", 1200}, {"m", 8192}});
  CHECK(cfg.L == 1200);
  CHECK(cfg.m == 8192);
  CHECK(cfg.t_final == 150);
  const RunConfig fromfile = parse_config(R"({"preset": "eckhaus", "t_final": 5})");
  CHECK(fromfile.model == "eckhaus");
  CHECK(fromfile.t_final == 5);
}

TEST_CASE("preset values") {
  const RunConfig k = preset("kdv-t150");
  CHECK(k.model == "kdv");
  CHECK(k.L == 600);
  CHECK(k.m == 4096);
  CHECK(k.dt == 0.01);
  CHECK(k.t_final == 150);
  CHECK(k.damping.k1 == 1);
  CHECK(k.damping.f1 == 1);
  CHECK(k.damping.f2 == 1000);
  CHECK(k.damping.mode == DampingMode::Both);

  const RunConfig e = preset("eckhaus");
  CHECK(e.L == 200);
  CHECK(e.m == 1024);
  CHECK(e.dt == 0.01);
  CHECK(e.t_final == 10);
  CHECK(e.damping.f2 == 1000);
  CHECK(e.damping.k1 == 0);

  const RunConfig two = preset("two-soliton");
  CHECK(two.ic == "two-soliton");
  CHECK(resolve_initial_condition(two.ic)(0.0) == cplx(6.0));
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("table1 sweep expands to one cell per row and damping mode") {
  const auto cells = expand_sweep(preset("table1"));
  REQUIRE(cells.size() == 8);
  CHECK(cells[0].label == "L=100,m=512,damping.mode=none");
  CHECK(cells[0].config.L == 100);
  CHECK(cells[0].config.m == 512);
  CHECK(cells[7].config.L == 1200);
  CHECK(cells[7].config.m == 8192);
  CHECK(cells[7].config.damping.mode == DampingMode::Both);
  CHECK(expand_sweep(preset("kdv-t150")).size() == 1);
  CHECK(expand_sweep(preset("kdv-t150"))[0].label.empty());
}

TEST_CASE("zero initial condition writes zeros and has zero error") {
  const fs::path dir = scratch_dir("zero");
  RunConfig cfg = preset("zero");
  cfg.out_dir = dir.string();
  const RunOutcome out = run_cell(cfg);
  REQUIRE_FALSE(out.record.failed());
  REQUIRE(out.record.max_window_error.has_value());
  CHECK(*out.record.max_window_error == 0.0);
  REQUIRE(out.record.outputs.size() == 1);
  const SolutionTable t = read_solution_csv(out.record.outputs[0].path);
  CHECK(t.q.size() == cfg.m);
  for (const auto& z : t.q) CHECK(z == cplx(0.0));
  CHECK(out.record.outputs[0].sha256 == sha256_hex(slurp(out.record.outputs[0].path)));
}

TEST_CASE("solution CSV layout") {
  const Grid g = make_grid(1.0, 8);
  const CVec real = sample(g, [](double x) { return cplx(x * x); });
  const auto rows = lines(format_solution_csv(g, real));
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "x,re,im");
  CHECK(rows[1] == "-1,1,0");
  for (const auto& r : rows) CHECK(std::count(r.begin(), r.end(), ',') == 2);

  const CVec cpx = sample(g, [](double x) { return cplx(x, 1.0 + x); });
  CHECK(lines(format_solution_csv(g, cpx))[1] == "-1,-1,0");
  CHECK(lines(format_solution_csv(g, cpx))[2] == "-0.75,-0.75,0.25");
}

TEST_CASE("complex model fills the imaginary column, real models do not") {
  const fs::path dir = scratch_dir("columns");
  RunConfig nls = preset("nls-soliton");
  nls.out_dir = dir.string();
  nls.t_final = 0.01;
  nls.m = 256;
  const SolutionTable tn = read_solution_csv(run_cell(nls).record.outputs.at(0).path);
  CHECK(std::any_of(tn.q.begin(), tn.q.end(), [](cplx z) { return std::abs(z.imag()) > 1e-3; }));

  RunConfig kdv = preset("kdv-soliton");
  kdv.out_dir = dir.string();
  kdv.t_final = 0.01;
  kdv.m = 256;
  const SolutionTable tk = read_solution_csv(run_cell(kdv).record.outputs.at(0).path);
  for (const auto& z : tk.q) CHECK(z.imag() == 0.0);
}

TEST_CASE("CSV round trip and digest determinism") {
  const fs::path dir = scratch_dir("digest");
  const Grid g = make_grid(3.0, 16);
  std::mt19937_64 rng(13);
  const CVec q = random_vector(16, rng);
  const OutputFile a = emit_solution(g, q, (dir / "a.csv").string());
  const OutputFile b = emit_solution(g, q, (dir / "a.csv").string());
  CHECK(a.sha256 == b.sha256);
  CHECK(a.sha256.size() == 64);
  const SolutionTable t = read_solution_csv(a.path);
  CHECK(t.q == q);
  for (std::size_t i = 0; i < 16; ++i) CHECK(t.x[i] == g.point(i));
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(read_solution_csv((dir / "missing.csv").string()), IoError);
  CHECK_THROWS_AS(emit_solution(g, q, "/proc/definitely/not/here.csv"), IoError);
}

TEST_CASE("file reference") {
  const fs::path dir = scratch_dir("fileref");
  RunConfig cfg = preset("kdv-soliton");
  cfg.m = 256;
  cfg.t_final = 0.1;
  cfg.out_dir = dir.string();
  cfg.name = "first";
  const RunOutcome first = run_cell(cfg);
  cfg.name = "second";
  cfg.reference = ReferenceSpec{.kind = ReferenceKind::File, .path = first.record.outputs.at(0).path,
                                .L = std::nullopt, .m = std::nullopt};
  const RunOutcome second = run_cell(cfg);
  REQUIRE(second.record.max_window_error.has_value());
  CHECK(*second.record.max_window_error == 0.0);
}

TEST_CASE("sweep cells are independent of worker count") {
  RunConfig cfg = preset("kdv-soliton");
  cfg.m = 256;
  cfg.t_final = 0.05;
  cfg.write_solution = false;
  cfg.out_dir = "";
  cfg.sweep = {SweepGroup{{SweepAxis{"m", {256, 512}}}},
               SweepGroup{{SweepAxis{"dt", {0.001, 0.01}}}}};
  const auto serial = run_sweep(cfg, 1);
  const auto parallel = run_sweep(cfg, 4);
  REQUIRE(serial.size() == 4);
  REQUIRE(parallel.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(to_json(serial[i], false) == to_json(parallel[i], false));
  CHECK(exit_code(serial) == 0);
}

TEST_CASE("numerical failure is captured in the record") {
  RunConfig cfg;
  cfg.ic = "expr:50*exp(-x^2)";
  cfg.L = 10;
  cfg.m = 256;
  cfg.dt = 0.5;
  cfg.t_final = 50;
  cfg.write_solution = false;
  const RunOutcome out = run_cell(cfg);
  CHECK(out.record.failed());
  CHECK(out.record.blow_up);
  CHECK(exit_code({out.record}) == 3);
  CHECK_FALSE(to_json(out.record).contains("max_window_error"));
}

TEST_CASE("record fields") {
  RunConfig cfg = preset("kdv-soliton");
  cfg.m = 256;
  cfg.t_final = 0.1;
  cfg.write_solution = false;
  const RunOutcome out = run_cell(cfg);
  const json j = to_json(out.record);
  CHECK(j.at("steps") == 100);
  CHECK(j.contains("wall_seconds"));
  CHECK_FALSE(to_json(out.record, false).contains("wall_seconds"));
  CHECK(j.at("window") == json::array({-30.0, 30.0}));
  CHECK(j.at("max_window_error").get<double>() < 1e-5);
}
