#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SDAMP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sdamp_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(run("list-presets") == 0);
  CHECK(run("run --preset zero --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "zero.csv"));
  CHECK(fs::exists(dir / "zero.record.json"));
  CHECK(run("run --preset zero --dt=-1") == 2);
  CHECK(run("run --preset no-such-preset") == 2);
  CHECK(run("run --bogus-flag") == 2);
  CHECK(run("run --config " + (dir / "missing.json").string()) == 4);

  std::ofstream(dir / "bad.json") << "{\"L\": 10,\n \"m\": }";
  CHECK(run("run --config " + (dir / "bad.json").string()) == 2);
  std::ofstream(dir / "unknown.json") << "{\"colour\": \"blue\"}";
  CHECK(run("run --config " + (dir / "unknown.json").string()) == 2);

  // Blow-up is a numerical failure.
  CHECK(run("run --ic 'expr:50*exp(-x^2)' --L 10 --modes 256 --dt 0.5 --t-final 50 --out " +
            dir.string()) == 3);
  // Unwritable output directory.
  CHECK(run("run --preset zero --out /proc/sdamp-cannot-write") == 4);
}

TEST_CASE("cli overrides reach the run") {
  const fs::path dir = scratch("override");
  CHECK(run("run --preset kdv-soliton --modes 256 --t-final 0.1 --window -5:5 --out " +
            dir.string()) == 0);
  std::ifstream in(dir / "kdv-soliton.record.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"m\": 256") != std::string::npos);
  CHECK(text.find("-5.0") != std::string::npos);
  CHECK(run("sweep --preset kdv-soliton") == 2);  // no sweep axes
}
