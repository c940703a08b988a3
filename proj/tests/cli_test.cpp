#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TEMPO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "tempo_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kRampConfig =
    "run = ramp-ers\n"
    "pulse.shape = two_sided_exponential\n"
    "pulse.coherence_time = 100 ns\n"
    "grid.oversample = 1\n"
    "grid.span_factor = 32\n"
    "sweep.speed_ratio = 50\n"
    "sweep.d = 2,3\n"
    "filter.shape = gaussian\n"
    "filter.ratio = 1.0\n";

}  // namespace

TEST_CASE("repeated runs produce byte-identical output") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = write_file(dir / "ramp.cfg", kRampConfig);

  const std::string base = "ramp-ers --config " + cfg.string();
  CHECK(run_cli(base + " --out " + (dir / "a.csv").string()).exit_code == 0);
  CHECK(run_cli(base + " --out " + (dir / "b.csv").string()).exit_code == 0);
  CHECK(run_cli(base + " --jobs 4 --out " + (dir / "c.csv").string()).exit_code == 0);

  const std::string a = read_file(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == read_file(dir / "b.csv"));
  CHECK(a == read_file(dir / "c.csv"));
}

TEST_CASE("output metadata identifies the run and its configuration") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = write_file(dir / "ramp.cfg", kRampConfig);
  const CliResult r = run_cli("ramp-ers --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# run: ramp-ers") != std::string::npos);
  CHECK(r.output.find("# tool_version: 1.0.0") != std::string::npos);
  CHECK(r.output.find("# config_hash: ") != std::string::npos);
  CHECK(r.output.find("# filter_shape: gaussian") != std::string::npos);
  CHECK(r.output.find("ERS") != std::string::npos);
}

TEST_CASE("command-line overrides change the configuration hash") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = write_file(dir / "ramp.cfg", kRampConfig);
  const CliResult plain = run_cli("ramp-ers --config " + cfg.string());
  const CliResult swapped =
      run_cli("ramp-ers --filter-shape lorentzian --config " + cfg.string());
  CHECK(swapped.exit_code == 0);
  CHECK(swapped.output.find("# filter_shape: lorentzian") != std::string::npos);

  const auto hash_line = [](const std::string& text) {
    const auto at = text.find("# config_hash: ");
    return text.substr(at, text.find('\n', at) - at);
  };
  CHECK(hash_line(plain.output) != hash_line(swapped.output));
}

TEST_CASE("validate checks a config without running it") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = write_file(dir / "ramp.cfg", kRampConfig);
  const CliResult ok = run_cli("validate --config " + cfg.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("config ok: run = ramp-ers") != std::string::npos);

  const fs::path bad = write_file(dir / "bad.cfg", "run = warp-drive\n");
  CHECK(run_cli("validate --config " + bad.string()).exit_code == 2);
}

TEST_CASE("config mistakes exit with code 2") {
  const fs::path dir = scratch_dir();

  const fs::path unknown =
      write_file(dir / "unknown.cfg", std::string(kRampConfig) + "sweep.dd = 5\n");
  const CliResult r1 = run_cli("ramp-ers --config " + unknown.string());
  CHECK(r1.exit_code == 2);
  CHECK(r1.output.find("sweep.dd") != std::string::npos);

  // Subcommand and config run name must agree.
  const fs::path cfg = write_file(dir / "ramp.cfg", kRampConfig);
  CHECK(run_cli("pfm-ers --config " + cfg.string()).exit_code == 2);

  // Missing config file is a usage error.
  CHECK(run_cli("ramp-ers --config " + (dir / "absent.cfg").string()).exit_code == 2);

  const fs::path bad_unit = write_file(
      dir / "unit.cfg", "run = ramp-ers\npulse.coherence_time = 100\nsweep.speed_ratio = 50\n"
                        "sweep.d = 2,3\n");
  const CliResult r2 = run_cli("ramp-ers --config " + bad_unit.string());
  CHECK(r2.exit_code == 2);
  CHECK(r2.output.find("coherence_time") != std::string::npos);
}

TEST_CASE("unresolvable physics exits with code 3") {
  const fs::path dir = scratch_dir();
  // A filter at 5% of the photon linewidth covers well under 4 frequency bins
  // on this short window.
  const fs::path cfg = write_file(
      dir / "narrow.cfg", "run = ramp-ers\npulse.coherence_time = 100 ns\n"
                          "grid.oversample = 1\ngrid.span_factor = 32\n"
                          "sweep.speed_ratio = 50\nsweep.d = 2,3\nfilter.ratio = 0.05\n");
  CHECK(run_cli("ramp-ers --config " + cfg.string()).exit_code == 3);
}

TEST_CASE("help is available and exits cleanly") {
  const CliResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pfm-ers") != std::string::npos);
  CHECK(r.output.find("loss-sweep") != std::string::npos);
}

TEST_CASE("the basis demo emits both demodulation bases") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = write_file(
      dir / "demo.cfg", "run = basis-demo\npulse.coherence_time = 100 ns\n"
                        "grid.oversample = 1\ngrid.span_factor = 32\n"
                        "demo.d = 4\ndemo.speed_ratio = 10\nfilter.ratio = 2.0\n"
                        "basis.source = preset\n");
  const CliResult r = run_cli("basis-demo --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# basis: computational") != std::string::npos);
  CHECK(r.output.find("# basis: superposition") != std::string::npos);
  CHECK(r.output.find("p_0") != std::string::npos);
  CHECK(r.output.find("power_loss") != std::string::npos);

  // Written form: two files derived from the output stem.
  const CliResult w =
      run_cli("basis-demo --config " + cfg.string() + " --out " + (dir / "demo.csv").string());
  CHECK(w.exit_code == 0);
  CHECK(fs::exists(dir / "demo_computational.csv"));
  CHECK(fs::exists(dir / "demo_superposition.csv"));
}
