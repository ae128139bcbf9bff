#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "helpers.hpp"
#include "strmon/report.hpp"
#include "strmon/signal.hpp"

using namespace strmon;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("monitor exit codes and outputs") {
  fs::path dir = fresh_dir("strmon_cli_monitor");
  write_file(dir / "sig.csv", "t,x1\n0,0\n1,1\n2,2\n3,3\n4,4\n5,5\n");
  write_file(dir / "spec.str", "G[0,5] (x1 > 0)\n");

  cli::RunConfig cfg;
  cfg.signal_path = dir / "sig.csv";
  cfg.spec_path = dir / "spec.str";
  cfg.t = 1;
  cfg.dt_max = 3;
  cfg.out_dir = dir / "out";
  CHECK(cli::cmd_monitor(cfg) == cli::kExitOk);
  CHECK(fs::exists(dir / "out" / "envelope.csv"));
  auto doc = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(doc["violated"] == false);
  CHECK(doc["t"] == 1);

  // The trace violates the spec at t=0 (x1 = 0 is not > ... is satisfied at
  // margin 0; push it below with a stricter threshold).
  write_file(dir / "spec.str", "G[0,5] (x1 - 1 > 0)\n");
  cfg.t = 0;
  CHECK(cli::cmd_monitor(cfg) == cli::kExitViolated);
  CHECK(slurp(dir / "out" / "envelope.csv") == "dt,dx\n");

  cfg.spec_path = dir / "missing.str";
  CHECK(cli::cmd_monitor(cfg) == cli::kExitError);
}

TEST_CASE("default evaluation time is the trace start") {
  fs::path dir = fresh_dir("strmon_cli_default_t");
  write_file(dir / "sig.csv", "t,x1\n-2,5\n-1,5\n0,-1\n1,5\n");
  write_file(dir / "spec.str", "x1 > 0\n");
  cli::RunConfig cfg;
  cfg.signal_path = dir / "sig.csv";
  cfg.spec_path = dir / "spec.str";
  cfg.dt_max = 0;
  cfg.out_dir = dir / "out";
  CHECK(cli::cmd_monitor(cfg) == cli::kExitOk);  // evaluates at t=-2
  auto doc = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(doc["t"] == -2);
}

TEST_CASE("explain writes per-conjunct envelopes and the binding table") {
  fs::path dir = fresh_dir("strmon_cli_explain");
  write_file(dir / "sig.csv", "t,x1,x2\n0,5,3\n1,4,3\n");
  write_file(dir / "spec.str", "(x1 > 0) && (x2 > 0)\n");

  cli::RunConfig cfg;
  cfg.signal_path = dir / "sig.csv";
  cfg.spec_path = dir / "spec.str";
  cfg.t = 0;
  cfg.dt_max = 1;
  cfg.padding = "clamp";
  cfg.out_dir = dir / "out";
  cfg.labels = {"phi_a", "phi_b"};
  CHECK(cli::cmd_explain(cfg) == cli::kExitOk);
  CHECK(slurp(dir / "out" / "phi_a.csv") == "dt,dx\n0,5\n1,4\n");
  CHECK(slurp(dir / "out" / "phi_b.csv") == "dt,dx\n0,3\n1,3\n");
  CHECK(slurp(dir / "out" / "root.csv") == "dt,dx\n0,3\n1,3\n");
  CHECK(slurp(dir / "out" / "binding.csv") == "dt,binding\n0,phi_b\n1,phi_b\n");

  // A violated conjunct empties its file and marks the root violated.
  write_file(dir / "sig.csv", "t,x1,x2\n0,5,-1\n1,4,-1\n");
  CHECK(cli::cmd_explain(cfg) == cli::kExitViolated);
  CHECK(slurp(dir / "out" / "phi_b.csv") == "dt,dx\n");
  CHECK(slurp(dir / "out" / "binding.csv") == "dt,binding\n*,violated\n");
}

TEST_CASE("generate emits the case studies") {
  fs::path dir = fresh_dir("strmon_cli_generate");
  CHECK(cli::cmd_generate("f16like", dir / "f16") == cli::kExitOk);
  const std::string spec = slurp(dir / "f16" / "spec.str");
  CHECK(spec.find("U[0,300]") != std::string::npos);
  CHECK(spec.find("1600") != std::string::npos);
  CHECK(spec.find("1800") != std::string::npos);
  Signal sig = load_csv(dir / "f16" / "signal.csv");
  CHECK(sig.dim() == 3);
  CHECK(sig.t_lo() == -50);
  CHECK(sig.t_hi() == 1897);

  CHECK(cli::cmd_generate("robotaxi", dir / "taxi") == cli::kExitOk);
  const std::string rel = slurp(dir / "taxi" / "spec_rel.str");
  CHECK(rel.find("G[0,90]") != std::string::npos);
  CHECK(rel.find(";1)") != std::string::npos);  // d_min = 1
  Signal rel_sig = load_csv(dir / "taxi" / "signal_rel.csv");
  CHECK(rel_sig.dim() == 2);
  Signal veh_sig = load_csv(dir / "taxi" / "signal_vehicle.csv");
  CHECK(veh_sig.dim() == 2);
  const std::string fixed = slurp(dir / "taxi" / "spec_fixed.str");
  CHECK(fixed.find("ball(5,-3.5;1)") != std::string::npos);

  CHECK(cli::cmd_generate("unknown", dir / "x") == cli::kExitError);
}

TEST_CASE("oracle-check passes on a sound instance and flags corruption") {
  fs::path dir = fresh_dir("strmon_cli_oracle");
  write_file(dir / "sig.csv",
             "t,x1\n-3,-3\n-2,-2\n-1,-1\n0,0\n1,1\n2,2\n3,3\n");
  write_file(dir / "spec.str", "x1 >= 0\n");

  cli::OracleCheckConfig cfg;
  cfg.run.signal_path = dir / "sig.csv";
  cfg.run.spec_path = dir / "spec.str";
  cfg.run.t = 2;
  cfg.run.dt_max = 2;
  cfg.run.norm = "linf";
  cfg.run.padding = "clamp";
  cfg.run.out_dir = dir / "out";
  cfg.grid_step = 0.5;
  cfg.grid_cap = 3.0;
  CHECK(cli::cmd_oracle_check(cfg) == cli::kExitOk);
  auto verdict = nlohmann::json::parse(slurp(dir / "out" / "verdict.json"));
  CHECK(verdict["dominance_ok"] == true);
  CHECK(verdict["soundness_ok"] == true);

  // A corrupted envelope that claims too much must fail dominance.
  write_file(dir / "bogus.csv", "dt,dx\n0,2\n1,2\n2,2\n");
  cfg.envelope_path = dir / "bogus.csv";
  CHECK(cli::cmd_oracle_check(cfg) == cli::kExitError);
  verdict = nlohmann::json::parse(slurp(dir / "out" / "verdict.json"));
  CHECK(verdict["dominance_ok"] == false);
  CHECK(verdict.contains("first_violation"));

  // Budget violations exit with an error report.
  cfg.envelope_path.reset();
  cfg.run.dt_max = 7;
  CHECK(cli::cmd_oracle_check(cfg) == cli::kExitError);
  verdict = nlohmann::json::parse(slurp(dir / "out" / "verdict.json"));
  CHECK(verdict.contains("error"));
}

TEST_CASE("the built binary wires the subcommands") {
  const char* bin = std::getenv("STRMON_BIN");
  if (!bin) return;  // available only under ctest
  fs::path dir = fresh_dir("strmon_cli_bin");
  std::string cmd = std::string(bin) + " generate f16like --out " +
                    (dir / "f16").string() + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "f16" / "signal.csv"));

  cmd = std::string(bin) + " monitor --signal " +
        (dir / "f16" / "signal.csv").string() + " --spec " +
        (dir / "f16" / "spec.str").string() +
        " --t 0 --dtmax 3 --out " + (dir / "out").string() +
        " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "out" / "envelope.csv"));

  cmd = std::string(bin) + " monitor --signal missing.csv --spec " +
        (dir / "f16" / "spec.str").string() + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) != 0);
}

}  // TEST_SUITE
