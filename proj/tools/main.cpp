#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_run_options(CLI::App* cmd, strmon::cli::RunConfig& cfg,
                     std::int64_t& t_value, bool& t_set,
                     std::string& labels_csv) {
  cmd->add_option("--signal", cfg.signal_path, "Trace CSV (header t,x1,...,xn)")
      ->required();
  cmd->add_option("--spec", cfg.spec_path, "Specification file")->required();
  cmd->add_option("--t", t_value, "Evaluation time (default: trace start)")
      ->each([&t_set](const std::string&) { t_set = true; });
  cmd->add_option("--dtmax", cfg.dt_max, "Temporal perturbation sweep bound");
  cmd->add_option("--norm", cfg.norm, "Vector norm: l2 or linf")
      ->check(CLI::IsMember({"l2", "linf"}));
  cmd->add_option("--padding", cfg.padding, "Domain policy: strict or clamp")
      ->check(CLI::IsMember({"strict", "clamp"}));
  cmd->add_option("--out", cfg.out_dir, "Output directory");
  cmd->add_option("--jobs", cfg.jobs, "Worker cap (outputs are identical)");
  cmd->add_flag("--naive", cfg.naive, "Force naive window scans");
  cmd->add_option("--labels", labels_csv,
                  "Comma-separated names for the top-level conjuncts");
}

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size() && !csv.empty()) {
    const std::size_t pos = csv.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(csv.substr(start));
      break;
    }
    out.push_back(csv.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-valued spatiotemporal robustness monitoring for STL"};
  app.require_subcommand(1);

  strmon::cli::RunConfig mon_cfg;
  std::int64_t mon_t = 0;
  bool mon_t_set = false;
  std::string mon_labels;
  CLI::App* mon = app.add_subcommand(
      "monitor", "Compute the robustness envelope of a trace");
  add_run_options(mon, mon_cfg, mon_t, mon_t_set, mon_labels);

  strmon::cli::RunConfig exp_cfg;
  std::int64_t exp_t = 0;
  bool exp_t_set = false;
  std::string exp_labels;
  CLI::App* exp = app.add_subcommand(
      "explain", "Per-conjunct envelopes and the binding conjunct per level");
  add_run_options(exp, exp_cfg, exp_t, exp_t_set, exp_labels);

  std::string gen_case;
  std::string gen_out = ".";
  CLI::App* gen =
      app.add_subcommand("generate", "Emit a synthetic case study");
  gen->add_option("case", gen_case, "f16like or robotaxi")->required();
  gen->add_option("--out", gen_out, "Output directory");

  strmon::cli::OracleCheckConfig chk_cfg;
  std::int64_t chk_t = 0;
  bool chk_t_set = false;
  std::string chk_labels;
  std::string chk_envelope;
  CLI::App* chk = app.add_subcommand(
      "oracle-check",
      "Check the monitor against the brute-force ground truth");
  add_run_options(chk, chk_cfg.run, chk_t, chk_t_set, chk_labels);
  chk->add_option("--grid-step", chk_cfg.grid_step, "Oracle spatial grid step");
  chk->add_option("--grid-cap", chk_cfg.grid_cap, "Oracle spatial grid cap");
  chk->add_option("--envelope", chk_envelope,
                  "Verify this envelope CSV instead of running the monitor");

  CLI11_PARSE(app, argc, argv);

  if (mon->parsed()) {
    if (mon_t_set) mon_cfg.t = mon_t;
    mon_cfg.labels = split_labels(mon_labels);
    return strmon::cli::cmd_monitor(mon_cfg);
  }
  if (exp->parsed()) {
    if (exp_t_set) exp_cfg.t = exp_t;
    exp_cfg.labels = split_labels(exp_labels);
    return strmon::cli::cmd_explain(exp_cfg);
  }
  if (gen->parsed()) return strmon::cli::cmd_generate(gen_case, gen_out);
  if (chk->parsed()) {
    if (chk_t_set) chk_cfg.run.t = chk_t;
    chk_cfg.run.labels = split_labels(chk_labels);
    if (!chk_envelope.empty()) chk_cfg.envelope_path = chk_envelope;
    return strmon::cli::cmd_oracle_check(chk_cfg);
  }
  return strmon::cli::kExitError;
}
