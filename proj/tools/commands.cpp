#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casegen.hpp"
#include "log.hpp"
#include "strmon/errors.hpp"
#include "strmon/formula_monitor.hpp"
#include "strmon/oracle.hpp"
#include "strmon/parser.hpp"
#include "strmon/report.hpp"

namespace strmon::cli {

namespace {

struct LoadedRun {
  Signal sig;
  FormulaPtr root;
  std::int64_t t;
  MonitorConfig mcfg;
  std::string spec_text;
};

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PaddingPolicy parse_padding(const std::string& s) {
  if (s == "strict") return PaddingPolicy::Strict;
  if (s == "clamp") return PaddingPolicy::Clamp;
  throw ConfigError("padding must be 'strict' or 'clamp', got '" + s + "'");
}

Norm parse_norm(const std::string& s) {
  if (s == "l2") return Norm::L2;
  if (s == "linf") return Norm::Linf;
  throw ConfigError("norm must be 'l2' or 'linf', got '" + s + "'");
}

LoadedRun load_run(const RunConfig& cfg) {
  Signal sig = load_csv(cfg.signal_path, parse_padding(cfg.padding));
  std::string spec_text = read_text(cfg.spec_path);
  FormulaPtr root = parse_spec(spec_text, sig.dim());
  const std::int64_t t = cfg.t.value_or(sig.t_lo());
  if (!sig.in_domain(t))
    throw ConfigError("evaluation time " + std::to_string(t) +
                      " outside signal domain [" + std::to_string(sig.t_lo()) +
                      ";" + std::to_string(sig.t_hi()) + "]");

  MonitorConfig mcfg;
  mcfg.dt_max = cfg.dt_max;
  mcfg.norm = parse_norm(cfg.norm);
  mcfg.jobs = cfg.jobs;
  mcfg.naive_windows = cfg.naive;
  return LoadedRun{std::move(sig), std::move(root), t, mcfg,
                   std::move(spec_text)};
}

ReportInputs report_inputs(const RunConfig& cfg, const LoadedRun& run) {
  ReportInputs inputs;
  inputs.spec_hash = spec_hash(run.spec_text);
  inputs.t = run.t;
  inputs.dt_max = cfg.dt_max;
  inputs.norm = cfg.norm;
  inputs.padding = cfg.padding;
  return inputs;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    log_error(e.what());
    return kExitError;
  }
}

}  // namespace

int cmd_monitor(const RunConfig& cfg) {
  return run_guarded([&]() {
    LoadedRun run = load_run(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    ExplainResult res = explain(run.root, run.sig, run.t, run.mcfg, cfg.labels);
    write_envelope_csv(res.root, cfg.out_dir / "envelope.csv");
    write_text(cfg.out_dir / "report.json",
               report_json(report_inputs(cfg, run), res.root, res.subformulas,
                           res.timing_ms, res.domain_truncated));
    log_info("envelope has " + std::to_string(res.root.size()) + " levels");
    return res.root.empty() ? kExitViolated : kExitOk;
  });
}

int cmd_explain(const RunConfig& cfg) {
  return run_guarded([&]() {
    LoadedRun run = load_run(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    ExplainResult res = explain(run.root, run.sig, run.t, run.mcfg, cfg.labels);
    write_envelope_csv(res.root, cfg.out_dir / "root.csv");
    for (const auto& [label, env] : res.subformulas)
      write_envelope_csv(env, cfg.out_dir / (label + ".csv"));

    // Binding conjunct per temporal level: the first conjunct whose entry
    // equals the root entry (the pointwise minimum).
    std::ostringstream binding;
    binding << "dt,binding\n";
    if (res.root.empty()) {
      binding << "*,violated\n";
    } else {
      for (std::size_t k = 0; k < res.root.size(); ++k) {
        const char* who = "?";
        for (const auto& [label, env] : res.subformulas) {
          if (k < env.size() && env[k] == res.root[k]) {
            who = label.c_str();
            break;
          }
        }
        binding << k << "," << who << "\n";
      }
    }
    write_text(cfg.out_dir / "binding.csv", binding.str());
    write_text(cfg.out_dir / "report.json",
               report_json(report_inputs(cfg, run), res.root, res.subformulas,
                           res.timing_ms, res.domain_truncated));
    return res.root.empty() ? kExitViolated : kExitOk;
  });
}

int cmd_generate(const std::string& casename,
                 const std::filesystem::path& out_dir) {
  return run_guarded([&]() {
    if (casename == "f16like") {
      generate_f16like(out_dir);
    } else if (casename == "robotaxi") {
      generate_robotaxi(out_dir);
    } else {
      throw ConfigError("unknown case '" + casename +
                        "' (expected f16like or robotaxi)");
    }
    return kExitOk;
  });
}

int cmd_oracle_check(const OracleCheckConfig& cfg) {
  return run_guarded([&]() {
    LoadedRun run = load_run(cfg.run);
    std::filesystem::create_directories(cfg.run.out_dir);

    nlohmann::ordered_json verdict;
    verdict["signal"] = cfg.run.signal_path.string();
    verdict["spec_hash"] = spec_hash(run.spec_text);
    verdict["t"] = run.t;
    verdict["dt_max"] = cfg.run.dt_max;
    verdict["grid_step"] = cfg.grid_step;
    verdict["grid_cap"] = cfg.grid_cap;

    Envelope env;
    if (cfg.envelope_path) {
      env = read_envelope_csv(*cfg.envelope_path);
      verdict["envelope_source"] = cfg.envelope_path->string();
    } else {
      env = monitor(run.root, run.sig, run.t, run.mcfg);
      verdict["envelope_source"] = "monitor";
    }

    std::vector<PerturbationLevel> oracle_points;
    bool budget_error = false;
    try {
      oracle_points = brute_force_str(run.root, run.sig, run.t, cfg.run.dt_max,
                                      BruteForceGrid{cfg.grid_step,
                                                     cfg.grid_cap});
    } catch (const BudgetExceededError& e) {
      verdict["error"] = e.what();
      budget_error = true;
    }
    if (budget_error) {
      write_text(cfg.run.out_dir / "verdict.json", verdict.dump(2) + "\n");
      log_error(verdict["error"].get<std::string>());
      return kExitError;
    }

    // Dominance: every strict Pareto point of the envelope, clamped to the
    // grid, must be dominated by some oracle point.
    const double eps = 1e-9;
    bool dominance_ok = true;
    nlohmann::ordered_json first_violation;
    std::vector<PerturbationLevel> monitor_points = pareto_strict(env);
    for (const PerturbationLevel& p : monitor_points) {
      const double capped = std::min(p.dx, cfg.grid_cap);
      const double quantized =
          std::floor(capped / cfg.grid_step + eps) * cfg.grid_step;
      bool dominated = false;
      for (const PerturbationLevel& q : oracle_points) {
        if (q.dx >= quantized - eps && q.dt >= p.dt) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        dominance_ok = false;
        first_violation = {{"dx", p.dx}, {"dt", p.dt}};
        break;
      }
    }

    const bool sat = qualitative(run.root, run.sig, run.t);
    const bool soundness_ok = env.empty() == !sat;

    verdict["monitor_points"] = monitor_points.size();
    verdict["oracle_points"] = oracle_points.size();
    verdict["dominance_ok"] = dominance_ok;
    verdict["soundness_ok"] = soundness_ok;
    if (!first_violation.is_null())
      verdict["first_violation"] = first_violation;
    write_text(cfg.run.out_dir / "verdict.json", verdict.dump(2) + "\n");

    if (!dominance_ok || !soundness_ok) {
      log_error("oracle check failed (dominance_ok=" +
                std::to_string(dominance_ok) +
                ", soundness_ok=" + std::to_string(soundness_ok) + ")");
      return kExitError;
    }
    return kExitOk;
  });
}

}  // namespace strmon::cli
