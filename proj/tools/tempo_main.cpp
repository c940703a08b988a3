#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "tempo/errors.hpp"
#include "tempo/runner.hpp"

namespace {

struct CliState {
  std::string config_path;
  std::string out_path;
  int jobs = 0;  // 0 = all cores
  std::string pulse_shape;
  std::string filter_shape;
  long long seed = -1;
};

void add_common_flags(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_path, "experiment configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", st.out_path, "output CSV path (default: output.path or stdout)");
  sub->add_option("--jobs", st.jobs, "worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--pulse-shape", st.pulse_shape,
                  "override pulse.shape (gaussian | one_sided_exponential | "
                  "two_sided_exponential)");
  sub->add_option("--filter-shape", st.filter_shape,
                  "override filter.shape (gaussian | lorentzian | rectangular)");
  sub->add_option("--seed", st.seed, "override the basis seed")->check(CLI::NonNegativeNumber);
}

tempo::Config load_config(const CliState& st) {
  tempo::Config cfg = tempo::Config::parse_file(st.config_path);
  if (!st.pulse_shape.empty()) cfg.set("pulse.shape", st.pulse_shape);
  if (!st.filter_shape.empty()) cfg.set("filter.shape", st.filter_shape);
  if (st.seed >= 0) cfg.set("seed", std::to_string(st.seed));
  return cfg;
}

void emit(const tempo::ResultTable& table, const std::string& path) {
  const std::string csv = tempo::to_csv(table);
  if (path.empty()) {
    std::cout << csv;
    return;
  }
  tempo::write_text_file(path, csv);
  std::cerr << "wrote " << path << "\n";
}

std::string resolved_out(const CliState& st, const tempo::Config& cfg) {
  return st.out_path.empty() ? tempo::config_output_path(cfg) : st.out_path;
}

// base.csv -> base_computational.csv / base_superposition.csv
std::pair<std::string, std::string> demo_paths(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  const std::string ext = has_ext ? path.substr(dot) : std::string(".csv");
  return {stem + "_computational" + ext, stem + "_superposition" + ext};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator of temporal-mode qudit encoding on single photons"};
  app.require_subcommand(1);

  CliState st;
  CLI::App* pfm = app.add_subcommand("pfm-ers", "symbol error rate sweep, phase-flip scheme");
  CLI::App* ramp = app.add_subcommand("ramp-ers", "symbol error rate sweep, linear-ramp scheme");
  CLI::App* demo =
      app.add_subcommand("basis-demo", "detection matrices in two demodulation bases");
  CLI::App* mi = app.add_subcommand("mi-sweep", "mutual information versus filter bandwidth");
  CLI::App* loss = app.add_subcommand("loss-sweep", "error rate versus channel loss");
  CLI::App* validate = app.add_subcommand("validate", "check a configuration without running");
  for (CLI::App* sub : {pfm, ramp, demo, mi, loss, validate}) add_common_flags(sub, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const tempo::Config cfg = load_config(st);
    if (validate->parsed()) {
      std::cout << "config ok: run = " << tempo::validate_config(cfg) << "\n";
      return 0;
    }
    const std::string out = resolved_out(st, cfg);
    if (pfm->parsed()) {
      emit(tempo::run_pfm_ers(cfg, st.jobs), out);
    } else if (ramp->parsed()) {
      emit(tempo::run_ramp_ers(cfg, st.jobs), out);
    } else if (demo->parsed()) {
      const auto [comp, super] = tempo::run_basis_demo(cfg, st.jobs);
      if (out.empty()) {
        std::cout << tempo::to_csv(comp) << "\n" << tempo::to_csv(super);
      } else {
        const auto [comp_path, super_path] = demo_paths(out);
        emit(comp, comp_path);
        emit(super, super_path);
      }
    } else if (mi->parsed()) {
      emit(tempo::run_mi_sweep(cfg, st.jobs), out);
    } else if (loss->parsed()) {
      emit(tempo::run_loss_sweep(cfg, st.jobs), out);
    }
  } catch (const tempo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tempo::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
