#pragma once

#include <string>
#include <utility>

#include "tempo/config.hpp"
#include "tempo/table.hpp"

namespace tempo {

inline constexpr const char* kToolVersion = "1.0.0";

// Figure-reproduction runners. Each parses and fully validates its config
// (unknown keys rejected with their key path), runs the sweep with the given
// parallelism, and returns a table whose metadata reproduces the run.
ResultTable run_pfm_ers(const Config& cfg, int jobs);
ResultTable run_ramp_ers(const Config& cfg, int jobs);
// Detection matrices in the computational basis and the superposition basis.
std::pair<ResultTable, ResultTable> run_basis_demo(const Config& cfg, int jobs);
ResultTable run_mi_sweep(const Config& cfg, int jobs);
ResultTable run_loss_sweep(const Config& cfg, int jobs);

// Schema validation only: parses the config for whichever runner its `run`
// key names, without computing anything.
std::string validate_config(const Config& cfg);

// output.path from the config, or empty when unset (callers fall back to
// stdout or a --out flag).
std::string config_output_path(const Config& cfg);

}  // namespace tempo
