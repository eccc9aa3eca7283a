#pragma once

#include <vector>

#include "asymphot/config.hpp"
#include "asymphot/parallel.hpp"
#include "asymphot/table.hpp"

namespace asymphot::cli {

/// Signal spectrum (k1, S_RR, S_LL, S_RL+LR) on the configured grid, with the
/// converged total rates over the same window in the metadata.
OutputTable spectrum_table(const ScenarioConfig& config, const Execution& exec = {});

/// Total rates (R_RR, R_LL, R_RL, R_LR, R_RL+LR) per sweep value, one column group
/// per family value. Throws ConfigError when no sweep is configured.
OutputTable sweep(const ScenarioConfig& config, const Execution& exec = {});

/// Bragg-stack transmission T(k) around kP/2 for each configured layer count.
OutputTable transmission_table(const ScenarioConfig& config, const Execution& exec = {});

/// Every table the configuration asks for: spectrum (output.spectrum), sweep
/// (sweep.parameter) and transmission (transmission.enabled), in that order.
std::vector<OutputTable> run_scenario(const ScenarioConfig& config, const Execution& exec = {});

}  // namespace asymphot::cli
