#include "asymphot/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "asymphot/errors.hpp"
#include "asymphot/rates.hpp"
#include "asymphot/transfer.hpp"

namespace asymphot::cli {

namespace {

std::vector<std::string> config_metadata(const ScenarioConfig& config, const std::string& table) {
  std::vector<std::string> lines;
  lines.push_back("asymphot table: " + table);
  std::istringstream doc(serialize_config(config));
  for (std::string line; std::getline(doc, line);) lines.push_back("cfg: " + line);

  const Window w = resolved_window(config);
  lines.push_back("resolved: k_pump_rad_per_um = " + format_number(pump_wavenumber(config)));
  lines.push_back("resolved: window_rad_per_um = " + format_number(w.k_min) + " " +
                  format_number(w.k_max));
  if (config.mirrors == MirrorKind::bragg || config.transmission_enabled) {
    lines.push_back("resolved: bragg.period_um = " + format_number(resolved_bragg_period(config)));
  }
  if (config.poling_enabled) {
    lines.push_back("resolved: poling.period_um = " +
                    format_number(resolved_poling_period(config)));
    lines.push_back(config.poling_offset_um
                        ? "resolved: poling.offset_um = " + format_number(*config.poling_offset_um)
                        : std::string("resolved: poling.offset_um = -length/2"));
  }
  return lines;
}

std::vector<double> linspace(double start, double stop, std::size_t steps) {
  if (steps == 1) return {start};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = start + (stop - start) * (static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  out.back() = stop;
  return out;
}

// Divides every present entry of column `col` by its maximum and records it.
void normalize_column(OutputTable& table, std::size_t col, bool normalize) {
  double raw_max = 0.0;
  for (const auto& row : table.rows) {
    if (row[col]) raw_max = std::max(raw_max, *row[col]);
  }
  const bool scaled = normalize && raw_max > 0.0;
  if (scaled) {
    for (auto& row : table.rows) {
      if (row[col]) *row[col] /= raw_max;
    }
  }
  table.metadata.push_back("normalization: " + table.columns[col] +
                           " raw_max = " + format_number(raw_max) +
                           " normalized = " + (scaled ? "true" : "false"));
}

std::string convergence_line(const ConvergedRate& rate) {
  return "points = " + std::to_string(rate.points) + " doublings = " +
         std::to_string(rate.doublings) + " relative_change = " +
         format_number(rate.relative_change) + " cap_hit = " + (rate.cap_hit ? "true" : "false");
}

ConvergedRate total_for(const ScenarioConfig& config, const Execution& exec) {
  const Window w = resolved_window(config);
  return converged_total_rate(make_source(config), w.k_min, w.k_max, config.quadrature, exec);
}

std::string parameter_column(SweepParameter p) {
  switch (p) {
    case SweepParameter::length: return "length_um";
    case SweepParameter::reflection: return "reflection";
    case SweepParameter::layers: return "layers";
    case SweepParameter::poling_period: return "poling_period_um";
    case SweepParameter::none: break;
  }
  return "value";
}

}  // namespace

OutputTable spectrum_table(const ScenarioConfig& config, const Execution& exec) {
  config.validate();
  OutputTable table;
  table.name = config.output_name + "_spectrum";
  table.columns = {"k1_rad_per_um", "S_RR", "S_LL", "S_RL+LR"};
  table.metadata = config_metadata(config, table.name);

  const Window w = resolved_window(config);
  const WavenumberGrid grid = grid_between(w.k_min, w.k_max, config.grid_count);
  const SpectralResult spectral = spectral_rate(make_source(config), grid, exec);
  const std::vector<double> mixed = spectral.raw_mixed();

  std::ostringstream singular_ks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (spectral.singular[i]) {
      table.add_row({grid.values[i], std::nullopt, std::nullopt, std::nullopt});
      singular_ks << ' ' << format_number(grid.values[i]);
    } else {
      table.add_row({grid.values[i], spectral.raw[0][i], spectral.raw[1][i], mixed[i]});
    }
  }
  for (std::size_t col = 1; col < table.columns.size(); ++col) {
    normalize_column(table, col, config.normalize);
  }
  if (spectral.singular_count() > 0) {
    table.metadata.push_back("singular: " + std::to_string(spectral.singular_count()) +
                             " grid point(s) left empty at k1 =" + singular_ks.str());
    table.metadata.push_back("total_rate: not computed (singular points in window)");
    return table;
  }

  const ConvergedRate total = total_for(config, exec);
  table.metadata.push_back("convergence: " + convergence_line(total));
  if (total.cap_hit) {
    table.metadata.push_back("warning: quadrature point cap reached before convergence");
  }
  const char* labels[] = {"RR", "LL", "RL", "LR"};
  for (std::size_t c = 0; c < 4; ++c) {
    table.metadata.push_back(std::string("total_rate: R_") + labels[c] + " = " +
                             format_number(total.totals[c]));
  }
  return table;
}

OutputTable sweep(const ScenarioConfig& config, const Execution& exec) {
  config.validate();
  if (config.sweep_parameter == SweepParameter::none) {
    throw ConfigError(ConfigError::Category::unsupported,
                      "sweep.parameter: no sweep configured (set length, reflection, layers or "
                      "poling-period)");
  }
  OutputTable table;
  table.name = config.output_name + "_sweep";
  table.metadata = config_metadata(config, table.name);

  const bool in_periods = config.sweep_scale == SweepScale::poling_periods;
  const double period = in_periods ? resolved_poling_period(config) : 1.0;
  const std::vector<double> values = linspace(config.sweep_start, config.sweep_stop, config.sweep_steps);
  const bool has_family = config.family_parameter != SweepParameter::none;
  const std::vector<double> family =
      has_family ? config.family_values : std::vector<double>{0.0};

  if (in_periods) {
    table.columns = {"length_periods", "length_um"};
  } else {
    table.columns = {parameter_column(config.sweep_parameter)};
  }
  const char* rate_names[] = {"R_RR", "R_LL", "R_RL", "R_LR", "R_RL+LR"};
  for (double f : family) {
    for (const char* name : rate_names) {
      std::string col = name;
      if (has_family) {
        col += "@" + std::string(to_string(config.family_parameter)) + "=" + format_shortest(f);
      }
      table.columns.push_back(col);
    }
  }

  const std::size_t n_jobs = values.size() * family.size();
  std::vector<ConvergedRate> results(n_jobs);
  auto job_config = [&](std::size_t job) {
    const std::size_t fi = job / values.size();
    const std::size_t vi = job % values.size();
    ScenarioConfig c = with_parameter(config, config.family_parameter, family[fi]);
    return with_parameter(c, config.sweep_parameter, values[vi] * period);
  };
  parallel_for(n_jobs, exec, [&](std::size_t job) {
    const ScenarioConfig c = job_config(job);
    try {
      c.validate();
      results[job] = total_for(c, Execution{1});
    } catch (const NumericalError& e) {
      throw NumericalError("sweep " + parameter_column(config.sweep_parameter) + " = " +
                           format_number(values[job % values.size()] * period) + ": " + e.what());
    }
  });

  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    std::vector<std::optional<double>> row;
    row.push_back(values[vi]);
    if (in_periods) row.push_back(values[vi] * period);
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
      const auto& totals = results[fi * values.size() + vi].totals;
      for (double t : totals) row.push_back(t);
      row.push_back(totals[2] + totals[3]);
    }
    table.add_row(std::move(row));
  }
  const std::size_t first_rate = in_periods ? 2 : 1;
  for (std::size_t col = first_rate; col < table.columns.size(); ++col) {
    normalize_column(table, col, config.normalize);
  }

  std::size_t max_points = 0;
  double worst = 0.0;
  std::size_t caps = 0;
  for (const auto& r : results) {
    max_points = std::max(max_points, r.points);
    worst = std::max(worst, r.relative_change);
    caps += r.cap_hit ? 1 : 0;
  }
  table.metadata.push_back("convergence: rows = " + std::to_string(n_jobs) +
                           " max_points = " + std::to_string(max_points) +
                           " worst_relative_change = " + format_number(worst) +
                           " cap_hits = " + std::to_string(caps));
  if (caps > 0) {
    table.metadata.push_back("warning: quadrature point cap reached in " + std::to_string(caps) +
                             " row(s)");
  }

  if (config.poling_enabled && config.sweep_parameter == SweepParameter::length &&
      !config.poling_offset_um) {
    // Sensitivity of the longest configuration to a quarter-period domain shift.
    ScenarioConfig shifted = job_config(values.size() - 1);
    const double poling_period = resolved_poling_period(shifted);
    shifted.poling_offset_um = -0.5 * shifted.length_um + 0.25 * poling_period;
    const ConvergedRate base = results[values.size() - 1];
    const ConvergedRate moved = total_for(shifted, exec);
    const char* labels[] = {"RR", "LL", "RL", "LR"};
    std::string line = "poling_offset_sensitivity: offset -length/2 + period/4 at length_um = " +
                       format_number(shifted.length_um) + ":";
    for (std::size_t c = 0; c < 4; ++c) {
      const double rel = base.totals[c] != 0.0
                             ? (moved.totals[c] - base.totals[c]) / base.totals[c]
                             : 0.0;
      line += std::string(" R_") + labels[c] + " " + format_number(rel);
    }
    table.metadata.push_back(line);
  }
  return table;
}

OutputTable transmission_table(const ScenarioConfig& config, const Execution& exec) {
  config.validate();
  OutputTable table;
  table.name = config.output_name + "_transmission";
  table.metadata = config_metadata(config, table.name);
  table.columns = {"k_rad_per_um"};
  for (int n : config.transmission_layers) table.columns.push_back("T_N" + std::to_string(n));

  const double half_kp = 0.5 * pump_wavenumber(config);
  const double period = resolved_bragg_period(config);
  const WavenumberGrid grid = build_grid(half_kp, config.transmission_half_width_rel * half_kp,
                                         config.transmission_count);
  const std::size_t n_stacks = config.transmission_layers.size();
  std::vector<double> values(grid.size() * n_stacks);
  parallel_for(grid.size(), exec, [&](std::size_t i) {
    for (std::size_t s = 0; s < n_stacks; ++s) {
      const BraggMirror stack{config.bragg_n1, config.bragg_n2, period,
                              config.transmission_layers[s], 0.0, config.interface_form};
      values[i * n_stacks + s] = transmission(bragg_stack(stack, grid.values[i]));
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::optional<double>> row{grid.values[i]};
    for (std::size_t s = 0; s < n_stacks; ++s) row.push_back(values[i * n_stacks + s]);
    table.add_row(std::move(row));
  }
  table.metadata.push_back("stopband_center_rad_per_um = " +
                           format_number(stopband_center(config.bragg_n1, config.bragg_n2, period)));
  for (std::size_t s = 0; s < n_stacks; ++s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (values[i * n_stacks + s] < values[best * n_stacks + s]) best = i;
    }
    table.metadata.push_back("minimum: " + table.columns[s + 1] + " at k = " +
                             format_number(grid.values[best]) + " T = " +
                             format_number(values[best * n_stacks + s]));
  }
  return table;
}

std::vector<OutputTable> run_scenario(const ScenarioConfig& config, const Execution& exec) {
  config.validate();
  std::vector<OutputTable> tables;
  if (config.emit_spectrum) tables.push_back(spectrum_table(config, exec));
  if (config.sweep_parameter != SweepParameter::none) tables.push_back(sweep(config, exec));
  if (config.transmission_enabled) tables.push_back(transmission_table(config, exec));
  return tables;
}

}  // namespace asymphot::cli
