// asymphot: photon-pair generation rates in Fabry-Perot cavities.
//
//   asymphot run <config|@preset|table.csv> [--out DIR] [--threads N]
//   asymphot sweep <config|@preset|table.csv>
//   asymphot scenarios [--dump NAME]
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 numerical error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "asymphot/config.hpp"
#include "asymphot/errors.hpp"
#include "asymphot/scenario.hpp"

namespace fs = std::filesystem;
using namespace asymphot;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

cli::ScenarioConfig load_config(const std::string& source) {
  if (source.starts_with("@")) return cli::preset(std::string_view(source).substr(1));
  std::string text = read_file(source);
  if (fs::path(source).extension() == ".csv") text = cli::extract_config_from_csv(text);
  return cli::parse_config(text);
}

struct Options {
  std::string config;
  std::string out_dir = ".";
  bool no_normalize = false;
  std::string convention;
  unsigned threads = 1;
};

void apply_overrides(cli::ScenarioConfig& config, const Options& opts) {
  if (opts.no_normalize) config.normalize = false;
  if (opts.convention == "standard") {
    config.convention = DispersionConvention::standard;
  } else if (opts.convention == "verbatim-paper") {
    config.convention = DispersionConvention::verbatim_paper;
  }
  config.validate();
}

void write_tables(const std::vector<cli::OutputTable>& tables, const Options& opts) {
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + opts.out_dir + "': " + ec.message());
  for (const auto& table : tables) {
    for (const auto& line : table.metadata) {
      if (line.starts_with("warning:")) std::cerr << table.name << ": " << line << '\n';
    }
    const fs::path path = fs::path(opts.out_dir) / (table.name + ".csv");
    cli::emit_csv(table, path);
    std::cout << path.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-pair generation (SPDC, SFWM) in Fabry-Perot cavities via asymptotic fields"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opts.config, "config file, @preset, or a CSV written by asymphot")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--no-normalize", opts.no_normalize, "write raw (unnormalized) rates");
    sub->add_option("--dispersion-convention", opts.convention, "standard | verbatim-paper")
        ->check(CLI::IsMember({"standard", "verbatim-paper"}));
    sub->add_option("--threads", opts.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "run a scenario and write every table it defines");
  add_common(run);
  auto* sweep_cmd = app.add_subcommand("sweep", "write only the parameter-sweep table");
  add_common(sweep_cmd);
  auto* scenarios = app.add_subcommand("scenarios", "list built-in scenario presets");
  std::string dump;
  scenarios->add_option("--dump", dump, "print the full config document of a preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (scenarios->parsed()) {
      if (!dump.empty()) {
        std::cout << cli::serialize_config(cli::preset(dump));
      } else {
        for (const auto& name : cli::preset_names()) std::cout << '@' << name << '\n';
      }
      return 0;
    }

    cli::ScenarioConfig config = load_config(opts.config);
    apply_overrides(config, opts);
    const Execution exec{opts.threads};
    if (run->parsed()) {
      write_tables(cli::run_scenario(config, exec), opts);
    } else {
      write_tables({cli::sweep(config, exec)}, opts);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "asymphot: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "asymphot: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "asymphot: numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "asymphot: " << e.what() << '\n';
    return 2;
  }
}
