#include <cmath>
#include <string>

#include "asymphot/config.hpp"
#include "asymphot/errors.hpp"
#include "doctest.h"

using namespace asymphot;
using namespace asymphot::cli;

namespace {

ConfigError::Category category_of(const std::string& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.category();
  }
  FAIL("expected a ConfigError");
  return ConfigError::Category::unsupported;
}

std::optional<int> line_of(const std::string& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("minimal flat-spdc document") {
  const auto c = parse_config(
      "scenario = flat-spdc\n"
      "pump.wavelength_nm = 750\n"
      "structure.r1 = 0.3\n"
      "structure.r2 = -0.3\n");
  CHECK(c.scenario == Scenario::flat_spdc);
  CHECK(c.length_um == 10.15);
  CHECK(c.pump.n == 2.18);
  CHECK(c.signal.n == 2.14);
  CHECK(c.idler.n == 2.22);
  CHECK(c.envelope_enabled);
  CHECK(c == preset(Scenario::flat_spdc));
}

TEST_CASE("keys override the preset") {
  const auto c = parse_config("structure.length_um = 12.5\nscenario = flat-spdc\n");
  CHECK(c.scenario == Scenario::flat_spdc);
  CHECK(c.length_um == 12.5);
}

TEST_CASE("documents without a scenario are custom") {
  const auto c = parse_config("# just a comment\n\nprocess = spdc\n");
  CHECK(c.scenario == Scenario::custom);
  CHECK(c.process == Process::spdc);
}

TEST_CASE("error categories") {
  CHECK(category_of("structure.length_um = -1\n") == ConfigError::Category::invariant);
  try {
    (void)parse_config("structure.length_um = -1\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("structure.length_um") != std::string::npos);
  }
  CHECK(category_of("structure.lenght_um = 10\n") == ConfigError::Category::unknown_key);
  CHECK(line_of("# c\nstructure.lenght_um = 10\n") == 2);
  CHECK(category_of("process = spdc\nthis line has no equals\n") == ConfigError::Category::syntax);
  CHECK(line_of("process = spdc\nthis line has no equals\n") == 2);
  CHECK(category_of("process = spdc\nprocess = sfwm\n") == ConfigError::Category::syntax);
  CHECK(category_of("structure.length_um = ten\n") == ConfigError::Category::invariant);
  CHECK(line_of("\n\nstructure.length_um = ten\n") == 3);
  CHECK(category_of("process = shg\n") == ConfigError::Category::invariant);
  CHECK(category_of("structure.r1 = 1.0\n") == ConfigError::Category::invariant);
  CHECK(category_of("scenario = nope\n") == ConfigError::Category::invariant);
  CHECK(category_of("sweep.parameter = layers\nsweep.start = 1\nsweep.stop = 3\nsweep.steps = 3\n") ==
        ConfigError::Category::invariant);
  CHECK(category_of("process = sfwm\npoling.enabled = true\n") ==
        ConfigError::Category::unsupported);
}

TEST_CASE("serialization round trip") {
  for (const auto& name : preset_names()) {
    const auto c = preset(name);
    const auto text = serialize_config(c);
    const auto back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
  auto c = preset(Scenario::bragg_sfwm);
  c.bragg_period_um = 0.2421;
  c.convention = DispersionConvention::verbatim_paper;
  c.interface_form = InterfaceForm::verbatim_paper;
  c.signal.k_ref = 4.1;
  c.output_name = "x_y-1.2";
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("config extraction from CSV metadata") {
  const auto c = preset(Scenario::ppln_counter);
  std::string csv;
  csv += "# asymphot table: demo\n";
  for (std::size_t pos = 0; ;) {
    const auto text = serialize_config(c);
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) break;
    csv += "# cfg: " + text.substr(pos, nl - pos) + "\n";
    pos = nl + 1;
  }
  csv += "# resolved: something\nlength_um,R_RR\n1,2\n";
  CHECK(parse_config(extract_config_from_csv(csv)) == c);
}

TEST_CASE("resolved values") {
  const auto flat = preset(Scenario::flat_spdc);
  const double kP = pump_wavenumber(flat);
  CHECK(kP == doctest::Approx(2 * std::numbers::pi / 0.75).epsilon(1e-15));
  const auto env = resolved_envelope(flat);
  CHECK(env.center == doctest::Approx(kP / 2));
  CHECK(env.width == doctest::Approx(0.04 * kP / 2));
  const auto w = resolved_window(flat);
  CHECK(w.k_min == doctest::Approx(kP / 2 - 5 * 0.04 * kP / 2));
  CHECK(w.k_max == doctest::Approx(kP / 2 + 5 * 0.04 * kP / 2));

  const auto modes = resolved_modes(flat);
  CHECK(modes.signal.k_ref == doctest::Approx(kP / 2));
  CHECK(modes.pump.k_ref == doctest::Approx(kP));

  const auto bragg = preset(Scenario::bragg_sfwm);
  CHECK(resolved_bragg_period(bragg) ==
        doctest::Approx(2 * std::numbers::pi / (effective_index(1.5, 1.6) * kP)).epsilon(1e-14));
  CHECK(resolved_modes(bragg).idler.k_ref == doctest::Approx(1.5 * kP));

  const auto ppln = preset(Scenario::ppln_counter);
  CHECK(resolved_poling_period(ppln) ==
        doctest::Approx(2 * std::numbers::pi / (2.18 * kP)).epsilon(1e-13));
  const auto poling = resolved_poling(ppln);
  CHECK(poling.offset == doctest::Approx(-ppln.length_um / 2));

  const auto reflect = with_parameter(flat, SweepParameter::reflection, 0.4);
  CHECK(reflect.r1 == 0.4);
  CHECK(reflect.r2 == -0.4);
  CHECK(with_parameter(flat, SweepParameter::length, 9.5).length_um == 9.5);
}
