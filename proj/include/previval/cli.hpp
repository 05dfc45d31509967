// Copyright 2026 The Previval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Scenario description, figure presets, the key-value config format, CSV
 * output and the validation runs behind the `previval` command line tool.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "previval/analysis.hpp"
#include "previval/core_state.hpp"
#include "previval/errors.hpp"

namespace previval::cli {

enum class Direction { Predictive, Retrodictive };

/**
 * @brief Everything needed to produce one probability curve.
 *
 * Frequencies are in units of the coupling, which is fixed at 1.
 *
 * @c prepared is the prepared atomic state for a predictive curve (e, g,
 * minus or plus) and the preparation hypothesis for a retrodictive one (e or
 * g, drawn from the ensemble {e: prior_excited, g: prior_ground}).
 * @c measured is e, g, minus, plus or custom; minus and plus use the phase
 * of alpha.
 */
struct Scenario {
    std::string label = "custom";
    CoherentField field;
    ModelParams params;
    analysis::Grid grid{0.0, 50.0, 0.02};
    double prior_excited = 0.5;
    double prior_ground = 0.5;
    std::string measured = "e";
    AtomMatrix custom_pom;
    Direction direction = Direction::Retrodictive;
    std::string prepared = "g";
    double tail_tol = kDefaultTailTolerance;
};

[[nodiscard]] std::vector<std::string> preset_names();

/// fig1, fig2a, fig2b, fig2c or fig3. Throws InvalidInput otherwise.
[[nodiscard]] Scenario figure_preset(std::string_view name);

[[nodiscard]] PomElement measured_element(const Scenario &scenario);
[[nodiscard]] PreparationEnsemble ensemble(const Scenario &scenario);
[[nodiscard]] analysis::Quantity quantity(const Scenario &scenario);
[[nodiscard]] analysis::ScanContext context(const Scenario &scenario);

/// Malformed configuration; @c line() is 1-based.
class ConfigError : public InvalidInput {
  public:
    ConfigError(std::size_t line, const std::string &what)
        : InvalidInput("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/**
 * @brief Parse the flat `key = value` config format.
 *
 * `#` starts a comment. Required keys: alpha, direction, measured,
 * prepared. Optional: label, phi, detuning, grid_start, grid_stop, grid_step,
 * prior_e, prior_g, tail_tol, and pom (eight numbers, the real and imaginary
 * parts of the gg, ge, eg, ee elements) when measured = custom.
 */
[[nodiscard]] Scenario parse_config(std::istream &in);
[[nodiscard]] Scenario load_config(const std::filesystem::path &path);

/// Scan the scenario's curve (in parallel).
[[nodiscard]] analysis::ScanResult run_scenario(const Scenario &scenario);

/**
 * @brief Write `#` parameter lines, the `lambda_tau,probability` header and
 * one row per grid point, 12 significant digits, `\n` line endings.
 *
 * Throws ZeroProbability at the first gap.
 */
void write_csv(std::ostream &out, const Scenario &scenario,
               const analysis::ScanResult &result);

struct ValidationReport {
    double bayes_max_deviation = 0.0;
    double oracle_max_deviation = 0.0;
    static constexpr double kBayesTolerance = 1e-10;
    static constexpr double kOracleTolerance = 1e-8;
    [[nodiscard]] bool passed() const {
        return bayes_max_deviation < kBayesTolerance &&
               oracle_max_deviation < kOracleTolerance;
    }
};

/**
 * @brief Cross-check a scenario on its own grid.
 *
 * Bayes: retrodictive_probs against bayes_invert_all for the scenario's
 * ensemble and measured element. Oracle: max_deviation for |e>|alpha>,
 * |g>|alpha> and the prepared state.
 */
[[nodiscard]] ValidationReport validate_scenario(const Scenario &scenario);

struct CheckOutcome {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    [[nodiscard]] bool passed() const { return value < tolerance; }
};

/// Bayes and oracle sweeps over alpha in {0, 1.4, 5}, detuning in {0, 1},
/// measured in {e, g, minus}, lambda*tau in [0, 50] step 0.1.
[[nodiscard]] std::vector<CheckOutcome> run_check_suite();

} // namespace previval::cli
