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

#include "previval/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "previval/oracle.hpp"
#include "previval/retrodiction.hpp"

namespace previval::cli {

namespace {

std::string fmt12(double x) {
    if (x == 0.0) {
        x = 0.0; // drop the sign of -0
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return buffer;
}

AtomState named_state(const std::string &name, double phase) {
    if (name == "e") {
        return excited_state();
    }
    if (name == "g") {
        return ground_state();
    }
    if (name == "minus") {
        return minus_state(phase);
    }
    if (name == "plus") {
        return plus_state(phase);
    }
    throw InvalidInput("unknown atomic state '" + name + "'");
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

double parse_number(const std::string &text, std::size_t line,
                    const std::string &key) {
    double value = 0.0;
    const char *begin = text.data();
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError(line, "'" + key + "' expects a finite number, got '" +
                                    text + "'");
    }
    return value;
}

std::string direction_name(Direction direction) {
    return direction == Direction::Predictive ? "predictive" : "retrodictive";
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2a", "fig2b", "fig2c", "fig3"};
}

Scenario figure_preset(std::string_view name) {
    Scenario s;
    s.label = std::string(name);
    s.params = ModelParams{0.0, 1.0};
    if (name == "fig1") {
        s.field = CoherentField(5.0);
        s.grid = {0.0, 50.0, 0.02};
        s.direction = Direction::Retrodictive;
        s.prepared = "g";
        s.measured = "e";
    } else if (name == "fig2a") {
        s.field = CoherentField(1.4);
        s.grid = {0.0, 25.0, 0.02};
        s.direction = Direction::Retrodictive;
        s.prepared = "g";
        s.measured = "e";
    } else if (name == "fig2b") {
        s.field = CoherentField(1.4);
        s.grid = {0.0, 25.0, 0.02};
        s.direction = Direction::Predictive;
        s.prepared = "e";
        s.measured = "g";
    } else if (name == "fig2c") {
        s.field = CoherentField(1.4);
        s.grid = {0.0, 25.0, 0.02};
        s.direction = Direction::Predictive;
        s.prepared = "g";
        s.measured = "e";
    } else if (name == "fig3") {
        s.field = CoherentField(5.0);
        s.grid = {0.0, 50.0, 0.02};
        s.direction = Direction::Retrodictive;
        s.prepared = "e";
        s.measured = "minus";
    } else {
        throw InvalidInput("unknown figure preset '" + std::string(name) + "'");
    }
    return s;
}

PomElement measured_element(const Scenario &scenario) {
    if (scenario.measured == "custom") {
        return {scenario.custom_pom, "custom"};
    }
    return pom_projector(named_state(scenario.measured, scenario.field.phase()),
                         scenario.measured);
}

PreparationEnsemble ensemble(const Scenario &scenario) {
    return PreparationEnsemble(
        {{AtomMatrix::outer(excited_state(), excited_state()),
          scenario.prior_excited, "e"},
         {AtomMatrix::outer(ground_state(), ground_state()),
          scenario.prior_ground, "g"}});
}

analysis::Quantity quantity(const Scenario &scenario) {
    if (scenario.direction == Direction::Predictive) {
        return analysis::PredictiveProbability{
            named_state(scenario.prepared, scenario.field.phase()),
            measured_element(scenario)};
    }
    return analysis::RetrodictiveProbability{ensemble(scenario),
                                             scenario.prepared,
                                             measured_element(scenario)};
}

analysis::ScanContext context(const Scenario &scenario) {
    return {scenario.field, scenario.params, scenario.tail_tol, scenario.label};
}

Scenario parse_config(std::istream &in) {
    static const std::vector<std::string> known = {
        "label",     "alpha",     "phi",       "detuning", "grid_start",
        "grid_stop", "grid_step", "prior_e",   "prior_g",  "measured",
        "pom",       "direction", "prepared",  "tail_tol"};

    std::map<std::string, std::pair<std::string, std::size_t>> entries;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text =
            trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "expected 'key = value'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(line, "expected 'key = value'");
        }
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
        if (!entries.emplace(key, std::make_pair(value, line)).second) {
            throw ConfigError(line, "duplicate key '" + key + "'");
        }
    }
    const std::size_t end_line = line + 1;

    auto require = [&](const std::string &key) {
        if (!entries.contains(key)) {
            throw ConfigError(end_line, "missing required key '" + key + "'");
        }
        return entries.at(key);
    };
    auto number = [&](const std::string &key, double fallback) {
        const auto it = entries.find(key);
        if (it == entries.end()) {
            return fallback;
        }
        return parse_number(it->second.first, it->second.second, key);
    };

    Scenario s;
    if (entries.contains("label")) {
        s.label = entries.at("label").first;
    }
    {
        const auto [alpha_text, alpha_line] = require("alpha");
        const double alpha = parse_number(alpha_text, alpha_line, "alpha");
        if (alpha < 0.0) {
            throw ConfigError(alpha_line, "'alpha' is the magnitude |alpha| "
                                          "and must be >= 0");
        }
        s.field = CoherentField(alpha, number("phi", 0.0));
    }
    s.params = ModelParams{number("detuning", 0.0), 1.0};
    s.grid = {number("grid_start", 0.0), number("grid_stop", 50.0),
              number("grid_step", 0.02)};
    try {
        s.grid.validate();
    } catch (const InvalidInput &err) {
        const std::size_t where = entries.contains("grid_step")
                                      ? entries.at("grid_step").second
                                      : end_line;
        throw ConfigError(where, err.what());
    }
    s.prior_excited = number("prior_e", 0.5);
    s.prior_ground = number("prior_g", 0.5);
    s.tail_tol = number("tail_tol", kDefaultTailTolerance);
    if (!(s.tail_tol > 0.0 && s.tail_tol < 1.0)) {
        throw ConfigError(entries.at("tail_tol").second,
                          "'tail_tol' must lie in (0, 1)");
    }

    const auto [direction, direction_line] = require("direction");
    if (direction == "predictive") {
        s.direction = Direction::Predictive;
    } else if (direction == "retrodictive") {
        s.direction = Direction::Retrodictive;
    } else {
        throw ConfigError(direction_line,
                          "'direction' must be predictive or retrodictive");
    }

    const auto [measured, measured_line] = require("measured");
    if (measured != "e" && measured != "g" && measured != "minus" &&
        measured != "plus" && measured != "custom") {
        throw ConfigError(measured_line,
                          "'measured' must be e, g, minus, plus or custom");
    }
    s.measured = measured;
    if (measured == "custom") {
        const auto [pom_text, pom_line] = require("pom");
        std::istringstream fields(pom_text);
        std::vector<double> parts;
        std::string token;
        while (fields >> token) {
            parts.push_back(parse_number(token, pom_line, "pom"));
        }
        if (parts.size() != 8) {
            throw ConfigError(pom_line, "'pom' expects 8 numbers");
        }
        s.custom_pom = AtomMatrix{{parts[0], parts[1]},
                                  {parts[2], parts[3]},
                                  {parts[4], parts[5]},
                                  {parts[6], parts[7]}};
        try {
            static_cast<void>(PomElement(s.custom_pom, "custom"));
        } catch (const InvalidInput &err) {
            throw ConfigError(pom_line, err.what());
        }
    } else if (entries.contains("pom")) {
        throw ConfigError(entries.at("pom").second,
                          "'pom' is only allowed with measured = custom");
    }

    const auto [prepared, prepared_line] = require("prepared");
    const bool retro = s.direction == Direction::Retrodictive;
    if (retro ? (prepared != "e" && prepared != "g")
              : (prepared != "e" && prepared != "g" && prepared != "minus" &&
                 prepared != "plus")) {
        throw ConfigError(prepared_line,
                          retro ? "'prepared' must be e or g for a "
                                  "retrodictive curve"
                                : "'prepared' must be e, g, minus or plus");
    }
    s.prepared = prepared;

    try {
        static_cast<void>(ensemble(s));
    } catch (const InvalidInput &err) {
        const std::size_t where = entries.contains("prior_g")
                                      ? entries.at("prior_g").second
                                      : end_line;
        throw ConfigError(where, err.what());
    }
    return s;
}

Scenario load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file " + path.string());
    }
    return parse_config(in);
}

analysis::ScanResult run_scenario(const Scenario &scenario) {
    return analysis::scan(quantity(scenario), scenario.grid, context(scenario));
}

void write_csv(std::ostream &out, const Scenario &scenario,
               const analysis::ScanResult &result) {
    if (const auto gap = result.first_gap()) {
        throw ZeroProbability("zero-probability conditioning at lambda_tau = " +
                                  fmt12(*gap),
                              *gap);
    }
    const bool retro = scenario.direction == Direction::Retrodictive;
    std::string text;
    text += "# label = " + scenario.label + "\n";
    text += "# direction = " + direction_name(scenario.direction) + "\n";
    text += retro ? "# quantity = P(" + scenario.prepared + " prepared | " +
                        scenario.measured + " measured)\n"
                  : "# quantity = P(" + scenario.measured + " measured | " +
                        scenario.prepared + " prepared)\n";
    text += "# alpha = " + fmt12(scenario.field.magnitude()) + "\n";
    text += "# phi = " + fmt12(scenario.field.phase()) + "\n";
    text += "# detuning = " + fmt12(scenario.params.detuning) + "\n";
    text += "# coupling = " + fmt12(scenario.params.coupling) + "\n";
    if (retro) {
        text += "# ensemble = e:" + fmt12(scenario.prior_excited) +
                " g:" + fmt12(scenario.prior_ground) + "\n";
    }
    text += "# measured = " + scenario.measured + "\n";
    if (scenario.measured == "custom") {
        text += "# pom =";
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                text += " " + fmt12(scenario.custom_pom(r, c).real()) + " " +
                        fmt12(scenario.custom_pom(r, c).imag());
            }
        }
        text += "\n";
    }
    text += "# grid = " + fmt12(scenario.grid.start) + ":" +
            fmt12(scenario.grid.step) + ":" + fmt12(scenario.grid.stop) + "\n";
    text += "# tail_tol = " + fmt12(scenario.tail_tol) + "\n";
    text += "lambda_tau,probability\n";
    for (const auto &point : result.points) {
        text += fmt12(point.lambda_tau) + "," + fmt12(*point.value) + "\n";
    }
    out << text;
}

ValidationReport validate_scenario(const Scenario &scenario) {
    ValidationReport report;
    const auto prep_ensemble = ensemble(scenario);
    const auto pom = measured_element(scenario);
    const auto grid = scenario.grid.points();

    for (const double lambda_tau : grid) {
        const auto spec = EvolutionSpec::at_lambda_tau(scenario.params,
                                                       lambda_tau);
        std::vector<double> retro;
        std::vector<double> bayes;
        bool retro_defined = true;
        bool bayes_defined = true;
        try {
            retro = retrodictive_probs(prep_ensemble, pom, scenario.field, spec,
                                       scenario.tail_tol);
        } catch (const ZeroProbability &) {
            retro_defined = false;
        }
        try {
            bayes = bayes_invert_all(prep_ensemble, pom, scenario.field, spec,
                                     scenario.tail_tol);
        } catch (const ZeroProbability &) {
            bayes_defined = false;
        }
        if (retro_defined != bayes_defined) {
            report.bayes_max_deviation = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < retro.size(); ++i) {
            report.bayes_max_deviation = std::max(
                report.bayes_max_deviation, std::abs(retro[i] - bayes[i]));
        }
    }

    std::vector<AtomState> initial_atoms = {excited_state(), ground_state()};
    if (scenario.direction == Direction::Predictive &&
        (scenario.prepared == "minus" || scenario.prepared == "plus")) {
        initial_atoms.push_back(scenario.prepared == "minus"
                                    ? minus_state(scenario.field.phase())
                                    : plus_state(scenario.field.phase()));
    }
    for (const auto &atom : initial_atoms) {
        report.oracle_max_deviation = std::max(
            report.oracle_max_deviation,
            max_deviation(
                JointState::product(atom, scenario.field, scenario.tail_tol),
                scenario.params, grid));
    }
    return report;
}

std::vector<CheckOutcome> run_check_suite() {
    double bayes = 0.0;
    double oracle = 0.0;
    for (const double alpha : {0.0, 1.4, 5.0}) {
        for (const double detuning : {0.0, 1.0}) {
            for (const char *measured : {"e", "g", "minus"}) {
                Scenario s;
                s.field = CoherentField(alpha);
                s.params = ModelParams{detuning, 1.0};
                s.grid = {0.0, 50.0, 0.1};
                s.measured = measured;
                const auto report = validate_scenario(s);
                bayes = std::max(bayes, report.bayes_max_deviation);
                oracle = std::max(oracle, report.oracle_max_deviation);
            }
        }
    }
    return {{"bayes_equivalence", bayes, ValidationReport::kBayesTolerance},
            {"oracle_equivalence", oracle, ValidationReport::kOracleTolerance}};
}

} // namespace previval::cli
