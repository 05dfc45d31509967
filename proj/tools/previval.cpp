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

// previval: predictive and retrodictive Jaynes-Cummings curves as CSV.
//
// Exit codes: 0 success, 1 internal or I/O error, 2 config error,
// 3 zero-probability conditioning.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "previval/cli.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitZeroProbability = 3;

int emit(const previval::cli::Scenario &scenario, const std::string &path) {
    const auto result = previval::cli::run_scenario(scenario);
    std::ostringstream buffer;
    previval::cli::write_csv(buffer, scenario, result);
    if (path == "-") {
        std::cout << buffer.str();
        return std::cout ? kExitOk : kExitFailure;
    }
    std::ofstream out(path, std::ios::binary);
    out << buffer.str();
    out.close();
    if (!out) {
        std::cerr << "previval: cannot write " << path << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Predictive and retrodictive Jaynes-Cummings simulator"};
    app.require_subcommand(1);

    std::string preset;
    std::string figure_output;
    auto *figure = app.add_subcommand("figure", "Write a figure preset curve");
    figure->add_option("preset", preset, "fig1, fig2a, fig2b, fig2c or fig3")
        ->required()
        ->check(CLI::IsMember(previval::cli::preset_names()));
    figure->add_option("-o,--output", figure_output, "CSV path, - for stdout")
        ->required();

    std::string config_path;
    std::string run_output;
    bool validate = false;
    auto *run = app.add_subcommand("run", "Scan a configured scenario");
    run->add_option("-c,--config", config_path, "key = value config file")
        ->required();
    run->add_option("-o,--output", run_output, "CSV path, - for stdout")
        ->required();
    run->add_flag("--validate", validate,
                  "Also run the Bayes and oracle cross-checks");

    auto *check = app.add_subcommand("check", "Full oracle and Bayes suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (figure->parsed()) {
            return emit(previval::cli::figure_preset(preset), figure_output);
        }
        if (run->parsed()) {
            const auto scenario = previval::cli::load_config(config_path);
            const int status = emit(scenario, run_output);
            if (status != kExitOk || !validate) {
                return status;
            }
            const auto report = previval::cli::validate_scenario(scenario);
            std::printf("bayes_max_deviation = %.3e (tolerance %.0e)\n",
                        report.bayes_max_deviation,
                        report.kBayesTolerance);
            std::printf("oracle_max_deviation = %.3e (tolerance %.0e)\n",
                        report.oracle_max_deviation,
                        report.kOracleTolerance);
            std::printf("validation %s\n", report.passed() ? "PASSED" : "FAILED");
            return report.passed() ? kExitOk : kExitFailure;
        }
        if (check->parsed()) {
            bool all = true;
            for (const auto &outcome : previval::cli::run_check_suite()) {
                std::printf("[%s] %s: %.3e < %.0e\n",
                            outcome.passed() ? "PASS" : "FAIL",
                            outcome.name.c_str(), outcome.value,
                            outcome.tolerance);
                all = all && outcome.passed();
            }
            return all ? kExitOk : kExitFailure;
        }
    } catch (const previval::cli::ConfigError &err) {
        std::cerr << "previval: config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const previval::ZeroProbability &err) {
        std::cerr << "previval: " << err.what() << "\n";
        return kExitZeroProbability;
    } catch (const std::exception &err) {
        std::cerr << "previval: " << err.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
