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

#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles/oracles.hpp"
#include "previval/errors.hpp"
#include "previval/jc_evolution.hpp"
#include "previval/oracle.hpp"

using namespace previval;
using Catch::Approx;

namespace {

JointState random_state(std::mt19937_64 &rng, std::size_t n_max) {
    const auto v = testing::random_unit_vector(rng, 2 * (n_max + 1));
    return {std::vector<Complex>(v.begin(), v.begin() + n_max + 1),
            std::vector<Complex>(v.begin() + n_max + 1, v.end())};
}

JointState basis_state(Level level, std::size_t n, std::size_t n_max) {
    std::vector<Complex> g(n_max + 1);
    std::vector<Complex> e(n_max + 1);
    (level == Level::Ground ? g : e)[n] = 1.0;
    return {g, e};
}

ModelParams random_params(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> detuning(-3.0, 3.0);
    std::uniform_real_distribution<double> coupling(0.2, 2.0);
    return {detuning(rng), coupling(rng)};
}

} // namespace

TEST_CASE("rabi_frequency", "[jc_evolution]") {
    CHECK(rabi_frequency(0, {2.0, 1.0}) == 2.0);
    CHECK(rabi_frequency(1, {0.0, 1.0}) == 2.0);
    CHECK(rabi_frequency(25, {0.0, 1.0}) == 10.0);
    const ModelParams params{0.7, 1.3};
    for (std::size_t n = 0; n < 50; ++n) {
        CHECK(rabi_frequency(n, params) >= std::abs(params.detuning));
        CHECK(rabi_frequency(n + 1, params) > rabi_frequency(n, params));
    }
}

TEST_CASE("zero elapsed time is the identity", "[jc_evolution]") {
    std::mt19937_64 rng(1);
    const auto state = random_state(rng, 12);
    const auto out = evolve_joint(state, {{0.8, 1.0}, 0.0});
    CHECK(out.max_abs_diff(state) == 0.0);
}

TEST_CASE("vacuum Rabi oscillation", "[jc_evolution]") {
    const ModelParams params{0.0, 1.0};
    const auto start = basis_state(Level::Excited, 0, 3);
    for (const double lt : {0.1, 0.5, std::numbers::pi / 4, 1.0, 2.0, 7.3}) {
        const auto out =
            evolve_joint(start, EvolutionSpec::at_lambda_tau(params, lt));
        CHECK(std::abs(out.excited(0) - std::cos(lt)) < 1e-15);
        CHECK(std::abs(out.ground(1) - std::sin(lt)) < 1e-15);
        CHECK(std::norm(out.ground(0)) + std::norm(out.excited(1)) == 0.0);
    }
}

TEST_CASE("detuned pair follows the closed-form population",
          "[jc_evolution]") {
    const ModelParams params{1.5, 0.8};
    const std::size_t n = 4;
    const auto start = basis_state(Level::Ground, n, 6);
    const double omega = rabi_frequency(n, params);
    for (const double tau : {0.3, 1.1, 4.0}) {
        const auto out = evolve_joint(start, {params, tau});
        const double s = std::sin(0.5 * omega * tau);
        CHECK(std::norm(out.excited(n - 1)) ==
              Approx(4.0 * 0.64 * n / (omega * omega) * s * s).margin(1e-14));
    }
}

TEST_CASE("ground plus vacuum is stationary up to its phase",
          "[jc_evolution]") {
    const auto start = JointState::product(ground_state(), CoherentField(0.0));
    const auto out = evolve_joint(start, {{1.2, 1.0}, 3.0});
    CHECK(std::abs(out.ground(0) - std::polar(1.0, 0.6 * 3.0)) < 1e-15);
}

TEST_CASE("analytic evolution agrees with the dense oracle",
          "[jc_evolution][oracle]") {
    const auto start = JointState::product(ground_state(), CoherentField(1.4));
    const auto spec = EvolutionSpec::at_lambda_tau({0.0, 1.0}, 1.0);
    CHECK(evolve_joint(start, spec).max_abs_diff(
              propagate_numerically(start, spec)) < 1e-8);
}

TEST_CASE("predictive_atom_state", "[jc_evolution]") {
    const auto g_proj = AtomMatrix::outer(ground_state(), ground_state());
    CHECK(predictive_atom_state(ground_state(), CoherentField(3.0),
                                {{0.0, 1.0}, 0.0})
              .max_abs_diff(g_proj) < 1e-12);
    for (const double lt : {0.5, 3.0, 40.0}) {
        CHECK(predictive_atom_state(ground_state(), CoherentField(0.0),
                                    {{0.0, 1.0}, lt})
                  .max_abs_diff(g_proj) == 0.0);
    }

    // Oracle: numerical propagation plus an independent partial trace.
    const CoherentField field(5.0);
    const auto start = JointState::product(excited_state(), field);
    for (const double lt : {1.0, 10.0, 31.4}) {
        const auto spec = EvolutionSpec::at_lambda_tau({0.0, 1.0}, lt);
        const auto numeric = propagate_numerically(start, spec);
        Complex gg{0.0}, ge{0.0}, ee{0.0};
        for (std::size_t n = 0; n <= numeric.n_max(); ++n) {
            gg += std::norm(numeric.ground(n));
            ee += std::norm(numeric.excited(n));
            ge += numeric.ground(n) * std::conj(numeric.excited(n));
        }
        const AtomMatrix expected{gg, ge, std::conj(ge), ee};
        CAPTURE(lt);
        CHECK(predictive_atom_state(excited_state(), field, spec)
                  .max_abs_diff(expected) < 1e-8);
    }
}

TEST_CASE("evolve_joint rejects unnormalized input", "[jc_evolution]") {
    const JointState bad({1.0, 0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(evolve_joint(bad, {{0.0, 1.0}, 1.0}), InvalidInput);
    CHECK_THROWS_AS(EvolutionSpec::at_lambda_tau({0.0, 0.0}, 1.0),
                    InvalidInput);
    const auto ok = basis_state(Level::Excited, 0, 1);
    CHECK_THROWS_AS(evolve_joint(ok, {{0.0, 1.0}, std::nan("")}),
                    InvalidInput);
}

TEST_CASE("evolution invariants on random states",
          "[jc_evolution][property]") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> cutoff(1, 80);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto params = random_params(rng);
        const auto state = random_state(rng, cutoff(rng));
        const double t1 = time(rng) / params.coupling;
        const double t2 = time(rng) / params.coupling;
        const auto out = evolve_joint(state, {params, t1});
        CAPTURE(trial, params.detuning, params.coupling, t1);

        // Unitarity.
        CHECK(std::abs(out.norm_squared() - 1.0) < 1e-12);

        // Excitation-pair conservation.
        CHECK(std::abs(std::norm(out.ground(0)) - std::norm(state.ground(0))) <
              1e-12);
        for (std::size_t n = 1; n <= state.n_max(); ++n) {
            const double before =
                std::norm(state.ground(n)) + std::norm(state.excited(n - 1));
            const double after =
                std::norm(out.ground(n)) + std::norm(out.excited(n - 1));
            CHECK(std::abs(after - before) < 1e-12);
        }

        // Invertibility and composition.
        CHECK(evolve_joint(out, {params, -t1}).max_abs_diff(state) < 1e-10);
        CHECK(evolve_joint(state, {params, t1 + t2})
                  .max_abs_diff(evolve_joint(out, {params, t2})) < 1e-10);
    }
}

TEST_CASE("predictive states are density operators",
          "[jc_evolution][property]") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> magnitude(0.0, 6.0);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto v = testing::random_unit_vector(rng, 2);
        const auto rho = predictive_atom_state(
            {v[0], v[1]}, CoherentField(magnitude(rng), angle(rng)),
            EvolutionSpec::at_lambda_tau(random_params(rng), time(rng)));
        CHECK(rho.is_hermitian(1e-10));
        CHECK(rho.trace().real() == Approx(1.0).margin(1e-10));
        CHECK(rho.eigenvalues()[0] >= -1e-10);
    }
}
