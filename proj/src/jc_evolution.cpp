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

#include "previval/jc_evolution.hpp"

#include <cmath>
#include <vector>

#include "previval/errors.hpp"

namespace previval {

EvolutionSpec EvolutionSpec::at_lambda_tau(const ModelParams &params,
                                           double lambda_tau) {
    params.validate();
    if (!(params.coupling > 0.0)) {
        throw InvalidInput("lambda * tau needs a positive coupling");
    }
    return {params, lambda_tau / params.coupling};
}

void EvolutionSpec::validate() const {
    params.validate();
    if (!std::isfinite(tau)) {
        throw InvalidInput("elapsed time must be finite");
    }
}

double rabi_frequency(std::size_t n, const ModelParams &params) {
    return rabi_frequency_at(static_cast<double>(n), params);
}

double rabi_frequency_at(double photons, const ModelParams &params) {
    const double delta = params.detuning;
    const double lambda = params.coupling;
    return std::sqrt(delta * delta + 4.0 * lambda * lambda * photons);
}

JointState evolve_joint(const JointState &state, const EvolutionSpec &spec) {
    spec.validate();
    if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
        throw InvalidInput("evolve_joint: input state is not normalized");
    }
    const std::size_t n_max = state.n_max();
    const double delta = spec.params.detuning;
    const double lambda = spec.params.coupling;
    const double tau = spec.tau;

    std::vector<Complex> ground(n_max + 1);
    std::vector<Complex> excited(n_max + 1);

    const Complex half_detuning_phase = std::polar(1.0, 0.5 * delta * tau);
    ground[0] = state.ground(0) * half_detuning_phase;
    excited[n_max] = state.excited(n_max) * std::conj(half_detuning_phase);

    for (std::size_t n = 1; n <= n_max; ++n) {
        const double omega = rabi_frequency(n, spec.params);
        const Complex g0 = state.ground(n);
        const Complex e0 = state.excited(n - 1);
        if (omega == 0.0) {
            ground[n] = g0;
            excited[n - 1] = e0;
            continue;
        }
        const double half_angle = 0.5 * omega * tau;
        const double c = std::cos(half_angle);
        const double s = std::sin(half_angle);
        const Complex diag_phase{c, delta / omega * s};
        const double mix = 2.0 * lambda * std::sqrt(static_cast<double>(n)) /
                           omega * s;
        ground[n] = g0 * diag_phase + e0 * mix;
        excited[n - 1] = e0 * std::conj(diag_phase) - g0 * mix;
    }
    return {std::move(ground), std::move(excited)};
}

AtomMatrix reduced_atom_state(const JointState &state) {
    double gg = 0.0;
    double ee = 0.0;
    Complex ge{0.0};
    for (std::size_t n = 0; n <= state.n_max(); ++n) {
        const Complex g = state.ground(n);
        const Complex e = state.excited(n);
        gg += std::norm(g);
        ee += std::norm(e);
        ge += g * std::conj(e);
    }
    return {gg, ge, std::conj(ge), ee};
}

AtomMatrix predictive_atom_state(const AtomState &prep,
                                 const CoherentField &field,
                                 const EvolutionSpec &spec, double tail_tol) {
    return reduced_atom_state(
        evolve_joint(JointState::product(prep, field, tail_tol), spec));
}

} // namespace previval
