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
 * Exact Jaynes-Cummings evolution in the invariant two-level blocks
 * {|g,n>, |e,n-1>} of the interaction-picture Hamiltonian
 *
 *     H = (Delta / 2) sigma_3 - i lambda (sigma_+ a - a^dagger sigma_-).
 */

#pragma once

#include <cstddef>

#include "previval/core_state.hpp"

namespace previval {

/**
 * @brief Model parameters plus the elapsed time tau = t_m - t_p.
 *
 * @c tau is a physical time (hbar = 1). Negative values run the evolution
 * backwards, which is how retrodictive states are carried from the
 * measurement to the preparation time.
 */
struct EvolutionSpec {
    ModelParams params;
    double tau = 0.0;

    /// Spec at dimensionless time lambda * tau. Requires coupling > 0.
    [[nodiscard]] static EvolutionSpec at_lambda_tau(const ModelParams &params,
                                                     double lambda_tau);

    [[nodiscard]] double lambda_tau() const { return params.coupling * tau; }

    /// The same model run for -tau.
    [[nodiscard]] EvolutionSpec reversed() const { return {params, -tau}; }

    /// Throws InvalidInput for invalid params or a non-finite time.
    void validate() const;
};

/// Omega(n) = sqrt(Delta^2 + 4 lambda^2 n).
[[nodiscard]] double rabi_frequency(std::size_t n, const ModelParams &params);

/// Omega at a real-valued photon number, e.g. the mean photon number.
[[nodiscard]] double rabi_frequency_at(double photons,
                                       const ModelParams &params);

/**
 * @brief Evolve a joint state by U(tau) = exp(-i H tau).
 *
 * Each pair (c_{g,n}, c_{e,n-1}) is rotated with the closed-form
 * solution at Omega(n); c_{g,0} and the top level c_{e,n_max}, whose partner
 * lies beyond the cutoff, only pick up their diagonal phases. The result is
 * exactly the evolution generated by the truncated Hamiltonian.
 *
 * Throws InvalidInput if the input norm differs from 1 by more than 1e-10.
 */
[[nodiscard]] JointState evolve_joint(const JointState &state,
                                      const EvolutionSpec &spec);

/// Partial trace over the field: rho_xy = sum_n c_{x,n} conj(c_{y,n}).
[[nodiscard]] AtomMatrix reduced_atom_state(const JointState &state);

/// Atomic density operator at the measurement time for |prep> (x) |alpha>.
[[nodiscard]] AtomMatrix
predictive_atom_state(const AtomState &prep, const CoherentField &field,
                      const EvolutionSpec &spec,
                      double tail_tol = kDefaultTailTolerance);

} // namespace previval
