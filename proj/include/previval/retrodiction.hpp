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
 * Predictive and retrodictive conditional probabilities for an atom that
 * interacts with a coherent cavity field which is never measured.
 *
 * The unmeasured field enters through the unit operator on the field space.
 * That operator is never built; the field trace is taken directly as an
 * inner product in the joint space.
 */

#pragma once

#include <string>
#include <vector>

#include "previval/core_state.hpp"
#include "previval/jc_evolution.hpp"

namespace previval {

/// Probability floor below which a conditioning outcome counts as impossible.
inline constexpr double kZeroProbabilityFloor = 1e-300;

/// <bra| (op (x) 1_field) |ket>.
[[nodiscard]] Complex field_traced_sandwich(const JointState &bra,
                                            const AtomMatrix &op,
                                            const JointState &ket);

/**
 * @brief P(j|i) = Tr(rho_i(t_m) Pi_j) for |prep> (x) |alpha> at time 0.
 *
 * Tiny negative round-off is clamped to zero.
 */
[[nodiscard]] double predictive_prob(const AtomState &prep,
                                     const CoherentField &field,
                                     const PomElement &pom,
                                     const EvolutionSpec &spec,
                                     double tail_tol = kDefaultTailTolerance);

/// Mixed preparation: weighted over the eigen-decomposition of @p prep.
[[nodiscard]] double predictive_prob(const AtomMatrix &prep,
                                     const CoherentField &field,
                                     const PomElement &pom,
                                     const EvolutionSpec &spec,
                                     double tail_tol = kDefaultTailTolerance);

/**
 * @brief Unnormalized <l| rho_retr(t_p) |m>.
 *
 * Computed as <psi_l(tau)| (Pi (x) 1_field) |psi_m(tau)> where
 * |psi_x(tau)> = U(tau) |x>|alpha>, which equals
 * <alpha|<l| U^dagger (Pi (x) 1_field) U |m>|alpha>.
 */
[[nodiscard]] Complex
retrodictive_matrix_element(const AtomState &l, const AtomState &m,
                            const PomElement &pom, const CoherentField &field,
                            const EvolutionSpec &spec,
                            double tail_tol = kDefaultTailTolerance);

/**
 * @brief Retrodictive atomic density operator at the preparation time.
 *
 * The measurement element evolved back to t_p with the coherent field as the
 * only prior knowledge, normalized to unit trace. Throws ZeroProbability if
 * the unnormalized operator vanishes (the outcome is impossible).
 */
[[nodiscard]] AtomMatrix
retrodictive_state_at_prep(const PomElement &pom, const CoherentField &field,
                           const EvolutionSpec &spec,
                           double tail_tol = kDefaultTailTolerance);

/**
 * @brief P(i|j) = Tr(Lambda_i rho_retr) / Tr(Lambda rho_retr).
 *
 * Throws InvalidInput if @p label is not in the ensemble, EmptyEnsemble for
 * an empty ensemble and ZeroProbability when the denominator is at or below
 * kZeroProbabilityFloor.
 */
[[nodiscard]] double retrodictive_prob(const PreparationEnsemble &ensemble,
                                       const std::string &label,
                                       const PomElement &pom,
                                       const CoherentField &field,
                                       const EvolutionSpec &spec,
                                       double tail_tol = kDefaultTailTolerance);

/// retrodictive_prob for every ensemble member, in member order.
[[nodiscard]] std::vector<double>
retrodictive_probs(const PreparationEnsemble &ensemble, const PomElement &pom,
                   const CoherentField &field, const EvolutionSpec &spec,
                   double tail_tol = kDefaultTailTolerance);

/**
 * @brief P(i|j) from Bayes' theorem over predictive probabilities only.
 *
 * P(i|j) = P(j|i) P(i) / sum_k P(j|k) P(k). Mixed members are decomposed
 * into their eigenstates first. Independent of the retrodictive route and
 * used to cross-check it. Errors as retrodictive_prob.
 */
[[nodiscard]] double bayes_invert(const PreparationEnsemble &ensemble,
                                  const PomElement &pom,
                                  const CoherentField &field,
                                  const EvolutionSpec &spec,
                                  const std::string &label,
                                  double tail_tol = kDefaultTailTolerance);

/// bayes_invert for every ensemble member, in member order.
[[nodiscard]] std::vector<double>
bayes_invert_all(const PreparationEnsemble &ensemble, const PomElement &pom,
                 const CoherentField &field, const EvolutionSpec &spec,
                 double tail_tol = kDefaultTailTolerance);

} // namespace previval
