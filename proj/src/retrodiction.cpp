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

#include "previval/retrodiction.hpp"

#include <algorithm>
#include <cmath>

#include "previval/errors.hpp"

namespace previval {

namespace {

JointState evolved_product(const AtomState &atom,
                           std::span<const Complex> field_amplitudes,
                           const EvolutionSpec &spec) {
    return evolve_joint(JointState::product(atom, field_amplitudes), spec);
}

/// Unnormalized retrodictive operator over the {g, e} basis.
AtomMatrix retrodictive_operator(const PomElement &pom,
                                 const CoherentField &field,
                                 const EvolutionSpec &spec, double tail_tol) {
    const auto amplitudes =
        coherent_coefficients(field, choose_truncation(field, tail_tol));
    const JointState from_ground =
        evolved_product(ground_state(), amplitudes, spec);
    const JointState from_excited =
        evolved_product(excited_state(), amplitudes, spec);

    const Complex gg = field_traced_sandwich(from_ground, pom.op(), from_ground);
    const Complex ge =
        field_traced_sandwich(from_ground, pom.op(), from_excited);
    const Complex ee =
        field_traced_sandwich(from_excited, pom.op(), from_excited);
    return {gg.real(), ge, std::conj(ge), ee.real()};
}

std::vector<double> posterior_from_weights(std::vector<double> weights,
                                           double lambda_tau) {
    double total = 0.0;
    for (const double w : weights) {
        total += w;
    }
    if (!(total > kZeroProbabilityFloor)) {
        throw ZeroProbability("conditioning on an outcome of zero probability",
                              lambda_tau);
    }
    for (auto &w : weights) {
        w /= total;
    }
    return weights;
}

} // namespace

Complex field_traced_sandwich(const JointState &bra, const AtomMatrix &op,
                              const JointState &ket) {
    if (bra.n_max() != ket.n_max()) {
        throw DimensionMismatch("sandwich: joint states have different cutoffs");
    }
    Complex sum{0.0};
    for (std::size_t n = 0; n <= ket.n_max(); ++n) {
        const Complex kg = ket.ground(n);
        const Complex ke = ket.excited(n);
        sum += std::conj(bra.ground(n)) * (op(0, 0) * kg + op(0, 1) * ke) +
               std::conj(bra.excited(n)) * (op(1, 0) * kg + op(1, 1) * ke);
    }
    return sum;
}

double predictive_prob(const AtomState &prep, const CoherentField &field,
                       const PomElement &pom, const EvolutionSpec &spec,
                       double tail_tol) {
    const JointState evolved =
        evolve_joint(JointState::product(prep, field, tail_tol), spec);
    return std::max(0.0,
                    field_traced_sandwich(evolved, pom.op(), evolved).real());
}

double predictive_prob(const AtomMatrix &prep, const CoherentField &field,
                       const PomElement &pom, const EvolutionSpec &spec,
                       double tail_tol) {
    double total = 0.0;
    for (const auto &[weight, vector] : prep.eigen_decomposition()) {
        if (weight > 0.0) {
            total += weight * predictive_prob(vector, field, pom, spec, tail_tol);
        }
    }
    return total;
}

Complex retrodictive_matrix_element(const AtomState &l, const AtomState &m,
                                    const PomElement &pom,
                                    const CoherentField &field,
                                    const EvolutionSpec &spec,
                                    double tail_tol) {
    const auto amplitudes =
        coherent_coefficients(field, choose_truncation(field, tail_tol));
    const JointState psi_l = evolved_product(l, amplitudes, spec);
    const JointState psi_m = evolved_product(m, amplitudes, spec);
    return field_traced_sandwich(psi_l, pom.op(), psi_m);
}

AtomMatrix retrodictive_state_at_prep(const PomElement &pom,
                                      const CoherentField &field,
                                      const EvolutionSpec &spec,
                                      double tail_tol) {
    AtomMatrix rho = retrodictive_operator(pom, field, spec, tail_tol);
    const double trace = rho.trace().real();
    if (!(trace > kZeroProbabilityFloor)) {
        throw ZeroProbability("measurement outcome '" + pom.label() +
                                  "' is impossible at this delay",
                              spec.lambda_tau());
    }
    rho *= Complex{1.0 / trace};
    return rho;
}

std::vector<double> retrodictive_probs(const PreparationEnsemble &ensemble,
                                       const PomElement &pom,
                                       const CoherentField &field,
                                       const EvolutionSpec &spec,
                                       double tail_tol) {
    if (ensemble.empty()) {
        throw EmptyEnsemble("no prior information: preparation ensemble is "
                            "empty");
    }
    const AtomMatrix rho = retrodictive_state_at_prep(pom, field, spec, tail_tol);
    std::vector<double> weights(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        weights[i] =
            std::max(0.0, trace_product(ensemble.device_operator(i), rho).real());
    }
    return posterior_from_weights(std::move(weights), spec.lambda_tau());
}

double retrodictive_prob(const PreparationEnsemble &ensemble,
                         const std::string &label, const PomElement &pom,
                         const CoherentField &field, const EvolutionSpec &spec,
                         double tail_tol) {
    const std::size_t index = ensemble.index_of(label);
    return retrodictive_probs(ensemble, pom, field, spec, tail_tol)[index];
}

std::vector<double> bayes_invert_all(const PreparationEnsemble &ensemble,
                                     const PomElement &pom,
                                     const CoherentField &field,
                                     const EvolutionSpec &spec,
                                     double tail_tol) {
    if (ensemble.empty()) {
        throw EmptyEnsemble("no prior information: preparation ensemble is "
                            "empty");
    }
    std::vector<double> joint(ensemble.size());
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        const auto &member = ensemble.members()[k];
        joint[k] = member.prior *
                   predictive_prob(member.state, field, pom, spec, tail_tol);
    }
    return posterior_from_weights(std::move(joint), spec.lambda_tau());
}

double bayes_invert(const PreparationEnsemble &ensemble, const PomElement &pom,
                    const CoherentField &field, const EvolutionSpec &spec,
                    const std::string &label, double tail_tol) {
    const std::size_t index = ensemble.index_of(label);
    return bayes_invert_all(ensemble, pom, field, spec, tail_tol)[index];
}

} // namespace previval
