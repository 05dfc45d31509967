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
 * Brute-force reference for the analytic evolution: the dense truncated
 * Jaynes-Cummings Hamiltonian, diagonalized and exponentiated numerically.
 *
 * Nothing here calls into jc_evolution's propagation; only the shared state
 * types are used. max_deviation is the one place both paths meet.
 */

#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "previval/core_state.hpp"
#include "previval/jc_evolution.hpp"

namespace previval {

/**
 * @brief Dense H on the truncated joint space.
 *
 * Basis order {|g,0>..|g,n_max>, |e,0>..|e,n_max>}. Diagonal -Delta/2 on
 * ground levels and +Delta/2 on excited levels; the only off-diagonal
 * entries are <e,n-1|H|g,n> = -i lambda sqrt(n) and their conjugates.
 */
class JointHamiltonian {
  public:
    JointHamiltonian(Eigen::MatrixXcd matrix, std::size_t n_max)
        : matrix_(std::move(matrix)), n_max_(n_max) {}

    [[nodiscard]] const Eigen::MatrixXcd &matrix() const { return matrix_; }
    [[nodiscard]] std::size_t n_max() const { return n_max_; }
    [[nodiscard]] std::size_t dimension() const { return 2 * (n_max_ + 1); }

    /// Row/column of |level, n>.
    [[nodiscard]] std::size_t index(Level level, std::size_t n) const {
        return level == Level::Ground ? n : n_max_ + 1 + n;
    }

  private:
    Eigen::MatrixXcd matrix_;
    std::size_t n_max_;
};

/// Throws InvalidInput for n_max < 1 or invalid params.
[[nodiscard]] JointHamiltonian
build_joint_hamiltonian(const ModelParams &params, std::size_t n_max);

/**
 * @brief exp(-i H tau) via one Hermitian eigen-decomposition.
 *
 * Build once per Hamiltonian, then propagate to any number of times.
 */
class NumericalPropagator {
  public:
    explicit NumericalPropagator(const JointHamiltonian &hamiltonian);

    /// Throws DimensionMismatch if the state cutoff differs from the
    /// Hamiltonian's.
    [[nodiscard]] JointState propagate(const JointState &state,
                                       double tau) const;

    [[nodiscard]] std::size_t n_max() const { return n_max_; }

  private:
    std::size_t n_max_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::VectorXd eigenvalues_;
};

/// One-shot propagation of @p state by the spec's model and time.
[[nodiscard]] JointState propagate_numerically(const JointState &state,
                                               const EvolutionSpec &spec);

/**
 * @brief Worst amplitude disagreement between evolve_joint and the oracle.
 *
 * Maximum over the lambda*tau grid of the elementwise |analytic - numeric|
 * for the same initial state. With zero coupling the grid values are taken
 * as plain times tau. Grid points are evaluated in parallel.
 */
[[nodiscard]] double max_deviation(const JointState &initial,
                                   const ModelParams &params,
                                   std::span<const double> lambda_taus);

} // namespace previval
