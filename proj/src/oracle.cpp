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

#include "previval/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "previval/errors.hpp"

namespace previval {

JointHamiltonian build_joint_hamiltonian(const ModelParams &params,
                                         std::size_t n_max) {
    params.validate();
    if (n_max < 1) {
        throw InvalidInput("Hamiltonian cutoff must be at least 1");
    }
    const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    JointHamiltonian shape(Eigen::MatrixXcd{}, n_max);

    const double half_detuning = 0.5 * params.detuning;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto g = static_cast<Eigen::Index>(shape.index(Level::Ground, n));
        const auto e = static_cast<Eigen::Index>(shape.index(Level::Excited, n));
        h(g, g) = -half_detuning;
        h(e, e) = half_detuning;
    }
    // -i lambda sigma_+ a maps |g,n> to sqrt(n) |e,n-1>.
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto g = static_cast<Eigen::Index>(shape.index(Level::Ground, n));
        const auto e =
            static_cast<Eigen::Index>(shape.index(Level::Excited, n - 1));
        const Complex coupling{0.0,
                               -params.coupling *
                                   std::sqrt(static_cast<double>(n))};
        h(e, g) = coupling;
        h(g, e) = std::conj(coupling);
    }
    return {std::move(h), n_max};
}

NumericalPropagator::NumericalPropagator(const JointHamiltonian &hamiltonian)
    : n_max_(hamiltonian.n_max()) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        hamiltonian.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error("oracle: Hamiltonian diagonalization failed");
    }
    eigenvectors_ = solver.eigenvectors();
    eigenvalues_ = solver.eigenvalues();
}

JointState NumericalPropagator::propagate(const JointState &state,
                                          double tau) const {
    if (state.n_max() != n_max_) {
        throw DimensionMismatch("oracle: state cutoff does not match the "
                                "Hamiltonian");
    }
    const auto levels = static_cast<Eigen::Index>(n_max_ + 1);
    Eigen::VectorXcd psi(2 * levels);
    for (Eigen::Index n = 0; n < levels; ++n) {
        psi(n) = state.ground(static_cast<std::size_t>(n));
        psi(levels + n) = state.excited(static_cast<std::size_t>(n));
    }

    Eigen::VectorXcd coefficients = eigenvectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
        coefficients(k) *= std::polar(1.0, -eigenvalues_(k) * tau);
    }
    const Eigen::VectorXcd evolved = eigenvectors_ * coefficients;

    std::vector<Complex> ground(n_max_ + 1);
    std::vector<Complex> excited(n_max_ + 1);
    for (Eigen::Index n = 0; n < levels; ++n) {
        ground[static_cast<std::size_t>(n)] = evolved(n);
        excited[static_cast<std::size_t>(n)] = evolved(levels + n);
    }
    return {std::move(ground), std::move(excited)};
}

JointState propagate_numerically(const JointState &state,
                                 const EvolutionSpec &spec) {
    spec.validate();
    const NumericalPropagator propagator(
        build_joint_hamiltonian(spec.params, state.n_max()));
    return propagator.propagate(state, spec.tau);
}

double max_deviation(const JointState &initial, const ModelParams &params,
                     std::span<const double> lambda_taus) {
    params.validate();
    if (std::abs(initial.norm_squared() - 1.0) > 1e-10) {
        throw InvalidInput("max_deviation: initial state is not normalized");
    }
    for (const double lambda_tau : lambda_taus) {
        if (!std::isfinite(lambda_tau)) {
            throw InvalidInput("max_deviation: non-finite grid point");
        }
    }
    const NumericalPropagator propagator(
        build_joint_hamiltonian(params, initial.n_max()));
    const double time_scale = params.coupling > 0.0 ? params.coupling : 1.0;

    double worst = 0.0;
    const auto count = static_cast<std::ptrdiff_t>(lambda_taus.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const double tau = lambda_taus[static_cast<std::size_t>(k)] / time_scale;
        const JointState analytic = evolve_joint(initial, {params, tau});
        const JointState numeric = propagator.propagate(initial, tau);
        worst = std::max(worst, analytic.max_abs_diff(numeric));
    }
    return worst;
}

} // namespace previval
