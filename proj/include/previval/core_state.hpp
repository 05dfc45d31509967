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
 * Atom, field and joint-state types, measurement elements and preparation
 * ensembles for a two-level atom coupled to a single cavity mode.
 *
 * All 2x2 matrices are stored in the {|g>, |e>} basis order. Natural units
 * are used throughout: hbar = 1 and the coupling constant sets the time
 * scale.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace previval {

using Complex = std::complex<double>;

/// Atomic basis index. Ground is row/column 0, excited is row/column 1.
enum class Level : std::size_t { Ground = 0, Excited = 1 };

inline constexpr double kDefaultTailTolerance = 1e-12;

/**
 * @brief Hamiltonian parameters: detuning and atom-field coupling.
 *
 * Both are angular frequencies. Curves are reported against the
 * dimensionless time coupling * tau.
 */
struct ModelParams {
    double detuning = 0.0;
    double coupling = 1.0;

    /// Throws InvalidInput if the detuning is not finite or the coupling is
    /// negative or not finite. A zero coupling is the free-evolution limit.
    void validate() const;
};

/// Coherent single-mode field state |alpha>, alpha = magnitude * e^{i phase}.
class CoherentField {
  public:
    CoherentField() = default;
    explicit CoherentField(double magnitude, double phase = 0.0);

    [[nodiscard]] static CoherentField from_amplitude(Complex alpha);

    [[nodiscard]] double magnitude() const { return magnitude_; }
    /// Phase reduced to [0, 2 pi).
    [[nodiscard]] double phase() const { return phase_; }
    [[nodiscard]] Complex amplitude() const;
    [[nodiscard]] double mean_photon_number() const {
        return magnitude_ * magnitude_;
    }

  private:
    double magnitude_ = 0.0;
    double phase_ = 0.0;
};

/// Normalized pure atomic state c_g |g> + c_e |e>.
class AtomState {
  public:
    /// Throws InvalidInput unless |c_g|^2 + |c_e|^2 = 1 within 1e-12.
    AtomState(Complex ground, Complex excited);

    /// Rescales to unit norm. Throws InvalidInput for the zero vector.
    [[nodiscard]] static AtomState normalized(Complex ground, Complex excited);

    [[nodiscard]] Complex ground() const { return ground_; }
    [[nodiscard]] Complex excited() const { return excited_; }
    [[nodiscard]] Complex operator[](Level level) const {
        return level == Level::Ground ? ground_ : excited_;
    }

  private:
    Complex ground_;
    Complex excited_;
};

[[nodiscard]] AtomState ground_state();
[[nodiscard]] AtomState excited_state();

/// (|g> - e^{i phase} |e>) / sqrt(2).
[[nodiscard]] AtomState minus_state(double phase);

/// (|g> + e^{i phase} |e>) / sqrt(2), the orthogonal partner of
/// minus_state(phase).
[[nodiscard]] AtomState plus_state(double phase);

/// A unit vector orthogonal to @p state.
[[nodiscard]] AtomState orthogonal_partner(const AtomState &state);

/// 2x2 complex matrix on the atomic space.
class AtomMatrix {
  public:
    AtomMatrix() = default;
    AtomMatrix(Complex gg, Complex ge, Complex eg, Complex ee)
        : data_{gg, ge, eg, ee} {}

    [[nodiscard]] static AtomMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    [[nodiscard]] static AtomMatrix diagonal(double ground, double excited) {
        return {ground, 0.0, 0.0, excited};
    }
    /// |ket><bra|
    [[nodiscard]] static AtomMatrix outer(const AtomState &ket,
                                          const AtomState &bra);

    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return data_[2 * row + col];
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[2 * row + col];
    }
    [[nodiscard]] Complex operator()(Level row, Level col) const {
        return (*this)(static_cast<std::size_t>(row),
                       static_cast<std::size_t>(col));
    }

    [[nodiscard]] Complex trace() const { return data_[0] + data_[3]; }
    [[nodiscard]] AtomMatrix adjoint() const;

    /// Largest elementwise |A - A^dagger|.
    [[nodiscard]] double hermiticity_defect() const;
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const {
        return hermiticity_defect() <= tol;
    }

    /// Eigenvalues of the Hermitian part, ascending.
    [[nodiscard]] std::array<double, 2> eigenvalues() const;

    struct Eigenpair {
        double value;
        AtomState vector;
    };
    /// Eigen-decomposition of the Hermitian part, ascending eigenvalues.
    [[nodiscard]] std::array<Eigenpair, 2> eigen_decomposition() const;

    /// Throws InvalidInput unless Hermitian (1e-12), unit trace (1e-10) and
    /// eigenvalues >= -1e-10.
    void validate_density() const;

    AtomMatrix &operator+=(const AtomMatrix &other);
    AtomMatrix &operator*=(Complex scale);

    friend AtomMatrix operator+(AtomMatrix lhs, const AtomMatrix &rhs) {
        return lhs += rhs;
    }
    friend AtomMatrix operator-(const AtomMatrix &lhs, const AtomMatrix &rhs);
    friend AtomMatrix operator*(AtomMatrix lhs, Complex scale) {
        return lhs *= scale;
    }
    friend AtomMatrix operator*(Complex scale, AtomMatrix rhs) {
        return rhs *= scale;
    }
    friend AtomMatrix operator*(const AtomMatrix &lhs, const AtomMatrix &rhs);

    /// Largest elementwise absolute difference.
    [[nodiscard]] double max_abs_diff(const AtomMatrix &other) const;

  private:
    std::array<Complex, 4> data_{};
};

/// Expectation value <state| op |state>.
[[nodiscard]] Complex expectation(const AtomMatrix &op, const AtomState &state);

/// Tr(lhs * rhs).
[[nodiscard]] Complex trace_product(const AtomMatrix &lhs,
                                    const AtomMatrix &rhs);

/// One element of a probability operator measure on the atom.
class PomElement {
  public:
    /// Throws InvalidInput unless Hermitian with eigenvalues in
    /// [-1e-12, 1 + 1e-12].
    PomElement(AtomMatrix op, std::string label);

    [[nodiscard]] const AtomMatrix &op() const { return op_; }
    [[nodiscard]] const std::string &label() const { return label_; }

  private:
    AtomMatrix op_;
    std::string label_;
};

/// Von Neumann element |state><state|.
[[nodiscard]] PomElement pom_projector(const AtomState &state,
                                       std::string label);

/// True if the elements sum to the identity within @p tol elementwise.
[[nodiscard]] bool is_complete(std::span<const PomElement> elements,
                               double tol = 1e-10);

/// One candidate preparation: predictive density operator and prior.
struct Preparation {
    AtomMatrix state;
    double prior = 0.0;
    std::string label;
};

/**
 * @brief Set of candidate preparations with prior probabilities.
 *
 * A non-empty ensemble must have non-negative priors summing to 1 within
 * 1e-12 and valid density operators. An empty ensemble is representable;
 * operations that need prior information reject it with EmptyEnsemble.
 */
class PreparationEnsemble {
  public:
    PreparationEnsemble() = default;
    explicit PreparationEnsemble(std::vector<Preparation> members);

    /// {|e>: 1/2, |g>: 1/2}, labels "e" and "g".
    [[nodiscard]] static PreparationEnsemble uniform_excited_ground();

    [[nodiscard]] std::span<const Preparation> members() const {
        return members_;
    }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }

    /// Index of the member with @p label; throws InvalidInput if absent.
    [[nodiscard]] std::size_t index_of(const std::string &label) const;

    /// Preparation device operator P(i) rho_i.
    [[nodiscard]] AtomMatrix device_operator(std::size_t index) const;

  private:
    std::vector<Preparation> members_;
};

/// The a-priori operator sum_i P(i) rho_i. Throws EmptyEnsemble.
[[nodiscard]] AtomMatrix apriori_operator(const PreparationEnsemble &ensemble);

/**
 * @brief Number-state expansion of a coherent state.
 *
 * a_n = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!), for n = 0..n_max. Evaluated
 * in log space so large n do not overflow.
 */
[[nodiscard]] std::vector<Complex>
coherent_coefficients(const CoherentField &field, std::size_t n_max);

/**
 * @brief Smallest photon cutoff whose Poisson tail is below @p tail_tol.
 *
 * Returns the smallest n_max >= 1 with sum_{n > n_max} P_nbar(n) < tail_tol.
 * Throws InvalidInput unless 0 < tail_tol < 1.
 */
[[nodiscard]] std::size_t
choose_truncation(const CoherentField &field,
                  double tail_tol = kDefaultTailTolerance);

/**
 * @brief Joint atom-field pure state truncated at n_max photons.
 *
 * Holds the amplitudes c_{g,n} and c_{e,n} for n = 0..n_max. The
 * constructor only checks shape; evolution entry points check the norm.
 */
class JointState {
  public:
    /// Throws InvalidInput unless both sequences have the same length >= 2.
    JointState(std::vector<Complex> ground, std::vector<Complex> excited);

    /// |atom> (x) field amplitudes, renormalized to unit norm.
    [[nodiscard]] static JointState product(const AtomState &atom,
                                            std::span<const Complex> field);

    /// |atom> (x) |alpha> with the cutoff from choose_truncation(tail_tol).
    [[nodiscard]] static JointState
    product(const AtomState &atom, const CoherentField &field,
            double tail_tol = kDefaultTailTolerance);

    [[nodiscard]] std::size_t n_max() const { return ground_.size() - 1; }
    [[nodiscard]] Complex ground(std::size_t n) const { return ground_[n]; }
    [[nodiscard]] Complex excited(std::size_t n) const { return excited_[n]; }
    [[nodiscard]] std::span<const Complex> ground_amplitudes() const {
        return ground_;
    }
    [[nodiscard]] std::span<const Complex> excited_amplitudes() const {
        return excited_;
    }
    [[nodiscard]] Complex amplitude(Level level, std::size_t n) const {
        return level == Level::Ground ? ground_[n] : excited_[n];
    }

    [[nodiscard]] double norm_squared() const;

    /// Largest elementwise amplitude difference; throws DimensionMismatch.
    [[nodiscard]] double max_abs_diff(const JointState &other) const;

  private:
    std::vector<Complex> ground_;
    std::vector<Complex> excited_;
};

} // namespace previval
