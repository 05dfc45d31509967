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

#include "previval/core_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "previval/errors.hpp"

namespace previval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_phase(double phase) {
    double reduced = std::fmod(phase, kTwoPi);
    if (reduced < 0.0) {
        reduced += kTwoPi;
    }
    // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
    return reduced >= kTwoPi ? 0.0 : reduced;
}

} // namespace

void ModelParams::validate() const {
    if (!std::isfinite(detuning)) {
        throw InvalidInput("detuning must be finite");
    }
    if (!std::isfinite(coupling) || coupling < 0.0) {
        throw InvalidInput("coupling must be finite and non-negative");
    }
}

CoherentField::CoherentField(double magnitude, double phase)
    : magnitude_(magnitude), phase_(reduce_phase(phase)) {
    if (!std::isfinite(magnitude) || magnitude < 0.0) {
        throw InvalidInput("coherent amplitude magnitude must be >= 0");
    }
    if (!std::isfinite(phase)) {
        throw InvalidInput("coherent amplitude phase must be finite");
    }
}

CoherentField CoherentField::from_amplitude(Complex alpha) {
    const double magnitude = std::abs(alpha);
    return CoherentField(magnitude, magnitude == 0.0 ? 0.0 : std::arg(alpha));
}

Complex CoherentField::amplitude() const {
    return std::polar(magnitude_, phase_);
}

AtomState::AtomState(Complex ground, Complex excited)
    : ground_(ground), excited_(excited) {
    const double norm = std::norm(ground) + std::norm(excited);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        throw InvalidInput("atomic state is not normalized");
    }
}

AtomState AtomState::normalized(Complex ground, Complex excited) {
    const double norm = std::sqrt(std::norm(ground) + std::norm(excited));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidInput("cannot normalize a zero or non-finite vector");
    }
    return {ground / norm, excited / norm};
}

AtomState ground_state() { return {1.0, 0.0}; }
AtomState excited_state() { return {0.0, 1.0}; }

AtomState minus_state(double phase) {
    const double s = std::numbers::sqrt2 / 2.0;
    return {s, -std::polar(s, phase)};
}

AtomState plus_state(double phase) {
    const double s = std::numbers::sqrt2 / 2.0;
    return {s, std::polar(s, phase)};
}

AtomState orthogonal_partner(const AtomState &state) {
    return AtomState::normalized(-std::conj(state.excited()),
                                 std::conj(state.ground()));
}

AtomMatrix AtomMatrix::outer(const AtomState &ket, const AtomState &bra) {
    return {ket.ground() * std::conj(bra.ground()),
            ket.ground() * std::conj(bra.excited()),
            ket.excited() * std::conj(bra.ground()),
            ket.excited() * std::conj(bra.excited())};
}

AtomMatrix AtomMatrix::adjoint() const {
    return {std::conj(data_[0]), std::conj(data_[2]), std::conj(data_[1]),
            std::conj(data_[3])};
}

double AtomMatrix::hermiticity_defect() const { return max_abs_diff(adjoint()); }

std::array<double, 2> AtomMatrix::eigenvalues() const {
    const double a = data_[0].real();
    const double d = data_[3].real();
    const Complex b = 0.5 * (data_[1] + std::conj(data_[2]));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

std::array<AtomMatrix::Eigenpair, 2> AtomMatrix::eigen_decomposition() const {
    const auto values = eigenvalues();
    const double a = data_[0].real();
    const double d = data_[3].real();
    const Complex b = 0.5 * (data_[1] + std::conj(data_[2]));

    if (std::abs(b) == 0.0) {
        const bool ground_first = a <= d;
        const AtomState low = ground_first ? ground_state() : excited_state();
        const AtomState high = ground_first ? excited_state() : ground_state();
        return {Eigenpair{values[0], low}, Eigenpair{values[1], high}};
    }

    auto vector_for = [&](double lambda) {
        // Two candidate null vectors of (H - lambda); the longer is better
        // conditioned.
        const Complex v0{b};
        const Complex v1{lambda - a};
        const Complex w0{lambda - d};
        const Complex w1{std::conj(b)};
        if (std::norm(v0) + std::norm(v1) >= std::norm(w0) + std::norm(w1)) {
            return AtomState::normalized(v0, v1);
        }
        return AtomState::normalized(w0, w1);
    };
    return {Eigenpair{values[0], vector_for(values[0])},
            Eigenpair{values[1], vector_for(values[1])}};
}

void AtomMatrix::validate_density() const {
    if (!is_hermitian(1e-12)) {
        throw InvalidInput("density operator is not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-10) {
        throw InvalidInput("density operator does not have unit trace");
    }
    if (eigenvalues()[0] < -1e-10) {
        throw InvalidInput("density operator has a negative eigenvalue");
    }
}

AtomMatrix &AtomMatrix::operator+=(const AtomMatrix &other) {
    for (std::size_t k = 0; k < 4; ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

AtomMatrix &AtomMatrix::operator*=(Complex scale) {
    for (auto &entry : data_) {
        entry *= scale;
    }
    return *this;
}

AtomMatrix operator-(const AtomMatrix &lhs, const AtomMatrix &rhs) {
    AtomMatrix out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.data_[k] = lhs.data_[k] - rhs.data_[k];
    }
    return out;
}

AtomMatrix operator*(const AtomMatrix &lhs, const AtomMatrix &rhs) {
    AtomMatrix out;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = lhs(r, 0) * rhs(0, c) + lhs(r, 1) * rhs(1, c);
        }
    }
    return out;
}

double AtomMatrix::max_abs_diff(const AtomMatrix &other) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

Complex expectation(const AtomMatrix &op, const AtomState &state) {
    const Complex g = state.ground();
    const Complex e = state.excited();
    return std::conj(g) * (op(0, 0) * g + op(0, 1) * e) +
           std::conj(e) * (op(1, 0) * g + op(1, 1) * e);
}

Complex trace_product(const AtomMatrix &lhs, const AtomMatrix &rhs) {
    return lhs(0, 0) * rhs(0, 0) + lhs(0, 1) * rhs(1, 0) +
           lhs(1, 0) * rhs(0, 1) + lhs(1, 1) * rhs(1, 1);
}

PomElement::PomElement(AtomMatrix op, std::string label)
    : op_(op), label_(std::move(label)) {
    if (!op_.is_hermitian(1e-12)) {
        throw InvalidInput("POM element '" + label_ + "' is not Hermitian");
    }
    const auto values = op_.eigenvalues();
    if (values[0] < -1e-12 || values[1] > 1.0 + 1e-12) {
        throw InvalidInput("POM element '" + label_ +
                           "' has eigenvalues outside [0, 1]");
    }
}

PomElement pom_projector(const AtomState &state, std::string label) {
    return {AtomMatrix::outer(state, state), std::move(label)};
}

bool is_complete(std::span<const PomElement> elements, double tol) {
    AtomMatrix sum;
    for (const auto &element : elements) {
        sum += element.op();
    }
    return sum.max_abs_diff(AtomMatrix::identity()) <= tol;
}

PreparationEnsemble::PreparationEnsemble(std::vector<Preparation> members)
    : members_(std::move(members)) {
    if (members_.empty()) {
        return;
    }
    double total = 0.0;
    for (const auto &member : members_) {
        if (!std::isfinite(member.prior) || member.prior < 0.0) {
            throw InvalidInput("prior of '" + member.label +
                               "' must be non-negative");
        }
        member.state.validate_density();
        total += member.prior;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidInput("ensemble priors do not sum to 1");
    }
}

PreparationEnsemble PreparationEnsemble::uniform_excited_ground() {
    return PreparationEnsemble(
        {{AtomMatrix::outer(excited_state(), excited_state()), 0.5, "e"},
         {AtomMatrix::outer(ground_state(), ground_state()), 0.5, "g"}});
}

std::size_t PreparationEnsemble::index_of(const std::string &label) const {
    if (members_.empty()) {
        throw EmptyEnsemble("no prior information: preparation ensemble is "
                            "empty");
    }
    const auto it =
        std::find_if(members_.begin(), members_.end(),
                     [&](const Preparation &p) { return p.label == label; });
    if (it == members_.end()) {
        throw InvalidInput("no preparation labelled '" + label + "'");
    }
    return static_cast<std::size_t>(it - members_.begin());
}

AtomMatrix PreparationEnsemble::device_operator(std::size_t index) const {
    const auto &member = members_.at(index);
    return member.state * Complex{member.prior};
}

AtomMatrix apriori_operator(const PreparationEnsemble &ensemble) {
    if (ensemble.empty()) {
        throw EmptyEnsemble("no prior information: preparation ensemble is "
                            "empty");
    }
    AtomMatrix sum;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        sum += ensemble.device_operator(i);
    }
    return sum;
}

std::vector<Complex> coherent_coefficients(const CoherentField &field,
                                           std::size_t n_max) {
    std::vector<Complex> out(n_max + 1, Complex{0.0});
    const double magnitude = field.magnitude();
    if (magnitude == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double log_magnitude = std::log(magnitude);
    const double half_mean = 0.5 * field.mean_photon_number();
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto nd = static_cast<double>(n);
        const double log_abs =
            -half_mean + nd * log_magnitude - 0.5 * std::lgamma(nd + 1.0);
        out[n] = std::polar(std::exp(log_abs), nd * field.phase());
    }
    return out;
}

std::size_t choose_truncation(const CoherentField &field, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw InvalidInput("tail tolerance must lie in (0, 1)");
    }
    const double mean = field.mean_photon_number();
    if (mean == 0.0) {
        return 1;
    }

    const double log_mean = std::log(mean);
    auto log_pmf = [&](std::size_t n) {
        const auto nd = static_cast<double>(n);
        return -mean + nd * log_mean - std::lgamma(nd + 1.0);
    };

    // Extend the cap past the mean until the pmf there is negligible against
    // the tolerance; the guaranteed-sufficient bound n + 10 sqrt(n) is only a
    // starting point since it is not enough for small means.
    auto cap = static_cast<std::size_t>(
        std::ceil(mean + 10.0 * std::sqrt(mean)));
    cap = std::max<std::size_t>(cap, 16);
    while (static_cast<double>(cap) <= mean + 1.0 ||
           log_pmf(cap) > std::log(tail_tol) - std::log(1e6)) {
        cap *= 2;
    }

    // Geometric bound for everything past the cap.
    const double ratio = mean / static_cast<double>(cap + 2);
    double tail = std::exp(log_pmf(cap + 1)) / (1.0 - ratio);

    // tail holds sum_{n > k}; walk k down from the cap. Summing from the
    // small end keeps the tail accurate far below machine epsilon.
    std::size_t best = cap;
    for (std::size_t k = cap; k >= 1; --k) {
        if (tail < tail_tol) {
            best = k;
        } else {
            break;
        }
        tail += std::exp(log_pmf(k));
    }
    return best;
}

JointState::JointState(std::vector<Complex> ground, std::vector<Complex> excited)
    : ground_(std::move(ground)), excited_(std::move(excited)) {
    if (ground_.size() != excited_.size()) {
        throw DimensionMismatch("ground and excited amplitude sequences "
                                "differ in length");
    }
    if (ground_.size() < 2) {
        throw InvalidInput("joint state needs a photon cutoff of at least 1");
    }
}

JointState JointState::product(const AtomState &atom,
                               std::span<const Complex> field) {
    double field_norm = 0.0;
    for (const auto amplitude : field) {
        field_norm += std::norm(amplitude);
    }
    if (!(field_norm > 0.0)) {
        throw InvalidInput("field amplitudes are all zero");
    }
    const double scale = 1.0 / std::sqrt(field_norm);
    std::vector<Complex> ground(field.size());
    std::vector<Complex> excited(field.size());
    for (std::size_t n = 0; n < field.size(); ++n) {
        ground[n] = atom.ground() * field[n] * scale;
        excited[n] = atom.excited() * field[n] * scale;
    }
    return {std::move(ground), std::move(excited)};
}

JointState JointState::product(const AtomState &atom,
                               const CoherentField &field, double tail_tol) {
    const auto coefficients =
        coherent_coefficients(field, choose_truncation(field, tail_tol));
    return product(atom, coefficients);
}

double JointState::norm_squared() const {
    double sum = 0.0;
    for (std::size_t n = 0; n < ground_.size(); ++n) {
        sum += std::norm(ground_[n]) + std::norm(excited_[n]);
    }
    return sum;
}

double JointState::max_abs_diff(const JointState &other) const {
    if (other.ground_.size() != ground_.size()) {
        throw DimensionMismatch("joint states have different cutoffs");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < ground_.size(); ++n) {
        worst = std::max(worst, std::abs(ground_[n] - other.ground_[n]));
        worst = std::max(worst, std::abs(excited_[n] - other.excited_[n]));
    }
    return worst;
}

} // namespace previval
