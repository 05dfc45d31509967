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

#include "previval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

#include "previval/errors.hpp"
#include "previval/retrodiction.hpp"

namespace previval::analysis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

struct Samples {
    std::vector<double> t;
    std::vector<double> v;
};

Samples defined_samples(std::span<const ScanPoint> points) {
    Samples out;
    out.t.reserve(points.size());
    out.v.reserve(points.size());
    for (const auto &p : points) {
        if (p.value) {
            out.t.push_back(p.lambda_tau);
            out.v.push_back(*p.value);
        }
    }
    return out;
}

std::vector<double> moving_average(const Samples &s, double width) {
    const double half = 0.5 * width;
    std::vector<double> out(s.t.size());
    std::size_t lo = 0;
    std::size_t hi = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        while (hi < s.t.size() && s.t[hi] <= s.t[i] + half) {
            sum += s.v[hi++];
        }
        while (s.t[lo] < s.t[i] - half) {
            sum -= s.v[lo++];
        }
        out[i] = sum / static_cast<double>(hi - lo);
    }
    return out;
}

/// Piecewise-linear curve through (t[k], v[k]) for the given knot indices,
/// held constant outside the first and last knot.
std::vector<double> interpolate_through(const Samples &s,
                                        const std::vector<std::size_t> &knots) {
    std::vector<double> out(s.t.size(), 0.0);
    if (knots.empty()) {
        return out;
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        while (next < knots.size() && knots[next] < i) {
            ++next;
        }
        if (next == 0) {
            out[i] = s.v[knots.front()];
        } else if (next == knots.size()) {
            out[i] = s.v[knots.back()];
        } else {
            const std::size_t a = knots[next - 1];
            const std::size_t b = knots[next];
            const double w = (s.t[i] - s.t[a]) / (s.t[b] - s.t[a]);
            out[i] = (1.0 - w) * s.v[a] + w * s.v[b];
        }
    }
    return out;
}

std::vector<std::size_t> local_maxima(std::span<const double> v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> local_minima(std::span<const double> v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

void validate_context(const ScanContext &context) {
    context.params.validate();
    if (!(context.params.coupling > 0.0)) {
        throw InvalidInput("scan: coupling must be positive");
    }
    if (!(context.tail_tol > 0.0 && context.tail_tol < 1.0)) {
        throw InvalidInput("scan: tail tolerance must lie in (0, 1)");
    }
}

void validate_quantity(const Quantity &quantity) {
    if (const auto *retro = std::get_if<RetrodictiveProbability>(&quantity)) {
        if (retro->ensemble.empty()) {
            throw EmptyEnsemble("scan: preparation ensemble is empty");
        }
        static_cast<void>(retro->ensemble.index_of(retro->hypothesis));
    }
}

std::string format_number(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

} // namespace

void Grid::validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw InvalidInput("grid bounds must be finite");
    }
    if (!(step > 0.0)) {
        throw InvalidInput("grid step must be positive");
    }
    if (stop < start) {
        throw InvalidInput("grid range is empty");
    }
}

std::size_t Grid::size() const {
    validate();
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) +
           1;
}

std::vector<double> Grid::points() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = at(k);
    }
    return out;
}

bool ScanResult::complete() const { return !first_gap().has_value(); }

std::optional<double> ScanResult::first_gap() const {
    for (const auto &p : points) {
        if (!p.value) {
            return p.lambda_tau;
        }
    }
    return std::nullopt;
}

std::optional<double> evaluate(const Quantity &quantity,
                               const ScanContext &context, double lambda_tau) {
    const auto spec = EvolutionSpec::at_lambda_tau(context.params, lambda_tau);
    try {
        return std::visit(
            Overloaded{
                [&](const PredictiveProbability &q) {
                    return predictive_prob(q.prepared, context.field,
                                           q.outcome, spec, context.tail_tol);
                },
                [&](const RetrodictiveProbability &q) {
                    return retrodictive_prob(q.ensemble, q.hypothesis,
                                             q.outcome, context.field, spec,
                                             context.tail_tol);
                },
                [&](const RetrodictiveElement &q) {
                    const Complex element = retrodictive_state_at_prep(
                        q.outcome, context.field, spec, context.tail_tol)(
                        q.row, q.col);
                    return q.part == Part::Real ? element.real()
                                                : element.imag();
                },
            },
            quantity);
    } catch (const ZeroProbability &) {
        return std::nullopt;
    }
}

ScanMetadata describe(const Quantity &quantity, const Grid &grid,
                      const ScanContext &context) {
    ScanMetadata meta;
    meta.label = context.label;
    meta.magnitude = context.field.magnitude();
    meta.phase = context.field.phase();
    meta.detuning = context.params.detuning;
    meta.coupling = context.params.coupling;
    meta.step = grid.step;
    std::visit(Overloaded{
                   [&](const PredictiveProbability &q) {
                       meta.ensemble = "-";
                       meta.outcome = q.outcome.label();
                   },
                   [&](const RetrodictiveProbability &q) {
                       std::string text;
                       for (const auto &member : q.ensemble.members()) {
                           if (!text.empty()) {
                               text += ' ';
                           }
                           text += member.label + ':' +
                                   format_number(member.prior);
                       }
                       meta.ensemble = text;
                       meta.outcome = q.outcome.label();
                   },
                   [&](const RetrodictiveElement &q) {
                       meta.ensemble = "-";
                       meta.outcome = q.outcome.label();
                   },
               },
               quantity);
    return meta;
}

ScanResult scan(const Quantity &quantity, const Grid &grid,
                const ScanContext &context) {
    validate_context(context);
    validate_quantity(quantity);
    const std::size_t count = grid.size();

    ScanResult result;
    result.metadata = describe(quantity, grid, context);
    result.points.resize(count);

    std::exception_ptr failure;
    const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t k = 0; k < signed_count; ++k) {
        const double lambda_tau = grid.at(static_cast<std::size_t>(k));
        auto &point = result.points[static_cast<std::size_t>(k)];
        point.lambda_tau = lambda_tau;
        try {
            point.value = evaluate(quantity, context, lambda_tau);
        } catch (...) {
#pragma omp critical(previval_scan_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

namespace reference {

ScanResult scan(const Quantity &quantity, const Grid &grid,
                const ScanContext &context) {
    validate_context(context);
    validate_quantity(quantity);
    ScanResult result;
    result.metadata = describe(quantity, grid, context);
    result.points.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double lambda_tau = grid.at(k);
        result.points.push_back({lambda_tau, evaluate(quantity, context,
                                                      lambda_tau)});
    }
    return result;
}

} // namespace reference

EnvelopeStats envelope_stats(const ScanResult &result, Window window) {
    if (result.points.empty() || !(window.lo < window.hi) ||
        window.lo < result.points.front().lambda_tau - 1e-9 ||
        window.hi > result.points.back().lambda_tau + 1e-9) {
        throw InvalidInput("envelope_stats: window outside the scan range");
    }
    Samples s;
    for (const auto &p : result.points) {
        if (p.value && window.contains(p.lambda_tau)) {
            s.t.push_back(p.lambda_tau);
            s.v.push_back(*p.value);
        }
    }
    if (s.v.size() < 20) {
        throw InvalidInput("envelope_stats: fewer than 20 samples in window");
    }

    EnvelopeStats stats;
    stats.samples = s.v.size();
    double sum = 0.0;
    for (const double v : s.v) {
        sum += v;
    }
    stats.mean = sum / static_cast<double>(s.v.size());
    for (const double v : s.v) {
        stats.peak_deviation =
            std::max(stats.peak_deviation, std::abs(v - stats.mean));
    }
    const auto maxima = local_maxima(s.v);
    if (maxima.size() >= 2) {
        stats.period = (s.t[maxima.back()] - s.t[maxima.front()]) /
                       static_cast<double>(maxima.size() - 1);
    }
    return stats;
}

double rabi_period(const CoherentField &field, const ModelParams &params) {
    const double omega =
        rabi_frequency_at(field.mean_photon_number(), params);
    if (!(omega > 0.0)) {
        throw InvalidInput("rabi_period: Rabi frequency is zero");
    }
    return kTwoPi * params.coupling / omega;
}

double revival_time(const CoherentField &field, const ModelParams &params) {
    if (!(field.mean_photon_number() > 0.0) || !(params.coupling > 0.0)) {
        throw InvalidInput("revival_time needs a non-vacuum field and a "
                           "positive coupling");
    }
    const double omega =
        rabi_frequency_at(field.mean_photon_number(), params);
    return std::numbers::pi * omega / params.coupling;
}

double half_revival_time(const CoherentField &field, const ModelParams &params,
                         HalfRevivalConvention convention) {
    if (convention == HalfRevivalConvention::HalfOfRevival) {
        return 0.5 * revival_time(field, params);
    }
    return 0.25 * rabi_period(field, params);
}

std::vector<ScanPoint> running_mean(const ScanResult &result, double width) {
    if (!(width > 0.0)) {
        throw InvalidInput("running_mean: width must be positive");
    }
    const Samples s = defined_samples(result.points);
    const auto mean = moving_average(s, width);
    std::vector<ScanPoint> out(s.t.size());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        out[i] = {s.t[i], mean[i]};
    }
    return out;
}

std::vector<ScanPoint> smoothed_envelope(const ScanResult &result,
                                         double smoothing_width) {
    if (!(smoothing_width > 0.0)) {
        throw InvalidInput("smoothed_envelope: width must be positive");
    }
    Samples s = defined_samples(result.points);
    const auto upper = interpolate_through(s, local_maxima(s.v));
    const auto lower = interpolate_through(s, local_minima(s.v));
    Samples amplitude{s.t, std::vector<double>(s.t.size())};
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        amplitude.v[i] = std::max(0.0, upper[i] - lower[i]);
    }
    const auto smooth = moving_average(amplitude, smoothing_width);
    std::vector<ScanPoint> out(s.t.size());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        out[i] = {s.t[i], smooth[i]};
    }
    return out;
}

std::optional<double> find_revival(const ScanResult &result,
                                   Window collapse_window,
                                   Window search_window,
                                   double smoothing_width) {
    if (!(collapse_window.lo < collapse_window.hi) ||
        !(search_window.lo < search_window.hi) ||
        collapse_window.hi > search_window.lo) {
        throw InvalidInput("find_revival: windows must be ordered and "
                           "disjoint");
    }
    const auto envelope = smoothed_envelope(result, smoothing_width);

    double floor = 0.0;
    std::optional<ScanPoint> peak;
    for (const auto &p : envelope) {
        if (collapse_window.contains(p.lambda_tau)) {
            floor = std::max(floor, *p.value);
        }
        if (search_window.contains(p.lambda_tau) &&
            (!peak || *p.value > *peak->value)) {
            peak = p;
        }
    }
    if (!peak || *peak->value <= 2.0 * std::max(floor, 1e-6)) {
        return std::nullopt;
    }
    return peak->lambda_tau;
}

std::optional<double> find_revival(const ScanResult &result,
                                   Window collapse_window,
                                   Window search_window) {
    const ModelParams params{result.metadata.detuning,
                             result.metadata.coupling};
    const CoherentField field(result.metadata.magnitude,
                              result.metadata.phase);
    return find_revival(result, collapse_window, search_window,
                        3.0 * rabi_period(field, params));
}

std::optional<double> dominant_period(const ScanResult &result, Window window,
                                      double smoothing_width) {
    const auto smooth = running_mean(result, smoothing_width);
    Samples s;
    for (const auto &p : smooth) {
        if (window.contains(p.lambda_tau)) {
            s.t.push_back(p.lambda_tau);
            s.v.push_back(*p.value);
        }
    }
    if (s.v.size() < 20) {
        return std::nullopt;
    }
    double mean = 0.0;
    for (const double v : s.v) {
        mean += v;
    }
    mean /= static_cast<double>(s.v.size());

    const double length = s.t.back() - s.t.front();
    const double min_frequency = 1.0 / length;
    const double max_frequency = 1.0 / (2.0 * smoothing_width);
    if (!(max_frequency > min_frequency)) {
        return std::nullopt;
    }
    constexpr std::size_t kCandidates = 4000;
    double best_power = 0.0;
    std::optional<double> best_period;
    for (std::size_t k = 0; k <= kCandidates; ++k) {
        const double frequency =
            min_frequency + (max_frequency - min_frequency) *
                                static_cast<double>(k) /
                                static_cast<double>(kCandidates);
        Complex sum{0.0};
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            sum += (s.v[i] - mean) * std::polar(1.0, -kTwoPi * frequency * s.t[i]);
        }
        const double power = std::norm(sum);
        if (power > best_power) {
            best_power = power;
            best_period = 1.0 / frequency;
        }
    }
    return best_period;
}

double max_abs_difference(const ScanResult &a, const ScanResult &b,
                          Window window) {
    if (a.points.size() != b.points.size()) {
        throw DimensionMismatch("max_abs_difference: grids differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        const auto &pa = a.points[k];
        const auto &pb = b.points[k];
        if (std::abs(pa.lambda_tau - pb.lambda_tau) > 1e-12) {
            throw DimensionMismatch("max_abs_difference: grids differ");
        }
        if (pa.value && pb.value && window.contains(pa.lambda_tau)) {
            worst = std::max(worst, std::abs(*pa.value - *pb.value));
        }
    }
    return worst;
}

double unretrodictability_gap(const CoherentField &field,
                              const EvolutionSpec &spec, double tail_tol) {
    const auto ensemble = PreparationEnsemble::uniform_excited_ground();
    const auto pom = pom_projector(minus_state(field.phase()), "minus");
    double gap = 0.0;
    for (const double p :
         retrodictive_probs(ensemble, pom, field, spec, tail_tol)) {
        gap = std::max(gap, std::abs(p - 0.5));
    }
    return gap;
}

} // namespace previval::analysis
