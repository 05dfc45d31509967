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
 * Scans of conditional probabilities over a lambda*tau grid and the curve
 * diagnostics used to read collapses, revivals, previvals and the
 * unretrodictable point off them.
 *
 * scan() evaluates grid points with OpenMP; reference::scan() is the serial
 * loop it must reproduce bit for bit.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "previval/core_state.hpp"
#include "previval/jc_evolution.hpp"

namespace previval::analysis {

/// Uniform grid start, start + step, ... up to stop (inclusive, with a 1e-9
/// relative slack so [0, 50] step 0.02 has 2501 points).
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    /// Throws InvalidInput unless step > 0, stop >= start and all finite.
    void validate() const;
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] double at(std::size_t k) const {
        return start + static_cast<double>(k) * step;
    }
    [[nodiscard]] std::vector<double> points() const;
};

/// P(outcome measured | prepared) at the measurement time.
struct PredictiveProbability {
    AtomState prepared;
    PomElement outcome;
};

/// P(hypothesis prepared | outcome measured).
struct RetrodictiveProbability {
    PreparationEnsemble ensemble;
    std::string hypothesis;
    PomElement outcome;
};

enum class Part { Real, Imaginary };

/// One element of the normalized retrodictive state at the preparation time.
struct RetrodictiveElement {
    PomElement outcome;
    Level row = Level::Ground;
    Level col = Level::Ground;
    Part part = Part::Real;
};

using Quantity =
    std::variant<PredictiveProbability, RetrodictiveProbability,
                 RetrodictiveElement>;

/// Field, model and truncation shared by every grid point of a scan.
struct ScanContext {
    CoherentField field;
    ModelParams params;
    double tail_tol = kDefaultTailTolerance;
    std::string label;
};

struct ScanMetadata {
    std::string label;
    double magnitude = 0.0;
    double phase = 0.0;
    double detuning = 0.0;
    double coupling = 1.0;
    std::string ensemble;
    std::string outcome;
    double step = 0.0;
};

/// A grid point; an empty value marks a zero-probability conditioning gap.
struct ScanPoint {
    double lambda_tau = 0.0;
    std::optional<double> value;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    ScanMetadata metadata;

    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] bool complete() const;
    /// lambda*tau of the first gap, if any.
    [[nodiscard]] std::optional<double> first_gap() const;
};

/// Value of @p quantity at one lambda*tau; nullopt on ZeroProbability.
[[nodiscard]] std::optional<double> evaluate(const Quantity &quantity,
                                             const ScanContext &context,
                                             double lambda_tau);

[[nodiscard]] ScanMetadata describe(const Quantity &quantity,
                                    const Grid &grid,
                                    const ScanContext &context);

/**
 * @brief Evaluate @p quantity on every grid point, in parallel.
 *
 * Deterministic: the output is identical to reference::scan. Zero-probability
 * outcomes become gaps. Throws InvalidInput for a bad grid or a context with
 * zero coupling.
 */
[[nodiscard]] ScanResult scan(const Quantity &quantity, const Grid &grid,
                              const ScanContext &context);

namespace reference {
/// Serial implementation of analysis::scan.
[[nodiscard]] ScanResult scan(const Quantity &quantity, const Grid &grid,
                              const ScanContext &context);
} // namespace reference

struct Window {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] bool contains(double t) const { return t >= lo && t <= hi; }
};

struct EnvelopeStats {
    double mean = 0.0;
    /// max |value - mean| over the window.
    double peak_deviation = 0.0;
    /// Mean spacing of local maxima; absent with fewer than two maxima.
    std::optional<double> period;
    std::size_t samples = 0;
};

/// Throws InvalidInput if the window leaves the scan range or holds fewer
/// than 20 defined samples.
[[nodiscard]] EnvelopeStats envelope_stats(const ScanResult &result,
                                           Window window);

/// 2 pi lambda / Omega(nbar): one Rabi period in lambda*tau units.
[[nodiscard]] double rabi_period(const CoherentField &field,
                                 const ModelParams &params);

/// lambda * t_r with t_r = 2 pi / (dOmega/dn) at nbar; 2 pi sqrt(nbar) on
/// resonance.
[[nodiscard]] double revival_time(const CoherentField &field,
                                  const ModelParams &params);

enum class HalfRevivalConvention {
    /// Half of revival_time(): pi sqrt(nbar) on resonance.
    HalfOfRevival,
    /// The literal expression pi / (2 Omega(nbar)), in lambda*tau units.
    Literal,
};

[[nodiscard]] double
half_revival_time(const CoherentField &field, const ModelParams &params,
                  HalfRevivalConvention convention =
                      HalfRevivalConvention::HalfOfRevival);

/// Centered running mean of the defined samples with a full width of
/// @p width in lambda*tau.
[[nodiscard]] std::vector<ScanPoint> running_mean(const ScanResult &result,
                                                  double width);

/**
 * @brief Oscillation amplitude envelope, smoothed.
 *
 * Upper minus lower envelope, each a linear interpolation through the local
 * maxima (minima), then a running mean of width @p smoothing_width.
 */
[[nodiscard]] std::vector<ScanPoint>
smoothed_envelope(const ScanResult &result, double smoothing_width);

/**
 * @brief Location of the strongest resurgence of oscillation.
 *
 * The noise floor is the largest smoothed envelope inside
 * @p collapse_window. Returns the argmax of the smoothed envelope inside
 * @p search_window, or nullopt unless that peak exceeds twice the floor (and
 * 1e-6). The windows must be ordered (collapse first) and disjoint.
 */
[[nodiscard]] std::optional<double>
find_revival(const ScanResult &result, Window collapse_window,
             Window search_window, double smoothing_width);

/// As above with the smoothing width fixed at three Rabi periods of the
/// scan's field.
[[nodiscard]] std::optional<double>
find_revival(const ScanResult &result, Window collapse_window,
             Window search_window);

/**
 * @brief Period of the strongest slow oscillation in @p window.
 *
 * Periodogram peak of the running mean (width @p smoothing_width) over
 * periods between 2 * smoothing_width and the window length. Absent when the
 * window holds fewer than 20 samples or the curve is flat.
 */
[[nodiscard]] std::optional<double>
dominant_period(const ScanResult &result, Window window,
                double smoothing_width);

/// max |a - b| over common defined points in @p window. Grids must match.
[[nodiscard]] double max_abs_difference(const ScanResult &a,
                                        const ScanResult &b, Window window);

/**
 * @brief Distance of the retrodicted preparation from no information.
 *
 * With the uniform {e, g} ensemble and the measured element projecting on
 * minus_state(phase of alpha), returns max_i |P(i | minus) - 1/2|.
 */
[[nodiscard]] double
unretrodictability_gap(const CoherentField &field, const EvolutionSpec &spec,
                       double tail_tol = kDefaultTailTolerance);

} // namespace previval::analysis
