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

#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles/oracles.hpp"
#include "previval/core_state.hpp"
#include "previval/errors.hpp"

using namespace previval;
using Catch::Approx;

namespace {

AtomMatrix random_density(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto a = testing::random_unit_vector(rng, 2);
    const auto b = testing::random_unit_vector(rng, 2);
    const double w = unit(rng);
    return AtomMatrix::outer({a[0], a[1]}, {a[0], a[1]}) * Complex{w} +
           AtomMatrix::outer({b[0], b[1]}, {b[0], b[1]}) * Complex{1.0 - w};
}

} // namespace

TEST_CASE("coherent_coefficients closed forms", "[core_state]") {
    SECTION("vacuum") {
        const auto a = coherent_coefficients(CoherentField(0.0), 4);
        REQUIRE(a.size() == 5);
        CHECK(a[0] == Complex{1.0});
        for (std::size_t n = 1; n < a.size(); ++n) {
            CHECK(a[n] == Complex{0.0});
        }
    }
    SECTION("alpha = 1") {
        const auto a = coherent_coefficients(CoherentField(1.0), 2);
        const double e = std::exp(-0.5);
        CHECK(std::abs(a[0] - e) < 1e-15);
        CHECK(std::abs(a[1] - e) < 1e-15);
        CHECK(std::abs(a[2] - e / std::sqrt(2.0)) < 1e-15);
        CHECK(a[0].real() == Approx(0.606531).margin(1e-6));
        CHECK(a[2].real() == Approx(0.428882).margin(1e-6));
    }
    SECTION("phase enters as e^{i n phi}") {
        const double phi = 0.7;
        const auto a = coherent_coefficients(CoherentField(1.3, phi), 6);
        const auto b = coherent_coefficients(CoherentField(1.3), 6);
        for (std::size_t n = 0; n < a.size(); ++n) {
            CHECK(std::abs(a[n] - b[n] * std::polar(1.0, phi * n)) < 1e-14);
        }
    }
    SECTION("alpha = 5 probabilities match the Poisson(25) pmf") {
        const CoherentField field(5.0);
        const std::size_t n_max = choose_truncation(field, 1e-12);
        const auto a = coherent_coefficients(field, n_max);
        const auto pmf = testing::poisson_pmf(25.0L, n_max);
        long double total = 0.0L;
        for (std::size_t n = 0; n <= n_max; ++n) {
            CHECK(std::norm(a[n]) ==
                  Approx(static_cast<double>(pmf[n])).epsilon(1e-12));
            total += std::norm(a[n]);
        }
        CHECK(total >= 1.0L - 1e-12L);
    }
}

TEST_CASE("choose_truncation against the Poisson tail oracle",
          "[core_state]") {
    CHECK(choose_truncation(CoherentField(0.0), 1e-12) == 1);

    // Frozen from the long-double tail oracle (and cross-checked with
    // scipy.stats.poisson.sf).
    CHECK(choose_truncation(CoherentField(5.0), 1e-12) == 68);
    CHECK(choose_truncation(CoherentField(1.4), 1e-12) == 18);

    for (const double alpha : {5.0, 1.4, 0.3, 3.0, 10.0}) {
        const CoherentField field(alpha);
        const std::size_t n_max = choose_truncation(field, 1e-12);
        const long double mean = alpha * alpha;
        CAPTURE(alpha, n_max);
        CHECK(testing::poisson_tail(mean, n_max) < 1e-12L);
        if (n_max > 1) {
            CHECK(testing::poisson_tail(mean, n_max - 1) >= 1e-12L);
        }
    }
    CHECK(choose_truncation(CoherentField(5.0), 1e-12) <= 75);
}

TEST_CASE("truncation keeps the discarded probability below tolerance",
          "[core_state][property]") {
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> magnitude(0.0, 8.0);
    std::uniform_real_distribution<double> phase(0.0, 6.3);
    for (int trial = 0; trial < 200; ++trial) {
        const CoherentField field(magnitude(rng), phase(rng));
        for (const double tol : {1e-4, 1e-8, 1e-12}) {
            const auto a =
                coherent_coefficients(field, choose_truncation(field, tol));
            long double kept = 0.0L;
            for (const auto x : a) {
                kept += std::norm(x);
            }
            CAPTURE(field.magnitude(), tol);
            CHECK(1.0L - kept < tol);
        }
    }
}

TEST_CASE("choose_truncation rejects tolerances outside (0, 1)",
          "[core_state]") {
    CHECK_THROWS_AS(choose_truncation(CoherentField(1.0), 0.0), InvalidInput);
    CHECK_THROWS_AS(choose_truncation(CoherentField(1.0), 1.0), InvalidInput);
    CHECK_THROWS_AS(choose_truncation(CoherentField(1.0), -1e-3), InvalidInput);
}

TEST_CASE("CoherentField invariants", "[core_state]") {
    const CoherentField field(2.0, -std::numbers::pi / 2);
    CHECK(field.mean_photon_number() == 4.0);
    CHECK(field.phase() == Approx(1.5 * std::numbers::pi));
    CHECK(std::abs(field.amplitude() - Complex{0.0, -2.0}) < 1e-15);
    CHECK(CoherentField::from_amplitude({0.0, 3.0}).phase() ==
          Approx(std::numbers::pi / 2));
    CHECK_THROWS_AS(CoherentField(-1.0), InvalidInput);
}

TEST_CASE("minus_state", "[core_state]") {
    const double r = std::numbers::sqrt2 / 2;
    const auto zero = minus_state(0.0);
    CHECK(zero.ground().real() == Approx(0.70711).margin(1e-5));
    CHECK(zero.excited().real() == Approx(-0.70711).margin(1e-5));
    const auto pi = minus_state(std::numbers::pi);
    CHECK(std::abs(pi.ground() - r) < 1e-15);
    CHECK(std::abs(pi.excited() - r) < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const auto s = minus_state(phase(rng));
        CHECK(std::norm(s.ground()) + std::norm(s.excited()) ==
              Approx(1.0).margin(1e-15));
    }
}

TEST_CASE("AtomState rejects unnormalized amplitudes", "[core_state]") {
    CHECK_THROWS_AS(AtomState(1.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(AtomState::normalized(0.0, 0.0), InvalidInput);
    const auto s = AtomState::normalized(3.0, Complex{0.0, 4.0});
    CHECK(s.ground().real() == Approx(0.6));
}

TEST_CASE("pom_projector", "[core_state]") {
    const auto e = pom_projector(excited_state(), "e");
    const auto g = pom_projector(ground_state(), "g");
    CHECK(e.op().max_abs_diff(AtomMatrix::diagonal(0.0, 1.0)) == 0.0);
    CHECK(g.op().max_abs_diff(AtomMatrix::diagonal(1.0, 0.0)) == 0.0);
    CHECK(e.label() == "e");

    const auto m = pom_projector(minus_state(0.0), "minus");
    CHECK(m.op().max_abs_diff({0.5, -0.5, -0.5, 0.5}) < 1e-15);
    CHECK(m.op().trace().real() == Approx(1.0).margin(1e-15));

    const std::array<PomElement, 2> basis{e, g};
    CHECK(is_complete(basis, 0.0));
}

TEST_CASE("projector properties", "[core_state][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 500; ++trial) {
        const auto v = testing::random_unit_vector(rng, 2);
        const auto p = pom_projector({v[0], v[1]}, "p");
        CHECK((p.op() * p.op()).max_abs_diff(p.op()) < 1e-12);

        const double phi = phase(rng);
        const std::array<PomElement, 2> pair{
            pom_projector(minus_state(phi), "minus"),
            pom_projector(orthogonal_partner(minus_state(phi)), "plus")};
        CHECK(is_complete(pair, 1e-15));
        CHECK(pom_projector(plus_state(phi), "plus")
                  .op()
                  .max_abs_diff(pair[1].op()) < 1e-15);
    }
}

TEST_CASE("PomElement validation", "[core_state]") {
    CHECK_THROWS_AS(PomElement(AtomMatrix{1.0, 1.0, 0.0, 0.0}, "x"),
                    InvalidInput);
    CHECK_THROWS_AS(PomElement(AtomMatrix::diagonal(-0.1, 0.5), "x"),
                    InvalidInput);
    CHECK_THROWS_AS(PomElement(AtomMatrix::diagonal(0.0, 1.5), "x"),
                    InvalidInput);
    CHECK_NOTHROW(PomElement(AtomMatrix::identity(), "unit"));
}

TEST_CASE("apriori_operator", "[core_state]") {
    const auto uniform = PreparationEnsemble::uniform_excited_ground();
    CHECK(apriori_operator(uniform).max_abs_diff(AtomMatrix::diagonal(0.5, 0.5)) ==
          0.0);

    const auto e = AtomMatrix::outer(excited_state(), excited_state());
    const auto g = AtomMatrix::outer(ground_state(), ground_state());
    CHECK(apriori_operator(PreparationEnsemble({{e, 1.0, "e"}}))
              .max_abs_diff(e) == 0.0);
    CHECK(apriori_operator(
              PreparationEnsemble({{e, 0.3, "e"}, {g, 0.7, "g"}}))
              .max_abs_diff(AtomMatrix::diagonal(0.7, 0.3)) < 1e-15);

    CHECK_THROWS_AS(apriori_operator(PreparationEnsemble{}), EmptyEnsemble);
}

TEST_CASE("ensemble validation", "[core_state]") {
    const auto e = AtomMatrix::outer(excited_state(), excited_state());
    CHECK_THROWS_AS(PreparationEnsemble({{e, 0.6, "e"}}), InvalidInput);
    CHECK_THROWS_AS(PreparationEnsemble({{e, -0.5, "a"}, {e, 1.5, "b"}}),
                    InvalidInput);
    CHECK_THROWS_AS(PreparationEnsemble({{AtomMatrix::diagonal(0.5, 0.6), 1.0,
                                          "bad"}}),
                    InvalidInput);
    const auto uniform = PreparationEnsemble::uniform_excited_ground();
    CHECK(uniform.index_of("g") == 1);
    CHECK_THROWS_AS(uniform.index_of("x"), InvalidInput);
}

TEST_CASE("apriori_operator of random ensembles is a density operator",
          "[core_state][property]") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Preparation> members;
        std::vector<double> weights(static_cast<std::size_t>(count(rng)));
        double total = 0.0;
        for (auto &w : weights) {
            w = unit(rng);
            total += w;
        }
        for (std::size_t i = 0; i < weights.size(); ++i) {
            members.push_back({random_density(rng), weights[i] / total,
                               std::to_string(i)});
        }
        // Re-balance the last prior so the sum is 1 to the last bit.
        double partial = 0.0;
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            partial += members[i].prior;
        }
        members.back().prior = 1.0 - partial;

        const auto lambda = apriori_operator(PreparationEnsemble(members));
        CHECK(lambda.trace().real() == Approx(1.0).margin(1e-12));
        const auto eig = lambda.eigenvalues();
        CHECK(eig[0] >= -1e-12);
        CHECK(eig[1] <= 1.0 + 1e-12);
    }
}

TEST_CASE("eigen_decomposition reconstructs the matrix",
          "[core_state][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rho = random_density(rng);
        AtomMatrix rebuilt;
        for (const auto &[value, vector] : rho.eigen_decomposition()) {
            rebuilt += AtomMatrix::outer(vector, vector) * Complex{value};
        }
        CHECK(rebuilt.max_abs_diff(rho) < 1e-12);
    }
    const auto diag = AtomMatrix::diagonal(0.8, 0.2).eigen_decomposition();
    CHECK(diag[0].value == Approx(0.2));
    CHECK(std::abs(diag[0].vector.excited()) == Approx(1.0));
}

TEST_CASE("JointState construction", "[core_state]") {
    CHECK_THROWS_AS(JointState({1.0}, {0.0}), InvalidInput);
    CHECK_THROWS_AS(JointState({1.0, 0.0}, {0.0}), DimensionMismatch);

    const auto state = JointState::product(excited_state(), CoherentField(5.0));
    CHECK(state.n_max() == 68);
    CHECK(state.norm_squared() == Approx(1.0).margin(1e-12));
    for (std::size_t n = 0; n <= state.n_max(); ++n) {
        CHECK(state.ground(n) == Complex{0.0});
    }

    // A loose truncation is renormalized.
    const auto loose =
        JointState::product(minus_state(0.3), CoherentField(2.0), 1e-3);
    CHECK(loose.norm_squared() == Approx(1.0).margin(1e-12));
}
