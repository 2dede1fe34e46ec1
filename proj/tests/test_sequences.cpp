#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "nct/constants.hpp"
#include "nct/rng.hpp"
#include "nct/sequences.hpp"

using namespace nct;

namespace {

DecreasingSequence random_decreasing(Rng& rng, std::size_t len, double scale) {
    std::vector<double> v(len);
    for (auto& x : v) x = scale * rng.uniform();
    std::sort(v.begin(), v.end(), std::greater<double>());
    return DecreasingSequence(std::move(v));
}

// Averaging step: move mass from a larger entry to a smaller one without
// breaking the ordering.  The result is majorized by the original.
DecreasingSequence robin_hood(Rng& rng, const DecreasingSequence& b, int steps) {
    std::vector<double> v = b.values();
    for (int s = 0; s < steps && v.size() >= 2; ++s) {
        const std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(v.size()) - 2));
        const std::size_t j = static_cast<std::size_t>(rng.integer(static_cast<int>(i) + 1, static_cast<int>(v.size()) - 1));
        if (v[i] <= v[j]) continue;
        const double room = 0.5 * (v[i] - v[j]);
        double delta = room * rng.uniform();
        // keep v sorted: do not let v[i] drop below its right neighbor or
        // v[j] rise above its left neighbor
        if (i + 1 < v.size()) delta = std::min(delta, v[i] - v[i + 1]);
        if (j > 0) delta = std::min(delta, v[j - 1] - v[j]);
        if (delta <= 0.0) continue;
        v[i] -= delta;
        v[j] += delta;
    }
    return DecreasingSequence(std::move(v));
}

}  // namespace

TEST_CASE("decreasing rearrangement sorts moduli") {
    auto r = decreasing_rearrangement(std::vector<double>{1.0, 3.0, 2.0});
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 3.0);
    CHECK(r[1] == 2.0);
    CHECK(r[2] == 1.0);

    auto c = decreasing_rearrangement(
        std::vector<std::complex<double>>{{-2.0, 0.0}, {0.0, 0.0}, {0.0, 2.0}});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(2.0));
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == doctest::Approx(0.0));
}

TEST_CASE("decreasing sequence validation") {
    CHECK_THROWS_AS(DecreasingSequence({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(DecreasingSequence({1.0, -0.5}), std::invalid_argument);
    CHECK_NOTHROW(DecreasingSequence(std::vector<double>{}));
    CHECK_NOTHROW(DecreasingSequence({2.0, 2.0, 0.0}));
}

TEST_CASE("weak quasi-norm on model sequences") {
    // m ones: sup over j of (j+1)^{1/p} is attained at the last one
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        DecreasingSequence ones(std::vector<double>(7, 1.0));
        CHECK(weak_quasinorm(ones, p) == doctest::Approx(std::pow(7.0, 1.0 / p)));
    }
    // extremal decay (j+1)^{-1/p} has weak quasi-norm exactly 1
    for (double p : {0.5, 1.0, 3.0}) {
        std::vector<double> v;
        for (int j = 0; j < 50; ++j) v.push_back(std::pow(j + 1.0, -1.0 / p));
        CHECK(weak_quasinorm(DecreasingSequence(std::move(v)), p) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(weak_quasinorm(DecreasingSequence({1.0}), 0.0), std::invalid_argument);
}

TEST_CASE("primed norm values and the equivalence sandwich") {
    CHECK(primed_norm(DecreasingSequence({1.0, 0.0, 0.0}), 3.0) == doctest::Approx(1.0));
    // m ones at p = 2: sup_N N^{-1/2} min(N, m) = sqrt(m)
    CHECK(primed_norm(DecreasingSequence(std::vector<double>(9, 1.0)), 2.0) ==
          doctest::Approx(3.0));
    CHECK_THROWS_AS(primed_norm(DecreasingSequence({1.0}), 1.0), std::invalid_argument);

    Rng rng(20260825);
    for (int trial = 0; trial < 200; ++trial) {
        const double p = 1.0 + 3.0 * rng.uniform();
        auto a = random_decreasing(rng, 1 + static_cast<std::size_t>(rng.integer(0, 30)), 2.0);
        const double weak = weak_quasinorm(a, p);
        const double primed = primed_norm(a, p);
        CHECK(weak <= primed * (1.0 + 1e-12));
        CHECK(primed <= p / (p - 1.0) * weak * (1.0 + 1e-12));
    }
}

TEST_CASE("schatten norm") {
    CHECK(schatten_norm(DecreasingSequence({4.0, 3.0}), 2.0) == doctest::Approx(5.0));
    CHECK(schatten_norm(DecreasingSequence({4.0, 3.0}), 1.0) == doctest::Approx(7.0));
    CHECK_THROWS_AS(schatten_norm(DecreasingSequence({1.0}), 0.0), std::invalid_argument);
}

TEST_CASE("submajorization and majorization witnesses") {
    const DecreasingSequence b({3.0, 1.0});
    const DecreasingSequence a({2.0, 2.0});
    auto w = submajorizes(b, a, 1e-12);
    CHECK(w.holds);
    CHECK(w.deficit <= 0.0);

    auto bad = submajorizes(a, b, 1e-12);
    CHECK_FALSE(bad.holds);
    CHECK(bad.worst_n == 0);
    CHECK(bad.deficit == doctest::Approx(1.0));

    CHECK(majorizes(b, a, 1e-12).holds);
    // (3,2) dominates (2,2) in partial sums but the totals differ
    auto sub_only = majorizes(DecreasingSequence({3.0, 2.0}), a, 1e-12);
    CHECK_FALSE(sub_only.holds);
    CHECK(sub_only.total_gap == doctest::Approx(1.0));
    CHECK(submajorizes(DecreasingSequence({3.0, 2.0}), a, 1e-12).holds);

    // different lengths: missing entries count as zeros
    CHECK(submajorizes(DecreasingSequence({2.0, 1.0, 1.0}), DecreasingSequence({2.0}), 1e-12).holds);
}

TEST_CASE("schatten norms are monotone under submajorization for p >= 1") {
    Rng rng(77001);
    for (int trial = 0; trial < 200; ++trial) {
        auto b = random_decreasing(rng, 2 + static_cast<std::size_t>(rng.integer(0, 10)), 3.0);
        auto a_major = robin_hood(rng, b, 12);
        // scale down, making it merely submajorized
        std::vector<double> shrunk = a_major.values();
        const double shrink = 0.6 + 0.4 * rng.uniform();
        for (auto& x : shrunk) x *= shrink;
        DecreasingSequence a(std::move(shrunk));

        REQUIRE(majorizes(b, a_major, 1e-9).holds);
        REQUIRE(submajorizes(b, a, 1e-9).holds);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            CHECK(schatten_norm(a_major, p) <= schatten_norm(b, p) * (1.0 + 1e-12));
            CHECK(schatten_norm(a, p) <= schatten_norm(b, p) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("constant table values") {
    CHECK(constants::c_plus(4.0) == doctest::Approx(std::sqrt(260.0)));
    CHECK(constants::c_minus(1.0) == doctest::Approx(2.0));
    CHECK(constants::gamma_holder(4.0, 4.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(constants::gamma_holder(2.0, 6.0) == doctest::Approx(constants::gamma_holder(6.0, 2.0)));

    // c_two(p) agrees with its defining product
    const double p = 5.0;
    const double expect = std::pow(2.0, -1.0 / p) / std::sqrt(p) *
                          std::pow(p - 2.0, 1.0 / p - 0.5) * constants::c_plus(p);
    CHECK(constants::c_two(p) == doctest::Approx(expect));

    CHECK_THROWS_AS(constants::c_plus(2.0), std::domain_error);
    CHECK_THROWS_AS(constants::c_minus(2.0), std::domain_error);
    CHECK_THROWS_AS(constants::gamma_holder(0.0, 1.0), std::domain_error);
}

TEST_CASE("eigenvalue-counting constants dispatch by regime") {
    // p > 1 uses c_plus(2p)^{2p} and insists on q = p
    CHECK(constants::clr_constant(2.0, 2.0) ==
          doctest::Approx(std::pow(constants::c_plus(4.0), 4.0)));
    CHECK_THROWS_AS(constants::clr_constant(2.0, 3.0), std::domain_error);
    // p = 1 uses c_two(2q)^2 and insists on q > 1
    CHECK(constants::clr_constant(1.0, 2.0) ==
          doctest::Approx(std::pow(constants::c_two(4.0), 2.0)));
    CHECK_THROWS_AS(constants::clr_constant(1.0, 1.0), std::domain_error);
    // p < 1 uses c_minus(2p)^{2p} and insists on q = 1
    CHECK(constants::clr_constant(0.5, 1.0) ==
          doctest::Approx(std::pow(constants::c_minus(1.0), 1.0)));
    CHECK_THROWS_AS(constants::clr_constant(0.5, 2.0), std::domain_error);

    CHECK(constants::sandwich_constant_sq(2.0, 2.0) ==
          doctest::Approx(std::pow(constants::c_plus(4.0), 2.0)));

    // Lieb-Thirring bound: positive, and the Beta-function factor matches a
    // directly computed B(p+1, gamma) = Gamma(p+1)Gamma(gamma)/Gamma(p+gamma+1)
    const double lt = constants::lt_bound(2.0, 1.0, 2, 4.0);
    const double beta = std::tgamma(3.0) * std::tgamma(1.0) / std::tgamma(4.0);
    CHECK(lt == doctest::Approx(1.0 * beta * std::pow(constants::c_plus(4.0), 4.0) * 4.0));
    CHECK_THROWS_AS(constants::lt_bound(1.0, 1.0, 2, 4.0), std::domain_error);

    // Sobolev constant from the kinetic-bound constant
    const double L = 0.5;
    CHECK(constants::sobolev_K_from_L(3, L) ==
          doctest::Approx(0.6 * std::pow(2.5 * L, -2.0 / 3.0)));
    CHECK(std::string(constants::sobolev_exponent_note()).size() > 0);
}
