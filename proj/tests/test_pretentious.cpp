#include <catch2/catch_amalgamated.hpp>

#include "mfgap/kahan.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/pretentious.hpp"
#include "mfgap/prime_set.hpp"
#include "mfgap/sieve.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

using namespace mfgap;

namespace {

// Reproducible unimodular function: a hashed angle per prime.
DiscFunc random_unimodular(uint64_t seed) {
    return {"random " + std::to_string(seed), [seed](uint64_t p) {
                uint64_t h = splitmix64_finalize(seed + SPLITMIX64_GAMMA * p);
                double theta = static_cast<double>(h >> 11) *
                               (2.0 * 3.14159265358979323846 / 9007199254740992.0);
                return std::complex<double>(std::cos(theta), std::sin(theta));
            }};
}

}  // namespace

TEST_CASE("distance hand cases", "[pretentious]") {
    SpfTable t(1000000);

    DistanceResult same = pretentious_distance(DiscFunc::one(), DiscFunc::one(), 1000000, t);
    CHECK(same.squared == 0.0);
    CHECK(same.value == 0.0);
    CHECK(same.prime_count == 78498);

    // lambda on every prime vs 1: each term is 2/p.
    DiscFunc lam = DiscFunc::liouville(PrimeSet::all());
    DistanceResult far = pretentious_distance(lam, DiscFunc::one(), 1000000, t);
    KahanSum recip;
    t.for_primes(2, 1000000, [&](uint64_t p) { recip.add(1.0 / static_cast<double>(p)); });
    CHECK(recip.value() == Catch::Approx(2.8873280995676938).epsilon(1e-12));
    CHECK(far.squared == Catch::Approx(2.0 * recip.value()).epsilon(1e-12));

    // Archimedean repulsion from 1.
    for (double tt : {0.5, 1.0, 5.0}) {
        DistanceResult d = pretentious_distance(DiscFunc::one(), DiscFunc::archimedean(tt),
                                                1000000, t);
        CHECK(d.squared >= std::log1p(tt * std::log(1e6)) - 10.0);
    }
}

TEST_CASE("distance symmetry and range errors", "[pretentious]") {
    SpfTable t(100000);
    DiscFunc g1 = random_unimodular(7);
    DiscFunc g2 = random_unimodular(8);
    DistanceResult d12 = pretentious_distance(g1, g2, 100000, t);
    DistanceResult d21 = pretentious_distance(g2, g1, 100000, t);
    CHECK(d12.squared == d21.squared);

    CHECK_THROWS_AS(pretentious_distance(g1, g2, 1, t), std::invalid_argument);
    CHECK_THROWS_AS(pretentious_distance(g1, g2, 200000, t), std::invalid_argument);

    DiscFunc bad{"bad", [](uint64_t) { return std::complex<double>(2.0, 0.0); }};
    CHECK_THROWS_WITH(pretentious_distance(bad, g1, 1000, t),
                      Catch::Matchers::ContainsSubstring("invalid-input"));
}

TEST_CASE("triangle inequality over random triples", "[pretentious]") {
    SpfTable t(20000);
    for (uint64_t trial = 0; trial < 1000; ++trial) {
        DiscFunc g1 = random_unimodular(3 * trial + 1);
        DiscFunc g2 = random_unimodular(3 * trial + 2);
        DiscFunc g3 = random_unimodular(3 * trial + 3);
        double d13 = pretentious_distance(g1, g3, 20000, t).value;
        double d12 = pretentious_distance(g1, g2, 20000, t).value;
        double d23 = pretentious_distance(g2, g3, 20000, t).value;
        REQUIRE(d13 <= d12 + d23 + 1e-9);
    }
}

TEST_CASE("multiplicative triangle inequality", "[pretentious]") {
    SpfTable t(20000);
    for (uint64_t trial = 0; trial < 200; ++trial) {
        DiscFunc g1 = random_unimodular(4 * trial + 1);
        DiscFunc h1 = random_unimodular(4 * trial + 2);
        DiscFunc g2 = random_unimodular(4 * trial + 3);
        DiscFunc h2 = random_unimodular(4 * trial + 4);
        double lhs = pretentious_distance(DiscFunc::product(g1, g2),
                                          DiscFunc::product(h1, h2), 20000, t)
                         .value;
        double rhs = pretentious_distance(g1, h1, 20000, t).value +
                     pretentious_distance(g2, h2, 20000, t).value;
        REQUIRE(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("distance grows with the cutoff", "[pretentious]") {
    SpfTable t(100000);
    DiscFunc lam = DiscFunc::liouville(PrimeSet::all());
    double d3 = pretentious_distance(lam, DiscFunc::one(), 1000, t).squared;
    double d4 = pretentious_distance(lam, DiscFunc::one(), 10000, t).squared;
    double d5 = pretentious_distance(lam, DiscFunc::one(), 100000, t).squared;
    CHECK(d3 <= d4);
    CHECK(d4 <= d5);
}

TEST_CASE("halasz minimum", "[pretentious]") {
    SpfTable t(100000);

    // Exact archimedean twist: minimum 0 on the grid point t = 0.5.
    HalaszResult h1 = halasz_M(DiscFunc::archimedean(0.5), 100000, 2.0, 41, t);
    CHECK(h1.M <= 1e-9);
    CHECK(h1.t_min == Catch::Approx(0.5).margin(0.05));

    // Constant 1: minimum 0 at t = 0.
    HalaszResult h2 = halasz_M(DiscFunc::one(), 100000, 5.0, 21, t);
    CHECK(h2.M == 0.0);
    CHECK(h2.t_min == Catch::Approx(0.0).margin(1e-12));

    // lambda pretends to nothing: M stays large and below D(g, 1)^2.
    DiscFunc lam = DiscFunc::liouville(PrimeSet::all());
    HalaszResult h3 = halasz_M(lam, 100000, 10.0, 101, t);
    double d1 = pretentious_distance(lam, DiscFunc::one(), 100000, t).squared;
    CHECK(h3.M >= 1.0);
    CHECK(h3.M <= d1 + 1e-9);

    for (uint64_t seed : {11ull, 12ull, 13ull}) {
        DiscFunc g = random_unimodular(seed);
        HalaszResult h = halasz_M(g, 10000, 3.0, 31, t);
        double d = pretentious_distance(g, DiscFunc::one(), 10000, t).squared;
        CHECK(h.M <= d + 1e-9);
    }
}

TEST_CASE("second moment statistics", "[pretentious]") {
    SpfTable t(1000000);

    TkStats empty = tk_stats(AdditiveFuncDef::omega_of(PrimePowerSet::empty()), 100000, t);
    CHECK(empty.A == 0.0);
    CHECK(empty.B2 == 0.0);
    CHECK(empty.variance == 0.0);
    CHECK(empty.ratio == 0.0);

    TkStats om = tk_stats(AdditiveFuncDef::omega(), 100000, t);
    CHECK(om.A > 2.0);
    CHECK(om.ratio <= 4.0);

    PrimePowerSet S = PrimePowerSet::powers_of(PrimeSet::residue(4, {1}));
    TkStats half = tk_stats(AdditiveFuncDef::omega_of(S), 100000, t);
    double llx = std::log(std::log(100000.0));
    CHECK(half.A >= 0.5 * llx - 2.0);
    CHECK(half.A <= 0.5 * llx + 2.0);
    CHECK(half.ratio <= 4.0);
}

TEST_CASE("dual defect", "[pretentious]") {
    SpfTable t(100000);

    std::vector<uint64_t> all(100000);
    for (uint64_t n = 1; n <= 100000; ++n) all[n - 1] = n;
    ElliottDefect full = elliott_defect(all, 100000, 1000, t);
    CHECK(full.ratio <= 2.0);

    ElliottDefect none = elliott_defect({}, 100000, 100, t);
    CHECK(none.lhs == 0.0);
    CHECK(none.ratio == 0.0);

    std::vector<uint64_t> evens;
    for (uint64_t n = 2; n <= 10000; n += 2) evens.push_back(n);
    ElliottDefect ev = elliott_defect(evens, 10000, 100, t);
    CHECK(ev.ratio <= 2.0);
    CHECK(ev.lhs > 0.0);
}

TEST_CASE("log correlation", "[pretentious]") {
    SpfTable t(100010);

    std::complex<double> c = log_correlation(DiscFunc::one(), DiscFunc::one(), 1, 0, 1, 1,
                                             100000, t);
    KahanSum harmonic;
    for (uint64_t n = 1; n <= 100000; ++n) harmonic.add(1.0 / static_cast<double>(n));
    double want = harmonic.value() / std::log(100000.0);
    CHECK(c.real() == Catch::Approx(want).epsilon(1e-12));
    CHECK(c.imag() == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.real() >= 0.94);
    CHECK(c.real() <= 1.06);

    CHECK_THROWS_WITH(log_correlation(DiscFunc::one(), DiscFunc::one(), 1, 0, 2, 0, 1000, t),
                      Catch::Matchers::ContainsSubstring("degenerate-pair"));
    CHECK_THROWS_AS(log_correlation(DiscFunc::one(), DiscFunc::one(), 0, 1, 1, 1, 1000, t),
                    std::invalid_argument);
}

TEST_CASE("disc values multiply", "[pretentious]") {
    SpfTable t(1000);
    DiscFunc chi = DiscFunc::mod4();
    CHECK(disc_value_at(chi, 15, &t).real() == Catch::Approx(-1.0).margin(1e-12));
    CHECK(std::abs(disc_value_at(chi, 30, &t)) == Catch::Approx(0.0).margin(1e-12));
    CHECK(disc_value_at(chi, 25, &t).real() == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(disc_value_at(chi, 0, &t), std::invalid_argument);
}
