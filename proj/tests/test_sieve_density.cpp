#include <catch2/catch_amalgamated.hpp>

#include "mfgap/multfunc.hpp"
#include "mfgap/sieve.hpp"
#include "mfgap/sieve_density.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

using namespace mfgap;

namespace {

// Independent oracle: brute-force count of n in [1, X] meeting the exact
// divisions, the coprimality shifts against S, and nothing else.
uint64_t brute_count(const std::vector<ExactDivision>& cons,
                     const std::vector<CoprimeShift>& coprime,
                     const std::vector<uint64_t>& sparse, uint64_t X) {
    uint64_t count = 0;
    for (uint64_t n = 1; n <= X; ++n) {
        bool ok = true;
        for (const auto& c : cons) {
            long long v = static_cast<long long>(n) + c.shift;
            if (v < 1) { ok = false; break; }
            uint64_t pk = 1;
            for (uint32_t i = 0; i < c.nu; ++i) pk *= c.p;
            uint64_t u = static_cast<uint64_t>(v);
            if (u % pk != 0 || (u / pk) % c.p == 0) { ok = false; break; }
        }
        if (!ok) continue;
        for (uint64_t q : sparse) {
            for (const auto& s : coprime) {
                long long v = static_cast<long long>(n) + s.shift;
                if (v >= 1 && static_cast<uint64_t>(v) % q == 0) { ok = false; break; }
            }
            if (!ok) break;
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("zero-dimensional sieve hand values", "[sieve-density]") {
    // 3 || n and 5 || n+1.
    DensityPrediction p = zero_dim_density({{3, 1, 0}, {5, 1, 1}}, {}, {});
    CHECK(p.value == BigRat(8, 225));
    CHECK_FALSE(p.degenerate);

    // No conditions at all.
    CHECK(zero_dim_density({}, {}, {}).value == BigRat(1));

    // 3 does not divide n(n+1).
    CHECK(zero_dim_density({}, {{0}, {1}}, {3}).value == BigRat(1, 3));
}

TEST_CASE("zero-dimensional sieve conflicts and degeneracy", "[sieve-density]") {
    // 3 || n and 3 || n+1 cannot happen.
    CHECK_THROWS_WITH(zero_dim_density({{3, 1, 0}, {3, 1, 1}}, {}, {}),
                      Catch::Matchers::ContainsSubstring("conflict"));
    // A constrained prime cannot also be sparse.
    CHECK_THROWS_WITH(zero_dim_density({{3, 1, 0}}, {{0}}, {3}),
                      Catch::Matchers::ContainsSubstring("conflict"));
    // Both residues mod 2 forbidden: degenerate zero.
    DensityPrediction z = zero_dim_density({}, {{0}, {1}}, {2});
    CHECK(z.value == BigRat(0));
    CHECK(z.degenerate);
}

TEST_CASE("same-prime constraints merge by residue enumeration", "[sieve-density]") {
    // 3 || n and 3 || n+3: n = 3, 12, 21, ... exactly n = 3 mod 9.
    DensityPrediction p = zero_dim_density({{3, 1, 0}, {3, 1, 3}}, {}, {});
    CHECK(p.value == BigRat(1, 9));
    uint64_t count = brute_count({{3, 1, 0}, {3, 1, 3}}, {}, {}, 900000);
    CHECK(count == 100000);
}

TEST_CASE("predictions match brute-force counts within 2 percent", "[sieve-density]") {
    struct Case {
        std::vector<ExactDivision> cons;
        std::vector<CoprimeShift> coprime;
        std::vector<uint64_t> sparse;
    };
    // All cases have value >= 0.01 and modulus product <= 10^4.
    std::vector<Case> cases = {
        {{{3, 1, 0}, {5, 1, 1}}, {}, {}},
        {{{2, 2, 0}}, {}, {}},
        {{}, {{0}, {1}}, {3, 5}},
        {{{3, 1, 0}}, {{0}}, {7}},
        {{{5, 1, 0}, {3, 1, 1}}, {{0}, {1}}, {7, 11}},
        {{{7, 2, 3}}, {}, {}},
    };
    const uint64_t X = 1000000;
    for (const auto& c : cases) {
        DensityPrediction p = zero_dim_density(c.cons, c.coprime, c.sparse);
        double value = p.to_double();
        REQUIRE(value >= 0.01);
        uint64_t count = brute_count(c.cons, c.coprime, c.sparse, X);
        double measured = static_cast<double>(count) / static_cast<double>(X);
        CHECK(measured == Catch::Approx(value).epsilon(0.02));
    }
}

TEST_CASE("s-part extraction", "[sieve-density]") {
    SpfTable t(5000);
    CHECK(smooth_part(360, PrimeSet::explicit_set({2, 3}), &t) == 72);
    CHECK(smooth_part(7, PrimeSet::explicit_set({2, 3}), &t) == 1);
    CHECK(smooth_part(1, PrimeSet::explicit_set({2, 3, 5}), &t) == 1);
    for (uint64_t n = 1; n <= 2000; ++n) {
        uint64_t part = smooth_part(n, PrimeSet::explicit_set({2, 5}), &t);
        CHECK(n % part == 0);
        uint64_t rest = n / part;
        CHECK(rest % 2 != 0);
        CHECK(rest % 5 != 0);
    }
}

TEST_CASE("large s-part counting", "[sieve-density]") {
    SpfTable t(1000);
    CHECK(big_smooth_part_count(100, 1, PrimeSet::empty(), t) == 0);
    CHECK(big_smooth_part_count(100, 1, PrimeSet::explicit_set({2}), t) == 50);
    CHECK(big_smooth_part_count(100, 100, PrimeSet::explicit_set({2, 3, 5}), t) == 0);
    CHECK(big_smooth_part_count(100, 7, PrimeSet::explicit_set({2}), t) == 12);  // n with 8 | n_2: 8,16,...,96
}

TEST_CASE("sparsity check over prime powers", "[sieve-density]") {
    SpfTable t(1000000);
    SparseCheckResult empty = sparse_check(PrimePowerSet::empty(), 1.0, 1000000, t);
    CHECK(empty.reciprocal_sum == 0.0);
    CHECK(empty.sparse);

    // All prime powers p^nu <= 10^6 of all primes.
    SparseCheckResult all =
        sparse_check(PrimePowerSet::powers_of(PrimeSet::all()), 3.0, 1000000, t);
    CHECK(all.reciprocal_sum == Catch::Approx(3.6603396969770756).margin(1e-9));
    CHECK_FALSE(all.sparse);

    // Squares of primes only.
    std::vector<uint64_t> squares;
    t.for_primes(2, 1000, [&](uint64_t p) {
        squares.push_back(p * p);
        return true;
    });
    SparseCheckResult sq =
        sparse_check(PrimePowerSet::explicit_values(squares), 0.5, 1000000, t);
    CHECK(sq.reciprocal_sum == Catch::Approx(0.4521204303).margin(1e-6));
    CHECK(sq.sparse);
}

TEST_CASE("essentially bounded probe", "[sieve-density]") {
    SpfTable t(100000);
    MultFuncDef one = MultFuncDef::one();
    one.completely_multiplicative = true;
    BoundedProbeResult r1 = essentially_bounded_probe(one, 100000, t);
    CHECK(r1.divergence_sum == 0.0);
    CHECK(r1.ones_density == 1.0);
    CHECK(r1.lower_bound == Catch::Approx(6.0 / (M_PI * M_PI)).margin(1e-12));

    MultFuncDef ident = MultFuncDef::identity();
    ident.completely_multiplicative = true;
    BoundedProbeResult r2 = essentially_bounded_probe(ident, 100000, t);
    CHECK(r2.ones_density == Catch::Approx(1.0 / 100000).margin(1e-15));

    // f(p) != 1 exactly on {2, 3}: constant-one with f(2)=2, f(3)=3.
    MultFuncDef sparse_exc = MultFuncDef::one().with_exception(2, 2).with_exception(3, 3);
    sparse_exc.completely_multiplicative = true;
    BoundedProbeResult r3 = essentially_bounded_probe(sparse_exc, 100000, t);
    // f(n) = 1 iff (n, 6) = 1, density 1/3.
    CHECK(r3.ones_density == Catch::Approx(1.0 / 3.0).margin(1e-3));
    CHECK(r3.ones_density >= r3.lower_bound - 0.05);
    CHECK(std::isfinite(r3.divergence_sum));
}

TEST_CASE("probe inequality on finite-divergence definitions", "[sieve-density]") {
    SpfTable t(100000);
    std::vector<MultFuncDef> defs;
    defs.push_back(MultFuncDef::one());
    defs.push_back(MultFuncDef::one().with_exception(2, 2).with_exception(3, 3));
    defs.push_back(MultFuncDef::one().with_exception(5, 7));
    for (MultFuncDef& def : defs) {
        def.completely_multiplicative = true;
        BoundedProbeResult r = essentially_bounded_probe(def, 100000, t);
        CHECK(r.ones_density >= r.lower_bound - 0.05);
    }
}
