#pragma once
// Zero-dimensional sieve predictions, exactly in rational arithmetic.
//
// A prediction multiplies independent local densities: each exact-division
// constraint p^nu || (n + s) contributes (1/p^nu)(1 - 1/p) after same-prime
// constraints are merged by residue counting, and each sparse prime p in S
// contributes (1 - r_p/p) with r_p the number of residues mod p killed by
// the coprimality shifts.  r_p >= p makes the product vanish; we keep the
// exact zero and flag the prediction degenerate.

#include "mfgap/exact_int.hpp"
#include "mfgap/kahan.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/prime_set.hpp"
#include "mfgap/sieve.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

// p^nu exactly divides n + shift.
struct ExactDivision {
    uint64_t p;
    uint32_t nu;
    long long shift;
};

// gcd(n + shift, p) = 1 for every sparse prime p in S.
struct CoprimeShift {
    long long shift;
};

struct DensityPrediction {
    BigRat value;
    bool degenerate = false;  // some sparse prime lost all residues

    double to_double() const { return value.convert_to<double>(); }
};

namespace detail {

inline uint64_t mod_shift(long long s, uint64_t m) {
    long long r = s % static_cast<long long>(m);
    if (r < 0) r += static_cast<long long>(m);
    return static_cast<uint64_t>(r);
}

inline uint64_t pow_u64_checked(uint64_t p, uint32_t e) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p)
            throw std::invalid_argument("invalid-parameter: prime power overflows");
        r *= p;
    }
    return r;
}

// Count residues r mod p^K satisfying every p^nu || (r + s) condition.
// K = max nu + 1, so each condition is determined by r mod p^K.
inline uint64_t merged_residue_count(uint64_t p, const std::vector<ExactDivision>& mods,
                                     uint64_t pK) {
    uint64_t cnt = 0;
    for (uint64_t r = 0; r < pK; ++r) {
        bool ok = true;
        for (const auto& c : mods) {
            uint64_t pn = 1;
            for (uint32_t i = 0; i < c.nu; ++i) pn *= p;
            uint64_t m = pn * p;  // <= pK
            uint64_t v = (r + mod_shift(c.shift, m)) % m;
            if (v % pn != 0 || (v / pn) % p == 0) { ok = false; break; }
        }
        if (ok) ++cnt;
    }
    return cnt;
}

}  // namespace detail

// Exact density heuristic for the event
//   { n : every (p, nu, s) has p^nu || (n + s),  and gcd(n + s', q) = 1
//         for every coprime shift s' and sparse prime q in S }.
// Constraint primes must avoid S; same-prime constraints are merged via
// residue counting, and an unsatisfiable merge is a conflict error.
inline DensityPrediction zero_dim_density(const std::vector<ExactDivision>& constraints,
                                          const std::vector<CoprimeShift>& coprime,
                                          const std::vector<uint64_t>& sparse_primes) {
    std::set<uint64_t> sparse(sparse_primes.begin(), sparse_primes.end());
    for (uint64_t p : sparse)
        if (!is_prime_u64(p))
            throw std::invalid_argument("invalid-parameter: sparse set entry " + std::to_string(p) +
                                        " is not prime");

    std::map<uint64_t, std::vector<ExactDivision>> by_prime;
    for (const auto& c : constraints) {
        if (!is_prime_u64(c.p))
            throw std::invalid_argument("invalid-parameter: constraint base " + std::to_string(c.p) +
                                        " is not prime");
        if (c.nu < 1)
            throw std::invalid_argument("invalid-parameter: constraint exponent must be >= 1");
        if (sparse.count(c.p))
            throw std::domain_error("conflict: prime " + std::to_string(c.p) +
                                    " appears both as a constraint and in the sparse set");
        by_prime[c.p].push_back(c);
    }

    DensityPrediction out;
    out.value = BigRat(1);

    for (auto& [p, mods] : by_prime) {
        uint32_t maxnu = 0;
        for (const auto& c : mods) maxnu = std::max(maxnu, c.nu);
        uint64_t pK = detail::pow_u64_checked(p, maxnu + 1);
        if (pK > 100000000ull)
            throw std::invalid_argument("invalid-parameter: merged modulus at prime " +
                                        std::to_string(p) + " too large");
        if (mods.size() == 1) {
            // Single condition: residues p^nu * t with t not 0 mod p.
            out.value *= BigRat(p - 1, pK);
            continue;
        }
        uint64_t cnt = detail::merged_residue_count(p, mods, pK);
        if (cnt == 0)
            throw std::domain_error("conflict: constraints at prime " + std::to_string(p) +
                                    " admit no residue");
        out.value *= BigRat(cnt, pK);
    }

    for (uint64_t p : sparse) {
        std::set<uint64_t> killed;
        for (const auto& s : coprime) killed.insert((p - detail::mod_shift(s.shift, p)) % p);
        uint64_t rp = killed.size();
        if (rp >= p) {
            out.value = BigRat(0);
            out.degenerate = true;
            return out;
        }
        out.value *= BigRat(p - rp, p);
    }
    return out;
}

// n_S: the S-smooth part of n (largest divisor with all prime factors in S).
inline uint64_t smooth_part(uint64_t n, const PrimeSet& S, const SpfTable* table = nullptr) {
    if (n == 0)
        throw std::invalid_argument("invalid-input: n_S(0) undefined");
    uint64_t out = 1;
    for (auto [p, e] : factorize(n, table)) {
        if (!S.contains(p)) continue;
        for (uint32_t i = 0; i < e; ++i) out *= p;
    }
    return out;
}

// #{n <= X : n_S(n) > Z}.
inline uint64_t big_smooth_part_count(uint64_t X, uint64_t Z, const PrimeSet& S,
                                      const SpfTable& table) {
    if (X > table.range_end())
        throw std::invalid_argument("invalid-range: count bound exceeds sieve table");
    uint64_t count = 0;
    for (uint64_t n = 1; n <= X; ++n)
        if (smooth_part(n, S, &table) > Z) ++count;
    return count;
}

struct SparseCheckResult {
    double reciprocal_sum;
    bool sparse;  // sum <= C
};

// Sums 1/q over prime powers q <= X lying in S and compares against C.
inline SparseCheckResult sparse_check(const PrimePowerSet& S, double C, uint64_t X,
                                      const SpfTable& table) {
    if (X > table.range_end())
        throw std::invalid_argument("invalid-range: scan bound exceeds sieve table");
    KahanSum sum;
    table.for_primes(2, X, [&](uint64_t p) {
        uint64_t q = p;
        uint32_t nu = 1;
        while (true) {
            if (S.contains(p, nu, q)) sum.add(1.0 / static_cast<double>(q));
            if (q > X / p) break;
            q *= p;
            ++nu;
        }
    });
    return {sum.value(), sum.value() <= C};
}

struct BoundedProbeResult {
    uint64_t ones_count;
    double ones_density;
    double lower_bound;     // (6/pi^2) * prod over exceptional primes (1 - 1/p)
    double divergence_sum;  // sum of 1/p^nu over p^nu <= X with f(p^nu) != 1
};

// For f equal to 1 outside finitely many exceptional primes, measures the
// density of { n <= X : f(n) = 1 } against the squarefree-style heuristic
// (6/pi^2) * prod_{p exceptional} (1 - 1/p): avoiding every exceptional
// prime already forces f(n) = 1, so ones_density should clear the product
// comfortably.  Exceptional means the stored exception differs from the
// default rule at that prime.
inline BoundedProbeResult essentially_bounded_probe(const MultFuncDef& def, uint64_t X,
                                                    const SpfTable& table) {
    if (X < 2 || X > table.range_end())
        throw std::invalid_argument("invalid-range: probe bound invalid");
    std::vector<uint64_t> exceptional;
    for (auto& [key, value] : def.exceptions) {
        auto fac = factorize(key);
        uint64_t p = fac.front().first;
        uint32_t nu = fac.front().second;
        ExactInt by_rule = def.completely_multiplicative
                               ? def.default_at(p)
                               : ExactInt::pow(def.default_at(p), nu);
        if (ExactInt(value) != by_rule) exceptional.push_back(p);
    }
    std::sort(exceptional.begin(), exceptional.end());
    exceptional.erase(std::unique(exceptional.begin(), exceptional.end()), exceptional.end());

    uint64_t ones = 0;
    const ExactInt one(1);
    evaluate_range(def, 1, X, table, [&](uint64_t, const ExactInt& v) {
        if (v == one) ++ones;
        return true;
    });

    KahanSum divergence;
    table.for_primes(2, X, [&](uint64_t p) {
        uint64_t q = p;
        uint32_t nu = 1;
        while (true) {
            if (!(def.at_prime_power(p, nu, q) == one))
                divergence.add(1.0 / static_cast<double>(q));
            if (q > X / p) break;
            q *= p;
            ++nu;
        }
        return true;
    });

    double prod = 6.0 / (std::numbers::pi * std::numbers::pi);
    for (uint64_t p : exceptional) prod *= 1.0 - 1.0 / static_cast<double>(p);
    return {ones, static_cast<double>(ones) / static_cast<double>(X), prod, divergence.value()};
}

}  // namespace mfgap
