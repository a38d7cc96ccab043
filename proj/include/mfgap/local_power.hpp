#pragma once
// Local power maps: for an odd prime ell, find g with f(p)^D = p^g
// (mod ell) across primes p, in two regimes.
//
// Exact mode intersects the arithmetic progressions each prime imposes on
// g inside Z/(ell-1): one inconsistent prime kills the modulus.  Weighted
// mode scores every candidate g by the reciprocal weight of the primes it
// satisfies and returns the argmin of the exception weight, together with
// the surviving exceptional primes.  Downstream: the S_f scan, the
// global-power verdict across moduli, exception-overlap statistics, and
// the primitive-root reciprocal sums.

#include "mfgap/exact_int.hpp"
#include "mfgap/kahan.hpp"
#include "mfgap/modular.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

enum class LocalPowerMode { Exact, Weighted };
enum class LocalPowerStatus { Unique, Absent, Ambiguous };

struct LocalPowerResult {
    uint64_t ell = 0;
    uint32_t D = 1;
    LocalPowerMode mode = LocalPowerMode::Exact;
    LocalPowerStatus status = LocalPowerStatus::Absent;
    uint64_t g = 0;                // meaningful for Unique (and Weighted winners)
    uint64_t candidate_count = 0;  // survivors (Ambiguous) or tied winners (Weighted)
    std::vector<uint64_t> exceptions;  // weighted mode: primes violating the relation
    double exception_weight = 0.0;     // sum 1/p over exceptions
    double total_weight = 0.0;         // sum 1/p over scanned primes
    bool verified = false;             // soundness re-check of the returned g
};

namespace detail {

// Merge g == r (mod m) with g == g0 (mod m0); false on contradiction.
// Both moduli divide L = ell - 1, so the lcm stays within 64 bits.
inline bool merge_progression(uint64_t& r, uint64_t& m, uint64_t g0, uint64_t m0) {
    uint64_t G = std::gcd(m, m0);
    if (r % G != g0 % G) return false;
    uint64_t m02 = m0 / G;
    // r_new = r + m * t with m t == g0 - r (mod m0).
    uint64_t diff = (g0 % m0 + m0 - r % m0) % m0;  // divisible by G
    uint64_t dg = (diff / G) % m02;
    uint64_t inv = static_cast<uint64_t>(
        egcd_inverse(static_cast<long long>((m / G) % m02), static_cast<long long>(m02)));
    uint64_t t = mul_mod_u64(dg, inv, m02);
    __uint128_t rn = static_cast<__uint128_t>(m) * t + r;
    m = m * m02;  // lcm(m, m0)
    r = static_cast<uint64_t>(rn % m);
    return true;
}

// Solutions of g * theta == phi (mod L): g == g0 (mod L/dd) when dd | phi,
// none otherwise.  Returns false when no solution.
inline bool solve_linear(uint64_t theta, uint64_t phi, uint64_t L, uint64_t& g0, uint64_t& mod0) {
    uint64_t dd = std::gcd(theta, L);
    if (phi % dd != 0) return false;
    uint64_t M = L / dd;
    uint64_t inv = static_cast<uint64_t>(
        egcd_inverse(static_cast<long long>((theta / dd) % M), static_cast<long long>(M)));
    g0 = mul_mod_u64((phi / dd) % M, inv, M);
    mod0 = M;
    return true;
}

}  // namespace detail

// Searches g in [0, ell-1) with f(p)^D = p^g (mod ell) for primes p <= X,
// p != ell.  Pre: ell an odd prime, X >= ell.
inline LocalPowerResult find_local_power_exponent(const MultFuncDef& def, uint32_t D,
                                                  uint64_t ell, uint64_t X, LocalPowerMode mode,
                                                  const SpfTable& table) {
    if (ell < 3 || ell % 2 == 0 || !is_prime_u64(ell))
        throw std::domain_error("invalid-modulus: ell must be an odd prime");
    if (D < 1)
        throw std::invalid_argument("invalid-parameter: D must be >= 1");
    if (X < ell)
        throw std::invalid_argument("invalid-range: X >= ell required");
    if (X > table.range_end())
        throw std::invalid_argument("invalid-range: X exceeds sieve table");

    const uint64_t L = ell - 1;
    IndexTable ind(ell);
    LocalPowerResult res;
    res.ell = ell;
    res.D = D;
    res.mode = mode;

    if (mode == LocalPowerMode::Exact) {
        uint64_t r = 0, m = 1;
        bool dead = false;
        table.for_primes(2, X, [&](uint64_t p) {
            if (dead || p == ell) return;
            uint64_t fp = def.at_prime_mod(p, ell);
            uint64_t fD = pow_mod_u64(fp, D, ell);
            if (fD == 0) return;  // ell | f(p)^D: no constraint on g
            uint64_t theta = ind.index(p % ell);
            uint64_t phi = ind.index(fD);
            uint64_t g0, m0;
            if (!detail::solve_linear(theta, phi, L, g0, m0)) { dead = true; return; }
            if (!detail::merge_progression(r, m, g0, m0)) { dead = true; return; }
        });
        if (dead) {
            res.status = LocalPowerStatus::Absent;
            return res;
        }
        res.g = r;
        res.candidate_count = L / m;
        res.status = (m == L) ? LocalPowerStatus::Unique : LocalPowerStatus::Ambiguous;
        // Soundness: the returned g must satisfy every constraint.
        bool ok = true;
        table.for_primes(2, X, [&](uint64_t p) {
            if (!ok || p == ell) return;
            uint64_t fD = pow_mod_u64(def.at_prime_mod(p, ell), D, ell);
            if (fD == 0) return;
            if (pow_mod_u64(p % ell, res.g, ell) != fD) ok = false;
        });
        res.verified = ok;
        return res;
    }

    // Weighted mode.
    std::vector<double> credit(L, 0.0);
    KahanSum total;
    table.for_primes(2, X, [&](uint64_t p) {
        if (p == ell) return;
        double w = 1.0 / static_cast<double>(p);
        total.add(w);
        uint64_t fD = pow_mod_u64(def.at_prime_mod(p, ell), D, ell);
        if (fD == 0) return;  // exception for every candidate
        uint64_t theta = ind.index(p % ell);
        uint64_t phi = ind.index(fD);
        uint64_t g0, m0;
        if (!detail::solve_linear(theta, phi, L, g0, m0)) return;
        // Solutions in [0, L) are g0 + t * m0 for t < L / m0.
        for (uint64_t g = g0; g < L; g += m0) credit[g] += w;
    });
    uint64_t best = 0;
    uint64_t ties = 1;
    for (uint64_t g = 1; g < L; ++g) {
        if (credit[g] > credit[best]) { best = g; ties = 1; }
        else if (credit[g] == credit[best]) ++ties;
    }
    res.g = best;
    res.candidate_count = ties;
    res.status = LocalPowerStatus::Unique;
    res.total_weight = total.value();

    KahanSum ew;
    table.for_primes(2, X, [&](uint64_t p) {
        if (p == ell) return;
        uint64_t fD = pow_mod_u64(def.at_prime_mod(p, ell), D, ell);
        if (fD != 0 && pow_mod_u64(p % ell, best, ell) == fD) return;
        res.exceptions.push_back(p);
        ew.add(1.0 / static_cast<double>(p));
    });
    res.exception_weight = ew.value();
    res.verified = true;
    return res;
}

struct FsScanReport {
    std::vector<LocalPowerResult> per_ell;  // moduli with a unique exponent
    bool global_power = false;              // one k fits every modulus
    uint64_t k = 0;                         // valid when global_power
};

// Scans odd primes ell <= L in exact mode and tries to unify the local
// exponents into a single k with k == g_ell (mod ell - 1) for all ell.
inline FsScanReport fs_scan(const MultFuncDef& def, uint64_t L, uint64_t X, const SpfTable& table,
                            uint32_t D = 1) {
    FsScanReport rep;
    BigInt r = 0, m = 1;
    bool consistent = true;
    for (uint64_t ell = 3; ell <= L; ell += 2) {
        if (!is_prime_u64(ell)) continue;
        if (X < ell) break;
        LocalPowerResult res =
            find_local_power_exponent(def, D, ell, X, LocalPowerMode::Exact, table);
        if (res.status != LocalPowerStatus::Unique) continue;
        rep.per_ell.push_back(res);
        if (consistent) {
            BigInt m0 = ell - 1;
            BigInt G = gcd(m, m0);
            if (r % G != BigInt(res.g) % G) {
                consistent = false;
            } else {
                BigInt m1 = m / G, m02 = m0 / G;
                BigInt dg = (BigInt(res.g) - r) / G;
                BigInt t = dg % m02;
                if (t < 0) t += m02;
                BigInt inv = 1;
                // Modular inverse of m1 mod m02 by extended Euclid.
                {
                    BigInt a = m1 % m02, b = m02, x0 = 1, x1 = 0;
                    while (b != 0) {
                        BigInt q = a / b;
                        BigInt tmp = a - q * b; a = b; b = tmp;
                        tmp = x0 - q * x1; x0 = x1; x1 = tmp;
                    }
                    inv = x0 % m02;
                    if (inv < 0) inv += m02;
                }
                t = (t * inv) % m02;
                r = r + m * t;
                m = m * m02;
            }
        }
    }
    if (!rep.per_ell.empty() && consistent && r <= BigInt(UINT64_MAX)) {
        rep.global_power = true;
        rep.k = r.convert_to<uint64_t>();
    }
    return rep;
}

struct SfDensityReport {
    std::vector<uint64_t> members;  // primes ell <= X with ell | f(ell)
    double reciprocal_sum = 0.0;
    double dirichlet_estimate = 0.0;  // reciprocal_sum / log log X
};

inline SfDensityReport s_f_density(const MultFuncDef& def, uint64_t X, const SpfTable& table) {
    if (X < 3 || X > table.range_end())
        throw std::invalid_argument("invalid-range: s_f bound invalid");
    SfDensityReport rep;
    KahanSum recip;
    table.for_primes(2, X, [&](uint64_t ell) {
        if (def.at_prime_mod(ell, ell) == 0) {
            rep.members.push_back(ell);
            recip.add(1.0 / static_cast<double>(ell));
        }
    });
    rep.reciprocal_sum = recip.value();
    double ll = std::log(std::log(static_cast<double>(X)));
    rep.dirichlet_estimate = ll > 0 ? rep.reciprocal_sum / ll : 0.0;
    return rep;
}

struct OverlapReport {
    std::vector<uint64_t> violating;  // primes with weight above the threshold
    double denom = 0.0;               // sum 1/ell over the moduli
    double threshold = 0.0;           // tau * denom
};

// Markov-style overlap bound: a prime exceptional for many moduli picks up
// weight sum 1/ell; primes above tau * (sum 1/ell) are reported.
inline OverlapReport exception_overlap(const std::vector<LocalPowerResult>& results, uint64_t P,
                                       double tau) {
    if (tau <= 0)
        throw std::invalid_argument("invalid-parameter: tau must be > 0");
    std::vector<uint64_t> moduli;
    for (const auto& r : results) moduli.push_back(r.ell);
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    KahanSum denom;
    for (uint64_t ell : moduli) denom.add(1.0 / static_cast<double>(ell));

    std::map<uint64_t, double> weight;
    for (const auto& r : results)
        for (uint64_t p : r.exceptions)
            if (p <= P) weight[p] += 1.0 / static_cast<double>(r.ell);

    OverlapReport rep;
    rep.denom = denom.value();
    rep.threshold = tau * rep.denom;
    for (auto& [p, w] : weight)
        if (w > rep.threshold) rep.violating.push_back(p);
    return rep;
}

struct OrdRecipResult {
    double empirical = 0.0;  // sum 1/p over primes in (y, x] with p primitive mod ell
    double predicted = 0.0;  // phi(ell-1)/(ell-1) * log(log x / log y)
    double ratio = 1.0;
};

// Reciprocal sum over primes whose residue generates (Z/ell)*.
inline OrdRecipResult ord_reciprocal_sum(uint64_t ell, uint64_t y, uint64_t x,
                                         const SpfTable& table) {
    if (ell < 3 || !is_prime_u64(ell))
        throw std::domain_error("invalid-modulus: ell must be an odd prime");
    if (y < 3 || y > x)
        throw std::invalid_argument("invalid-range: need 3 <= y <= x");
    if (x > table.range_end())
        throw std::invalid_argument("invalid-range: x exceeds sieve table");
    if (y == x) return {0.0, 0.0, 1.0};

    const uint64_t L = ell - 1;
    IndexTable ind(ell);
    std::vector<uint8_t> primitive(ell, 0);
    for (uint64_t rr = 1; rr < ell; ++rr)
        primitive[rr] = std::gcd(ind.index(rr), L) == 1 ? 1 : 0;

    KahanSum emp;
    table.for_primes(y + 1, x, [&](uint64_t p) {
        if (p == ell) return;
        if (primitive[p % ell]) emp.add(1.0 / static_cast<double>(p));
    });
    double predicted = (static_cast<double>(euler_phi(L)) / static_cast<double>(L)) *
                       std::log(std::log(static_cast<double>(x)) / std::log(static_cast<double>(y)));
    double ratio = predicted > 0 ? emp.value() / predicted : 1.0;
    return {emp.value(), predicted, ratio};
}

struct Abundance {
    uint64_t num = 0;
    uint64_t den = 1;
    double value = 0.0;
};

// phi(ell-1)/(ell-1) as an exact reduced fraction.
inline Abundance primitive_root_abundance(uint64_t ell) {
    if (ell < 3 || !is_prime_u64(ell))
        throw std::domain_error("invalid-modulus: ell must be an odd prime");
    uint64_t L = ell - 1;
    uint64_t ph = euler_phi(L);
    uint64_t g = std::gcd(ph, L);
    return {ph / g, L / g, static_cast<double>(ph) / static_cast<double>(L)};
}

}  // namespace mfgap
