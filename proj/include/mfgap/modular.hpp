#pragma once
// Multiplicative structure mod q: primitive roots, index (discrete log)
// tables, multiplicative orders.  Moduli are odd prime powers throughout;
// that keeps (Z/q)* cyclic, which the character layer relies on.

#include "mfgap/sieve.hpp"

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mfgap {

inline uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

// Reduce a possibly negative value into [0, m).
inline uint64_t mod_i64(long long v, uint64_t m) {
    long long r = v % static_cast<long long>(m);
    if (r < 0) r += static_cast<long long>(m);
    return static_cast<uint64_t>(r);
}

// q = p^e with p an odd prime?  Returns (p, e) if so.
inline std::optional<std::pair<uint64_t, uint32_t>> as_odd_prime_power(uint64_t q) {
    if (q < 3 || q % 2 == 0) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].first, f[0].second);
}

inline uint64_t euler_phi(uint64_t n) {
    auto f = factorize(n);
    uint64_t phi = 1;
    for (auto [p, e] : f) {
        uint64_t pe = 1;
        for (uint32_t i = 0; i + 1 < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

// Order of a in (Z/m)*, given the group order.  Pre: gcd(a, m) = 1.
inline uint64_t multiplicative_order(uint64_t a, uint64_t m, uint64_t group_order) {
    a %= m;
    if (gcd_u64(a, m) != 1)
        throw std::domain_error("non-unit: order undefined for gcd(a,m) > 1");
    uint64_t ord = group_order;
    for (auto [p, e] : factorize(group_order)) {
        (void)e;
        while (ord % p == 0 && pow_mod_u64(a, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

inline uint64_t multiplicative_order(uint64_t a, uint64_t m) {
    return multiplicative_order(a, m, euler_phi(m));
}

// Smallest primitive root mod q, q an odd prime power.
inline uint64_t primitive_root(uint64_t q) {
    auto pp = as_odd_prime_power(q);
    if (!pp)
        throw std::domain_error("unsupported-modulus: primitive root needs an odd prime power");
    uint64_t phi = euler_phi(q);
    auto phif = factorize(phi);
    for (uint64_t u = 2; u < q; ++u) {
        if (gcd_u64(u, q) != 1) continue;
        bool ok = true;
        for (auto [r, e] : phif) {
            (void)e;
            if (pow_mod_u64(u, phi / r, q) == 1) { ok = false; break; }
        }
        if (ok) return u;
    }
    throw std::logic_error("primitive root search exhausted");  // unreachable for valid q
}

// Full index table: ind[a] = k with u^k = a (mod q) for every unit a.
// One pass of phi multiplications; non-units get NOT_UNIT.
class IndexTable {
public:
    static constexpr uint32_t NOT_UNIT = UINT32_MAX;

    explicit IndexTable(uint64_t q) : IndexTable(q, primitive_root(q)) {}

    IndexTable(uint64_t q, uint64_t u) : q_(q), u_(u), phi_(euler_phi(q)) {
        ind_.assign(q_, NOT_UNIT);
        uint64_t acc = 1;
        for (uint64_t k = 0; k < phi_; ++k) {
            if (ind_[acc] != NOT_UNIT)
                throw std::domain_error("unsupported-modulus: generator does not have full order");
            ind_[acc] = static_cast<uint32_t>(k);
            acc = mul_mod_u64(acc, u_, q_);
        }
    }

    uint64_t modulus() const { return q_; }
    uint64_t generator() const { return u_; }
    uint64_t group_order() const { return phi_; }

    bool is_unit(uint64_t a) const { return ind_[a % q_] != NOT_UNIT; }

    // ind(a) in [0, phi).  Pre: gcd(a, q) = 1.
    uint64_t index(uint64_t a) const {
        uint32_t k = ind_[a % q_];
        if (k == NOT_UNIT)
            throw std::domain_error("non-unit: index undefined for gcd(a,q) > 1");
        return k;
    }

    uint64_t index_signed(long long a) const { return index(mod_i64(a, q_)); }

private:
    uint64_t q_, u_, phi_;
    std::vector<uint32_t> ind_;
};

// Discrete log of a to the base u mod q.  Builds the index table, so meant
// for small moduli (and reused via IndexTable when called repeatedly).
inline uint64_t discrete_log(uint64_t a, uint64_t q, uint64_t u) {
    IndexTable t(q, u);
    return t.index(a);
}

inline uint64_t discrete_log(uint64_t a, uint64_t q) {
    return discrete_log(a, q, primitive_root(q));
}

// Extended gcd; returns g and writes x with a*x = g (mod b).
inline long long egcd_inverse(long long a, long long m) {
    // Pre: gcd(a, m) = 1, m >= 1.  Returns a^{-1} mod m (0 when m = 1).
    if (m == 1) return 0;
    long long g0 = a % m, g1 = m, x0 = 1, x1 = 0;
    if (g0 < 0) g0 += m;
    while (g1 != 0) {
        long long qt = g0 / g1;
        long long t = g0 - qt * g1; g0 = g1; g1 = t;
        t = x0 - qt * x1; x0 = x1; x1 = t;
    }
    if (g0 != 1)
        throw std::domain_error("non-unit: inverse does not exist");
    long long r = x0 % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace mfgap
