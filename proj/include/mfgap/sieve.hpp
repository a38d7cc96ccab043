#pragma once
// Smallest-prime-factor sieve and integer factorization.
//
// The SPF table is built segment by segment: only the base primes up to
// sqrt(X) and one segment of marks are live during construction, so the
// auxiliary footprint is O(segment + sqrt(X)) on top of the table itself.
// Factoring n <= X is then a walk down the SPF chain; larger n fall back
// to trial division.

#include <algorithm>
#include <type_traits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

class SpfTable {
public:
    // Default segment: 2^24 entries (64 MiB of uint32 marks).
    explicit SpfTable(uint64_t X, uint64_t segment_entries = (1ull << 24)) {
        if (X < 2)
            throw std::invalid_argument("invalid-range: sieve bound must be >= 2");
        if (X > 0xFFFFFFFEull)
            throw std::invalid_argument("invalid-range: sieve bound exceeds 32-bit table");
        if (segment_entries < 64) segment_entries = 64;
        x_ = X;
        spf_.assign(X + 1, 0u);

        // Base primes up to sqrt(X) by a plain sieve.
        uint64_t root = 1;
        while ((root + 1) * (root + 1) <= X) ++root;
        std::vector<uint8_t> comp(root + 1, 0);
        std::vector<uint32_t> base;
        for (uint64_t p = 2; p <= root; ++p) {
            if (comp[p]) continue;
            base.push_back(static_cast<uint32_t>(p));
            for (uint64_t m = p * p; m <= root; m += p) comp[m] = 1;
        }

        for (uint64_t lo = 2; lo <= X; lo += segment_entries) {
            uint64_t hi = std::min(X, lo + segment_entries - 1);
            for (uint32_t p : base) {
                uint64_t pp = static_cast<uint64_t>(p) * p;
                if (pp > hi) break;
                uint64_t start = std::max(pp, ((lo + p - 1) / p) * p);
                for (uint64_t m = start; m <= hi; m += p)
                    if (spf_[m] == 0) spf_[m] = p;
            }
        }
        // Anything unmarked is prime (its smallest factor is itself).
        for (uint64_t n = 2; n <= X; ++n)
            if (spf_[n] == 0) spf_[n] = static_cast<uint32_t>(n);
        spf_[1] = 1;
    }

    uint64_t range_end() const { return x_; }

    uint32_t spf(uint64_t n) const {
        if (n < 1 || n > x_)
            throw std::invalid_argument("invalid-range: spf query outside table");
        return spf_[n];
    }

    bool is_prime(uint64_t n) const {
        return n >= 2 && n <= x_ && spf_[n] == n;
    }

    template <class F>
    void for_primes(uint64_t lo, uint64_t hi, F&& fn) const {
        lo = std::max<uint64_t>(lo, 2);
        hi = std::min(hi, x_);
        for (uint64_t n = lo; n <= hi; ++n) {
            if (spf_[n] != n) continue;
            if constexpr (std::is_same_v<std::invoke_result_t<F&, uint64_t>, bool>) {
                if (!fn(n)) return;
            } else {
                fn(n);
            }
        }
    }

private:
    uint64_t x_ = 0;
    std::vector<uint32_t> spf_;
};

inline uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1ull) r = mul_mod_u64(r, a, m);
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1ull) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

using Factorization = std::vector<std::pair<uint64_t, uint32_t>>;

// Prime factorization in increasing prime order.  Uses the SPF table when
// the argument is covered, trial division otherwise.
inline Factorization factorize(uint64_t n, const SpfTable* table = nullptr) {
    if (n == 0)
        throw std::invalid_argument("invalid-input: cannot factor 0");
    Factorization out;
    if (n == 1) return out;
    if (table && n <= table->range_end()) {
        while (n > 1) {
            uint64_t p = table->spf(n);
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        return out;
    }
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    // 2,3,5 wheel.
    static constexpr uint64_t inc[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    uint64_t p = 7;
    int i = 0;
    while (p * p <= n) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        p += inc[i];
        i = (i + 1) & 7;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// nu_p(n): exponent of p in n.
inline uint32_t valuation(uint64_t n, uint64_t p) {
    uint32_t v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Largest prime factor; 1 for n = 1.
inline uint64_t largest_prime_factor(uint64_t n, const SpfTable* table = nullptr) {
    auto f = factorize(n, table);
    return f.empty() ? 1 : f.back().first;
}

}  // namespace mfgap
