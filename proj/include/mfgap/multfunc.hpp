#pragma once
// Multiplicative function engine.
//
// A function is a default rule on primes plus finitely many exceptions.
// Completely multiplicative definitions key exceptions by the prime and
// extend by f(p^nu) = f(p)^nu; general multiplicative definitions key
// exceptions by the prime power p^nu itself, and unlisted prime powers
// fall back to (default at p)^nu.  Values at primes are nonzero integers;
// whole-integer values are exact (ExactInt), with a separate pure modular
// evaluation path that never materializes big integers.

#include "mfgap/exact_int.hpp"
#include "mfgap/prime_set.hpp"
#include "mfgap/sieve.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mfgap {

struct MultFuncDef {
    enum class Default { Identity, One, Monomial, SignedIdentity, IdentityOn };

    Default default_rule = Default::Identity;
    uint32_t monomial_k = 1;             // Monomial: f(p) = p^k
    PrimeSet T = PrimeSet::empty();      // SignedIdentity: f(p) = lambda_T(p) * p
    PrimeSet U = PrimeSet::empty();      // IdentityOn: f(p) = p on U, 1 off U
    bool completely_multiplicative = true;
    // CM: prime -> f(p).  General: (p^nu value) -> f(p^nu).
    std::map<uint64_t, long long> exceptions;
    std::string name;

    static MultFuncDef identity() {
        MultFuncDef d;
        d.name = "identity";
        return d;
    }

    static MultFuncDef one() {
        MultFuncDef d;
        d.default_rule = Default::One;
        d.name = "one";
        return d;
    }

    static MultFuncDef monomial(uint32_t k) {
        MultFuncDef d;
        d.default_rule = Default::Monomial;
        d.monomial_k = k;
        d.name = "monomial k=" + std::to_string(k);
        return d;
    }

    static MultFuncDef signed_identity(PrimeSet T) {
        MultFuncDef d;
        d.default_rule = Default::SignedIdentity;
        d.T = std::move(T);
        d.name = "signed-identity T=" + d.T.describe();
        return d;
    }

    static MultFuncDef identity_on(PrimeSet U) {
        MultFuncDef d;
        d.default_rule = Default::IdentityOn;
        d.U = std::move(U);
        d.name = "identity-on U=" + d.U.describe();
        return d;
    }

    MultFuncDef with_exception(uint64_t key, long long value) const {
        MultFuncDef d = *this;
        d.exceptions[key] = value;
        return d;
    }

    // Default rule at a prime, ignoring exceptions.
    ExactInt default_at(uint64_t p) const {
        switch (default_rule) {
            case Default::Identity: return ExactInt(static_cast<long long>(p));
            case Default::One: return ExactInt(1);
            case Default::Monomial:
                return ExactInt::pow(ExactInt(static_cast<long long>(p)), monomial_k);
            case Default::SignedIdentity: {
                long long v = static_cast<long long>(p);
                return ExactInt(T.contains(p) ? -v : v);
            }
            case Default::IdentityOn:
                return ExactInt(U.contains(p) ? static_cast<long long>(p) : 1);
        }
        return ExactInt(1);
    }

    uint64_t default_at_mod(uint64_t p, uint64_t m) const {
        switch (default_rule) {
            case Default::Identity: return p % m;
            case Default::One: return 1 % m;
            case Default::Monomial: return pow_mod_u64(p % m, monomial_k, m);
            case Default::SignedIdentity: {
                uint64_t r = p % m;
                return T.contains(p) ? (m - r) % m : r;
            }
            case Default::IdentityOn:
                return U.contains(p) ? p % m : 1 % m;
        }
        return 1 % m;
    }

    // f(p^nu), exact.  Pre: p prime, nu >= 1, p^nu = pnu.
    ExactInt at_prime_power(uint64_t p, uint32_t nu, uint64_t pnu) const {
        if (completely_multiplicative) {
            auto it = exceptions.find(p);
            ExactInt base = (it != exceptions.end()) ? ExactInt(it->second) : default_at(p);
            return ExactInt::pow(base, nu);
        }
        auto it = exceptions.find(pnu);
        if (it != exceptions.end()) return ExactInt(it->second);
        return ExactInt::pow(default_at(p), nu);
    }

    uint64_t at_prime_power_mod(uint64_t p, uint32_t nu, uint64_t pnu, uint64_t m) const {
        if (completely_multiplicative) {
            auto it = exceptions.find(p);
            uint64_t base = (it != exceptions.end()) ? mod_reduce(it->second, m)
                                                     : default_at_mod(p, m);
            return pow_mod_u64(base, nu, m);
        }
        auto it = exceptions.find(pnu);
        if (it != exceptions.end()) return mod_reduce(it->second, m);
        return pow_mod_u64(default_at_mod(p, m), nu, m);
    }

    ExactInt at_prime(uint64_t p) const { return at_prime_power(p, 1, p); }
    uint64_t at_prime_mod(uint64_t p, uint64_t m) const { return at_prime_power_mod(p, 1, p, m); }

    // Checks exception keys are primes (CM) or prime powers (general) and
    // values are nonzero.  Throws invalid-input on violation.
    void validate() const {
        for (auto& [key, value] : exceptions) {
            if (value == 0)
                throw std::invalid_argument("invalid-input: exception value must be nonzero at key " +
                                            std::to_string(key));
            if (completely_multiplicative) {
                if (!is_prime_u64(key))
                    throw std::invalid_argument("invalid-input: exception key " + std::to_string(key) +
                                                " is not prime");
            } else {
                auto f = factorize(key);
                if (f.size() != 1)
                    throw std::invalid_argument("invalid-input: exception key " + std::to_string(key) +
                                                " is not a prime power");
            }
        }
    }

    std::string describe() const {
        std::ostringstream os;
        os << (name.empty() ? std::string("mult-func") : name);
        if (!exceptions.empty()) {
            os << " except {";
            bool first = true;
            for (auto& [key, value] : exceptions) {
                if (!first) os << "; ";
                os << key << " -> " << value;
                first = false;
            }
            os << "}";
        }
        os << (completely_multiplicative ? " [CM]" : " [mult]");
        return os.str();
    }

private:
    static uint64_t mod_reduce(long long v, uint64_t m) {
        long long r = v % static_cast<long long>(m);
        if (r < 0) r += static_cast<long long>(m);
        return static_cast<uint64_t>(r);
    }
};

// f(n), exact.  n >= 1.
inline ExactInt evaluate(const MultFuncDef& def, uint64_t n, const SpfTable* table = nullptr) {
    if (n == 0)
        throw std::invalid_argument("invalid-input: f(0) undefined");
    ExactInt acc(1);
    for (auto [p, e] : factorize(n, table)) {
        uint64_t pnu = 1;
        for (uint32_t i = 0; i < e; ++i) pnu *= p;
        acc *= def.at_prime_power(p, e, pnu);
    }
    return acc;
}

// f(n) mod m, computed without ever leaving machine words.
inline uint64_t evaluate_mod(const MultFuncDef& def, uint64_t n, uint64_t m,
                             const SpfTable* table = nullptr) {
    if (n == 0)
        throw std::invalid_argument("invalid-input: f(0) undefined");
    if (m < 1)
        throw std::invalid_argument("invalid-input: modulus must be >= 1");
    uint64_t acc = 1 % m;
    for (auto [p, e] : factorize(n, table)) {
        uint64_t pnu = 1;
        for (uint32_t i = 0; i < e; ++i) pnu *= p;
        acc = mul_mod_u64(acc, def.at_prime_power_mod(p, e, pnu, m), m);
    }
    return acc;
}

// Streams f(lo), ..., f(hi) to the consumer, factoring each n by walking
// the SPF chain in place.  Consumer returns false to abort the scan early.
template <class Consumer>
void evaluate_range(const MultFuncDef& def, uint64_t lo, uint64_t hi, const SpfTable& table,
                    Consumer&& consumer) {
    if (lo < 1)
        throw std::invalid_argument("invalid-range: range starts below 1");
    if (hi > table.range_end())
        throw std::invalid_argument("invalid-range: range exceeds sieve table");
    for (uint64_t n = lo; n <= hi; ++n) {
        ExactInt acc(1);
        uint64_t r = n;
        while (r > 1) {
            uint64_t p = table.spf(r);
            uint32_t e = 0;
            uint64_t pnu = 1;
            while (r % p == 0) { r /= p; ++e; pnu *= p; }
            acc *= def.at_prime_power(p, e, pnu);
        }
        if (!consumer(n, acc)) return;
    }
}

// Additive companion: g(n) = sum of g(p^nu) over p^nu || n.
struct AdditiveFuncDef {
    std::function<double(uint64_t p, uint32_t nu, uint64_t pnu)> value;
    std::string name;

    // omega_S: counts prime powers p^nu || n lying in S.
    static AdditiveFuncDef omega_of(PrimePowerSet S) {
        AdditiveFuncDef d;
        d.name = "omega_S S=" + S.describe();
        d.value = [S = std::move(S)](uint64_t p, uint32_t nu, uint64_t pnu) {
            return S.contains(p, nu, pnu) ? 1.0 : 0.0;
        };
        return d;
    }

    static AdditiveFuncDef omega() {
        AdditiveFuncDef d = omega_of(PrimePowerSet::all_prime_powers());
        d.name = "omega";
        return d;
    }
};

inline double evaluate_additive(const AdditiveFuncDef& def, uint64_t n,
                                const SpfTable* table = nullptr) {
    if (n == 0)
        throw std::invalid_argument("invalid-input: g(0) undefined");
    double acc = 0.0;
    for (auto [p, e] : factorize(n, table)) {
        uint64_t pnu = 1;
        for (uint32_t i = 0; i < e; ++i) pnu *= p;
        acc += def.value(p, e, pnu);
    }
    return acc;
}

}  // namespace mfgap
