#pragma once
// Prime sets and prime-power sets used as parameters: explicit lists,
// residue classes, the full set, and reproducible random sets.
//
// Random membership is counter-based: bit 63 of the SplitMix64 finalizer
// applied to seed + GAMMA*p.  Membership of p never depends on which other
// primes were queried, so any two runs with the same seed agree.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

inline constexpr uint64_t SPLITMIX64_GAMMA = 0x9E3779B97F4A7C15ull;

inline uint64_t splitmix64_finalize(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline bool random_prime_bit(uint64_t seed, uint64_t p) {
    return (splitmix64_finalize(seed + SPLITMIX64_GAMMA * p) >> 63) != 0;
}

class PrimeSet {
public:
    enum class Kind { Empty, All, Explicit, Residue, Random };

    static PrimeSet empty() { return PrimeSet(Kind::Empty); }
    static PrimeSet all() { return PrimeSet(Kind::All); }

    static PrimeSet explicit_set(std::vector<uint64_t> primes) {
        PrimeSet s(Kind::Explicit);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        s.list_ = std::move(primes);
        return s;
    }

    // p in S iff p mod m is one of the residues.
    static PrimeSet residue(uint64_t m, std::vector<uint64_t> residues) {
        if (m < 2) throw std::invalid_argument("invalid-parameter: residue modulus must be >= 2");
        PrimeSet s(Kind::Residue);
        s.mod_ = m;
        for (auto& r : residues) r %= m;
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        s.list_ = std::move(residues);
        return s;
    }

    static PrimeSet random(uint64_t seed, std::vector<uint64_t> excluded = {}) {
        PrimeSet s(Kind::Random);
        s.seed_ = seed;
        std::sort(excluded.begin(), excluded.end());
        s.list_ = std::move(excluded);
        return s;
    }

    Kind kind() const { return kind_; }
    uint64_t seed() const { return seed_; }
    const std::vector<uint64_t>& values() const { return list_; }

    // Caller guarantees p is prime.
    bool contains(uint64_t p) const {
        switch (kind_) {
            case Kind::Empty: return false;
            case Kind::All: return true;
            case Kind::Explicit: return std::binary_search(list_.begin(), list_.end(), p);
            case Kind::Residue: return std::binary_search(list_.begin(), list_.end(), p % mod_);
            case Kind::Random:
                if (std::binary_search(list_.begin(), list_.end(), p)) return false;
                return random_prime_bit(seed_, p);
        }
        return false;
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
            case Kind::Empty: os << "{}"; break;
            case Kind::All: os << "all-primes"; break;
            case Kind::Explicit:
                os << "{";
                for (size_t i = 0; i < list_.size(); ++i) os << (i ? "," : "") << list_[i];
                os << "}";
                break;
            case Kind::Residue:
                os << "{p: p mod " << mod_ << " in ";
                for (size_t i = 0; i < list_.size(); ++i) os << (i ? "," : "") << list_[i];
                os << "}";
                break;
            case Kind::Random:
                os << "random(seed=" << seed_;
                if (!list_.empty()) {
                    os << ", excluding ";
                    for (size_t i = 0; i < list_.size(); ++i) os << (i ? "," : "") << list_[i];
                }
                os << ")";
                break;
        }
        return os.str();
    }

private:
    explicit PrimeSet(Kind k) : kind_(k) {}

    Kind kind_;
    uint64_t mod_ = 0;
    uint64_t seed_ = 0;
    std::vector<uint64_t> list_;  // explicit primes / residues / random exclusions
};

// Sets of prime powers p^nu, used by additive functions omega_S and by the
// sparse reciprocal-sum scan.
class PrimePowerSet {
public:
    enum class Kind { Empty, AllPrimePowers, ExplicitValues, PrimesOf };

    static PrimePowerSet empty() { return PrimePowerSet(Kind::Empty); }
    static PrimePowerSet all_prime_powers() { return PrimePowerSet(Kind::AllPrimePowers); }

    // Membership by the literal value p^nu.
    static PrimePowerSet explicit_values(std::vector<uint64_t> values) {
        PrimePowerSet s(Kind::ExplicitValues);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        s.values_ = std::move(values);
        return s;
    }

    // All powers of primes in the base set: p^nu in S iff p in base.
    static PrimePowerSet powers_of(PrimeSet base) {
        PrimePowerSet s(Kind::PrimesOf);
        s.base_ = std::move(base);
        return s;
    }

    Kind kind() const { return kind_; }
    const std::vector<uint64_t>& values() const { return values_; }

    bool contains(uint64_t p, uint32_t nu, uint64_t p_pow_nu) const {
        (void)nu;
        switch (kind_) {
            case Kind::Empty: return false;
            case Kind::AllPrimePowers: return true;
            case Kind::ExplicitValues:
                return std::binary_search(values_.begin(), values_.end(), p_pow_nu);
            case Kind::PrimesOf: return base_.contains(p);
        }
        return false;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Empty: return "{}";
            case Kind::AllPrimePowers: return "all-prime-powers";
            case Kind::ExplicitValues: {
                std::ostringstream os;
                os << "{";
                for (size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
                os << "}";
                return os.str();
            }
            case Kind::PrimesOf: return "powers-of " + base_.describe();
        }
        return "{}";
    }

private:
    explicit PrimePowerSet(Kind k) : kind_(k), base_(PrimeSet::empty()) {}

    Kind kind_;
    PrimeSet base_;
    std::vector<uint64_t> values_;
};

}  // namespace mfgap
