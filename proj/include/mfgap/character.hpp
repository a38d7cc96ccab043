#pragma once
// Dirichlet characters mod odd prime powers.
//
// With u a primitive root mod q = p^e, every character is chi_j with
// chi_j(u^k) = e(jk / phi(q)).  We carry the exponent jk mod phi exactly,
// so orthogonality sums can be checked in integer arithmetic; the complex
// value is derived from the exponent only at the edge.

#include "mfgap/modular.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>

namespace mfgap {

class DirichletCharacter {
public:
    // Exact value: zero flags chi(n) = 0; otherwise value = e(num / den).
    struct Exponent {
        bool zero;
        uint64_t num;       // reduced mod den
        uint64_t den;       // = phi(q)
    };

    DirichletCharacter(uint64_t q, uint64_t j)
        : table_(std::make_shared<IndexTable>(q)), j_(j % table_->group_order()) {}

    DirichletCharacter(std::shared_ptr<const IndexTable> table, uint64_t j)
        : table_(std::move(table)), j_(j % table_->group_order()) {}

    static DirichletCharacter principal(uint64_t q) { return DirichletCharacter(q, 0); }

    uint64_t modulus() const { return table_->modulus(); }
    uint64_t exponent_index() const { return j_; }
    uint64_t group_order() const { return table_->group_order(); }
    const IndexTable& table() const { return *table_; }

    bool is_principal() const { return j_ == 0; }
    bool is_real() const { return (2 * j_) % table_->group_order() == 0; }

    Exponent exponent_at(uint64_t n) const {
        uint64_t r = n % table_->modulus();
        if (!table_->is_unit(r)) return {true, 0, table_->group_order()};
        uint64_t phi = table_->group_order();
        uint64_t k = table_->index(r);
        return {false, mul_mod_u64(j_, k, phi), phi};
    }

    Exponent exponent_signed(long long n) const {
        return exponent_at(mod_i64(n, table_->modulus()));
    }

    std::complex<double> eval(uint64_t n) const { return from_exponent(exponent_at(n)); }

    std::complex<double> eval_signed(long long n) const {
        return from_exponent(exponent_signed(n));
    }

    static std::complex<double> from_exponent(const Exponent& e) {
        if (e.zero) return {0.0, 0.0};
        if (e.num == 0) return {1.0, 0.0};
        if (2 * e.num == e.den) return {-1.0, 0.0};
        double theta = 2.0 * std::numbers::pi * static_cast<double>(e.num) / static_cast<double>(e.den);
        return {std::cos(theta), std::sin(theta)};
    }

    std::string describe() const {
        return "chi[" + std::to_string(j_) + "] mod " + std::to_string(modulus());
    }

private:
    std::shared_ptr<const IndexTable> table_;
    uint64_t j_;
};

}  // namespace mfgap
