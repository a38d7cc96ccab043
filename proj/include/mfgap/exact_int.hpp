#pragma once
// Exact signed integer with a machine fast path.
//
// Values of completely multiplicative functions grow like n^k, so products
// overflow 64 bits almost immediately at the ranges we scan.  ExactInt keeps
// a __int128 while it fits and promotes to an arbitrary-precision integer
// the moment an operation would overflow.  All arithmetic used here is
// exact; there is no rounding anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace mfgap {

using BigInt = boost::multiprecision::cpp_int;

class ExactInt {
public:
    ExactInt() : small_(0), big_(false) {}
    ExactInt(long long v) : small_(v), big_(false) {}
    ExactInt(unsigned long long v) : small_(static_cast<__int128>(v)), big_(false) {}
    ExactInt(int v) : small_(v), big_(false) {}
    explicit ExactInt(__int128 v) : small_(v), big_(false) {}
    explicit ExactInt(BigInt v) : small_(0), big_(true), wide_(std::move(v)) {}

    // base^exp, exact.
    static ExactInt pow(ExactInt base, uint32_t exp) {
        ExactInt acc(1);
        while (exp) {
            if (exp & 1u) acc *= base;
            base *= base;
            exp >>= 1;
        }
        return acc;
    }

    ExactInt& operator*=(const ExactInt& o) {
        if (!big_ && !o.big_) {
            __int128 r;
            if (!__builtin_mul_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        wide_ = as_big() * o.as_big();
        big_ = true;
        return *this;
    }

    ExactInt& operator+=(const ExactInt& o) {
        if (!big_ && !o.big_) {
            __int128 r;
            if (!__builtin_add_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        wide_ = as_big() + o.as_big();
        big_ = true;
        return *this;
    }

    ExactInt& operator-=(const ExactInt& o) {
        if (!big_ && !o.big_) {
            __int128 r;
            if (!__builtin_sub_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        wide_ = as_big() - o.as_big();
        big_ = true;
        return *this;
    }

    friend ExactInt operator*(ExactInt a, const ExactInt& b) { a *= b; return a; }
    friend ExactInt operator+(ExactInt a, const ExactInt& b) { a += b; return a; }
    friend ExactInt operator-(ExactInt a, const ExactInt& b) { a -= b; return a; }

    friend bool operator==(const ExactInt& a, const ExactInt& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        return a.as_big() == b.as_big();
    }
    friend bool operator!=(const ExactInt& a, const ExactInt& b) { return !(a == b); }
    friend bool operator<(const ExactInt& a, const ExactInt& b) {
        if (!a.big_ && !b.big_) return a.small_ < b.small_;
        return a.as_big() < b.as_big();
    }

    int sign() const {
        if (!big_) return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
        return wide_.sign();
    }

    bool is_zero() const { return sign() == 0; }

    // Returns the value if it fits in int64, otherwise nullopt.
    std::optional<long long> to_i64() const {
        if (!big_) {
            if (small_ >= INT64_MIN_128 && small_ <= INT64_MAX_128)
                return static_cast<long long>(small_);
            return std::nullopt;
        }
        if (wide_ >= INT64_MIN && wide_ <= INT64_MAX)
            return static_cast<long long>(wide_);
        return std::nullopt;
    }

    double to_double() const {
        if (!big_) return static_cast<double>(small_);
        return wide_.convert_to<double>();
    }

    std::string str() const {
        if (big_) return wide_.str();
        __int128 v = small_;
        if (v == 0) return "0";
        bool neg = v < 0;
        // Negate digit by digit to stay safe at INT128_MIN.
        std::string s;
        while (v != 0) {
            int d = static_cast<int>(v % 10);
            if (d < 0) d = -d;
            s.push_back(static_cast<char>('0' + d));
            v /= 10;
        }
        if (neg) s.push_back('-');
        return std::string(s.rbegin(), s.rend());
    }

private:
    static constexpr __int128 INT64_MAX_128 = static_cast<__int128>(INT64_MAX);
    static constexpr __int128 INT64_MIN_128 = static_cast<__int128>(INT64_MIN);

    BigInt as_big() const {
        if (big_) return wide_;
        // cpp_int converts from __int128 directly when the compiler has it.
        return BigInt(small_);
    }

    __int128 small_;
    bool big_;
    BigInt wide_;
};

using BigRat = boost::multiprecision::cpp_rational;

}  // namespace mfgap
