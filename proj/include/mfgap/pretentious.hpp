#pragma once
// Pretentious distance, Halasz minima, Turan-Kubilius statistics, the
// Elliott dual defect, and logarithmic binary correlations.
//
// Unit-disc functions enter as values on primes; whole-integer values are
// rebuilt multiplicatively where a sum needs them.  The Halasz scan walks
// a uniform t-grid with per-prime rotation recurrences (one complex
// multiply per prime per grid point instead of trig calls) and then
// sharpens the best grid point by golden-section search.

#include "mfgap/character.hpp"
#include "mfgap/kahan.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/sieve.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mfgap {

// Unit-disc multiplicative function, given by its values at primes.
struct DiscFunc {
    std::string name;
    std::function<std::complex<double>(uint64_t p)> at_prime;

    static constexpr double DISC_SLACK = 1e-9;

    static DiscFunc one() {
        return {"1", [](uint64_t) { return std::complex<double>(1.0, 0.0); }};
    }

    // p^{it} on primes.
    static DiscFunc archimedean(double t) {
        return {"n^it t=" + std::to_string(t), [t](uint64_t p) {
                    double th = t * std::log(static_cast<double>(p));
                    return std::complex<double>(std::cos(th), std::sin(th));
                }};
    }

    static DiscFunc character(DirichletCharacter chi) {
        std::string nm = chi.describe();
        return {nm, [chi = std::move(chi)](uint64_t p) { return chi.eval(p); }};
    }

    // chi(f(p)): the character composed with a multiplicative function.
    static DiscFunc character_of(DirichletCharacter chi, MultFuncDef def) {
        std::string nm = chi.describe() + " of " + def.name;
        uint64_t q = chi.modulus();
        return {nm, [chi = std::move(chi), def = std::move(def), q](uint64_t p) {
                    return chi.eval(def.at_prime_mod(p, q));
                }};
    }

    // lambda_T: -1 on T, +1 off T.
    static DiscFunc liouville(PrimeSet T) {
        return {"lambda_T T=" + T.describe(), [T = std::move(T)](uint64_t p) {
                    return std::complex<double>(T.contains(p) ? -1.0 : 1.0, 0.0);
                }};
    }

    // The real nonprincipal character mod 4.
    static DiscFunc mod4() {
        return {"chi mod 4", [](uint64_t p) {
                    if (p % 4 == 1) return std::complex<double>(1.0, 0.0);
                    if (p % 4 == 3) return std::complex<double>(-1.0, 0.0);
                    return std::complex<double>(0.0, 0.0);
                }};
    }

    static DiscFunc product(DiscFunc g1, DiscFunc g2) {
        std::string nm = "(" + g1.name + ")*(" + g2.name + ")";
        return {nm, [g1 = std::move(g1), g2 = std::move(g2)](uint64_t p) {
                    return g1.at_prime(p) * g2.at_prime(p);
                }};
    }

    std::complex<double> checked_at(uint64_t p) const {
        std::complex<double> v = at_prime(p);
        if (std::abs(v) > 1.0 + DISC_SLACK)
            throw std::domain_error("invalid-input: disc value |g(p)| > 1 at p = " +
                                    std::to_string(p));
        return v;
    }
};

// g(m) for whole m, multiplicatively from prime values.
inline std::complex<double> disc_value_at(const DiscFunc& g, uint64_t m,
                                          const SpfTable* table = nullptr) {
    if (m == 0)
        throw std::invalid_argument("invalid-input: g(0) undefined");
    std::complex<double> acc(1.0, 0.0);
    for (auto [p, e] : factorize(m, table)) {
        std::complex<double> v = g.checked_at(p);
        for (uint32_t i = 0; i < e; ++i) acc *= v;
    }
    return acc;
}

struct DistanceResult {
    uint64_t x;
    double squared;      // D(g1, g2; x)^2
    double value;        // sqrt
    uint64_t prime_count;
};

// D(g1, g2; x)^2 = sum_{p <= x} (1 - Re(g1(p) conj(g2(p)))) / p.
inline DistanceResult pretentious_distance(const DiscFunc& g1, const DiscFunc& g2, uint64_t x,
                                           const SpfTable& table) {
    if (x < 2 || x > table.range_end())
        throw std::invalid_argument("invalid-range: distance bound invalid");
    KahanSum sum;
    uint64_t count = 0;
    table.for_primes(2, x, [&](uint64_t p) {
        std::complex<double> v = g1.checked_at(p) * std::conj(g2.checked_at(p));
        double term = (1.0 - v.real()) / static_cast<double>(p);
        // Clamp the tiny negative slack a |v| = 1 + eps value can produce.
        if (term < 0 && term > -1e-9) term = 0;
        sum.add(term);
        ++count;
    });
    return {x, sum.value(), std::sqrt(std::max(0.0, sum.value())), count};
}

struct HalaszResult {
    double M;      // min over |t| <= T of D(g, p^{it}; x)^2
    double t_min;  // argmin
};

// Uniform grid scan of t -> D(g, n^{it}; x)^2 plus one golden-section
// refinement around the best grid point.  t = 0 is always evaluated, so
// M <= D(g, 1; x)^2 holds unconditionally.
inline HalaszResult halasz_M(const DiscFunc& g, uint64_t x, double T, uint32_t grid_points,
                             const SpfTable& table) {
    if (x < 2 || x > table.range_end())
        throw std::invalid_argument("invalid-range: halasz bound invalid");
    if (T < 0)
        throw std::invalid_argument("invalid-parameter: halasz T must be >= 0");
    if (grid_points < 3) grid_points = 3;

    std::vector<double> a, b, L;
    KahanSum base;
    table.for_primes(2, x, [&](uint64_t p) {
        std::complex<double> v = g.checked_at(p);
        double invp = 1.0 / static_cast<double>(p);
        a.push_back(v.real() * invp);
        b.push_back(v.imag() * invp);
        L.push_back(std::log(static_cast<double>(p)));
        base.add(invp);
    });
    size_t np = a.size();

    auto dist2_direct = [&](double t) {
        KahanSum dot;
        for (size_t i = 0; i < np; ++i)
            dot.add(a[i] * std::cos(t * L[i]) + b[i] * std::sin(t * L[i]));
        return base.value() - dot.value();
    };

    double best_t = 0.0;
    double best = dist2_direct(0.0);

    if (T > 0) {
        double step = 2.0 * T / static_cast<double>(grid_points - 1);
        // z_i = e^{i t L_i}, advanced by r_i = e^{i step L_i} per grid point.
        std::vector<std::complex<double>> z(np), r(np);
        for (size_t i = 0; i < np; ++i) {
            z[i] = std::polar(1.0, -T * L[i]);
            r[i] = std::polar(1.0, step * L[i]);
        }
        for (uint32_t k = 0; k < grid_points; ++k) {
            double t = -T + step * static_cast<double>(k);
            KahanSum dot;
            for (size_t i = 0; i < np; ++i) {
                dot.add(a[i] * z[i].real() + b[i] * z[i].imag());
                z[i] *= r[i];
            }
            double d2 = base.value() - dot.value();
            if (d2 < best) { best = d2; best_t = t; }
        }
        // Golden-section sharpening on the bracketing interval.
        double lo = std::max(-T, best_t - step);
        double hi = std::min(T, best_t + step);
        const double phi = 0.6180339887498949;
        double c = hi - phi * (hi - lo);
        double d = lo + phi * (hi - lo);
        double fc = dist2_direct(c), fd = dist2_direct(d);
        for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
            if (fc < fd) {
                hi = d; d = c; fd = fc;
                c = hi - phi * (hi - lo);
                fc = dist2_direct(c);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + phi * (hi - lo);
                fd = dist2_direct(d);
            }
        }
        double tm = (fc < fd) ? c : d;
        double fm = std::min(fc, fd);
        if (fm < best) { best = fm; best_t = tm; }
    }
    return {best, best_t};
}

struct TkStats {
    double A;         // sum g(p^nu)/p^nu (1 - 1/p) over p^nu <= X
    double B2;        // sum |g(p^nu)|^2 / p^nu
    double variance;  // (1/X) sum_{n <= X} (g(n) - A)^2
    double ratio;     // variance / B2 (0 when B2 = 0)
};

inline TkStats tk_stats(const AdditiveFuncDef& g, uint64_t X, const SpfTable& table) {
    if (X < 2 || X > table.range_end())
        throw std::invalid_argument("invalid-range: tk bound invalid");
    KahanSum A, B2;
    table.for_primes(2, X, [&](uint64_t p) {
        uint64_t q = p;
        uint32_t nu = 1;
        double invp = 1.0 / static_cast<double>(p);
        while (true) {
            double v = g.value(p, nu, q);
            if (v != 0.0) {
                A.add(v / static_cast<double>(q) * (1.0 - invp));
                B2.add(v * v / static_cast<double>(q));
            }
            if (q > X / p) break;
            q *= p;
            ++nu;
        }
    });

    KahanSum var;
    double mean = A.value();
    for (uint64_t n = 1; n <= X; ++n) {
        double gn = 0.0;
        uint64_t r = n;
        while (r > 1) {
            uint64_t p = table.spf(r);
            uint32_t e = 0;
            uint64_t q = 1;
            while (r % p == 0) { r /= p; ++e; q *= p; }
            gn += g.value(p, e, q);
        }
        double dev = gn - mean;
        var.add(dev * dev);
    }
    double variance = var.value() / static_cast<double>(X);
    double ratio = B2.value() > 0 ? variance / B2.value() : 0.0;
    return {mean, B2.value(), variance, ratio};
}

struct ElliottDefect {
    double lhs;    // sum_{p^nu <= limit} p^nu (C_{p^nu} - (1/p^nu)(1 - 1/p) C)^2
    double rhs;    // X * C   (0/1 member weights)
    double ratio;  // lhs / rhs, 0 when rhs = 0
};

// Dual-form defect of a 0/1 sequence supported on the member set.
// Pre: members sorted and <= X.
inline ElliottDefect elliott_defect(const std::vector<uint64_t>& members, uint64_t X,
                                    uint64_t limit, const SpfTable& table) {
    if (X < 2 || limit < 2)
        throw std::invalid_argument("invalid-range: elliott needs X >= 2, limit >= 2");
    std::map<uint64_t, uint64_t> counts;
    std::vector<std::tuple<uint64_t, uint64_t, uint64_t>> keys;  // (pnu, p, nu)
    table.for_primes(2, limit, [&](uint64_t p) {
        uint64_t q = p;
        while (q <= limit) {
            counts[q] = 0;
            keys.emplace_back(q, p, 0);
            if (q > limit / p) break;
            q *= p;
        }
    });
    for (uint64_t n : members) {
        uint64_t r = n;
        while (r > 1) {
            uint64_t p = (r <= table.range_end()) ? table.spf(r) : factorize(r).front().first;
            uint64_t q = 1;
            while (r % p == 0) { r /= p; q *= p; }
            auto it = counts.find(q);
            if (it != counts.end()) ++it->second;
        }
    }
    double total = static_cast<double>(members.size());
    KahanSum lhs;
    for (auto& [q, p, nu] : keys) {
        (void)nu;
        double expect = (1.0 / static_cast<double>(q)) * (1.0 - 1.0 / static_cast<double>(p)) * total;
        double dev = static_cast<double>(counts[q]) - expect;
        lhs.add(static_cast<double>(q) * dev * dev);
    }
    double rhs = static_cast<double>(X) * total;
    return {lhs.value(), rhs, rhs > 0 ? lhs.value() / rhs : 0.0};
}

// (1/log x) sum_{n <= x} g1(a n + b) g2(c n + d) / n over n with both
// arguments >= 1.  Pre: a, c >= 1 and a d - b c != 0.
inline std::complex<double> log_correlation(const DiscFunc& g1, const DiscFunc& g2, long long a,
                                            long long b, long long c, long long d, uint64_t x,
                                            const SpfTable& table) {
    if (a < 1 || c < 1)
        throw std::invalid_argument("invalid-parameter: leading coefficients must be >= 1");
    if (a * d - b * c == 0)
        throw std::domain_error("degenerate-pair: a d - b c = 0");
    if (x < 2)
        throw std::invalid_argument("invalid-range: correlation bound invalid");
    uint64_t max_arg = 0;
    {
        __int128 m1 = static_cast<__int128>(a) * x + b;
        __int128 m2 = static_cast<__int128>(c) * x + d;
        __int128 mx = m1 > m2 ? m1 : m2;
        if (mx > static_cast<__int128>(table.range_end()))
            throw std::invalid_argument("invalid-range: correlation arguments exceed sieve table");
        max_arg = static_cast<uint64_t>(mx);
    }
    (void)max_arg;
    KahanSum re, im;
    for (uint64_t n = 1; n <= x; ++n) {
        long long m1 = a * static_cast<long long>(n) + b;
        long long m2 = c * static_cast<long long>(n) + d;
        if (m1 < 1 || m2 < 1) continue;
        std::complex<double> v = disc_value_at(g1, static_cast<uint64_t>(m1), &table) *
                                 disc_value_at(g2, static_cast<uint64_t>(m2), &table);
        double w = 1.0 / static_cast<double>(n);
        re.add(v.real() * w);
        im.add(v.imag() * w);
    }
    double lx = std::log(static_cast<double>(x));
    return {re.value() / lx, im.value() / lx};
}

}  // namespace mfgap
