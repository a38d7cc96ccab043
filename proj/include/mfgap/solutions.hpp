#pragma once
// Solution sets of A*f(n+a) = B*f(n) + b and their statistics.
//
// Enumeration streams f over [1, X] once, holding a ring of |a|+1 exact
// values so each n is factored exactly once.  Negative shifts reduce to
// positive ones: n solves (a, b, A, B) iff m = n + a solves (-a, -b, B, A),
// so we enumerate the reflected instance and translate members back.

#include "mfgap/exact_int.hpp"
#include "mfgap/kahan.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

struct SolutionParams {
    long long a = 1;
    long long b = 0;
    long long A = 1;
    long long B = 1;
    uint64_t X = 0;
};

struct DensityCheckpoint {
    uint64_t x;
    uint64_t count;
    double nat_density;
    double log_density;
};

struct SolutionSetReport {
    SolutionParams params;
    std::vector<uint64_t> members;  // possibly thinned, see stride
    uint64_t count = 0;             // exact count, never thinned
    uint64_t stride = 1;            // members holds every stride-th solution
    std::vector<DensityCheckpoint> checkpoints;
};

// Members list is capped; beyond the cap we keep every 2^k-th member.
inline constexpr uint64_t MEMBER_CAP = 10000000ull;

inline void append_member(std::vector<uint64_t>& members, uint64_t& stride, uint64_t& skip,
                          uint64_t n) {
    if (skip > 0) { --skip; return; }
    if (members.size() >= MEMBER_CAP) {
        std::vector<uint64_t> half;
        half.reserve(members.size() / 2 + 1);
        for (size_t i = 0; i < members.size(); i += 2) half.push_back(members[i]);
        members.swap(half);
        stride *= 2;
    }
    members.push_back(n);
    skip = stride - 1;
}

// Natural and logarithmic density checkpoints at x = X^(1/8), X^(1/4),
// X^(1/2), X.  Counts are cumulative, so they are monotone in x.
inline std::vector<DensityCheckpoint> density_report(const std::vector<uint64_t>& members,
                                                     uint64_t X) {
    if (X < 1)
        throw std::invalid_argument("invalid-range: density report needs X >= 1");
    std::vector<uint64_t> xs;
    for (double e : {0.125, 0.25, 0.5, 1.0}) {
        uint64_t x = static_cast<uint64_t>(std::floor(std::pow(static_cast<double>(X), e)));
        x = std::max<uint64_t>(1, std::min(x, X));
        if (xs.empty() || x > xs.back()) xs.push_back(x);
    }
    if (xs.back() != X) xs.push_back(X);

    std::vector<DensityCheckpoint> out;
    size_t i = 0;
    uint64_t count = 0;
    KahanSum logsum;
    for (uint64_t x : xs) {
        while (i < members.size() && members[i] <= x) {
            ++count;
            logsum.add(1.0 / static_cast<double>(members[i]));
            ++i;
        }
        double logx = std::log(static_cast<double>(x));
        out.push_back({x, count, static_cast<double>(count) / static_cast<double>(x),
                       logx > 0 ? logsum.value() / logx : 0.0});
    }
    return out;
}

// Rescales checkpoint statistics when the member list was thinned; the
// final checkpoint gets the exact count.
inline void rescale_checkpoints(SolutionSetReport& rep) {
    if (rep.stride == 1) return;
    for (auto& c : rep.checkpoints) {
        c.count *= rep.stride;
        c.nat_density = static_cast<double>(c.count) / static_cast<double>(c.x);
        c.log_density *= static_cast<double>(rep.stride);
    }
    if (!rep.checkpoints.empty()) {
        auto& last = rep.checkpoints.back();
        last.count = rep.count;
        last.nat_density = static_cast<double>(rep.count) / static_cast<double>(last.x);
    }
}

// Enumerates N = { n in [1, X] : A f(n+a) = B f(n) + b }.  Pre: a, A, B
// all nonzero (aAB != 0) and X >= 1.
inline SolutionSetReport enumerate_solutions(const MultFuncDef& def, long long a, long long b,
                                             long long A, long long B, uint64_t X,
                                             const SpfTable& table) {
    if (a == 0 || A == 0 || B == 0)
        throw std::invalid_argument("invalid-parameter: aAB != 0 required");
    if (X < 1)
        throw std::invalid_argument("invalid-range: X must be >= 1");

    SolutionSetReport rep;
    rep.params = {a, b, A, B, X};

    if (a < 0) {
        // n in [1, X] solves (a, b, A, B) iff m = n + a solves (|a|, -b, B, A)
        // inside [1, X - |a|]; translate members by |a|.
        uint64_t mag = static_cast<uint64_t>(-a);
        if (X > mag) {
            SolutionSetReport inner =
                enumerate_solutions(def, -a, -b, B, A, X - mag, table);
            rep.members.reserve(inner.members.size());
            for (uint64_t m : inner.members) rep.members.push_back(m + mag);
            rep.count = inner.count;
            rep.stride = inner.stride;
        }
        rep.checkpoints = density_report(rep.members, X);
        rescale_checkpoints(rep);
        return rep;
    }

    uint64_t shift = static_cast<uint64_t>(a);
    uint64_t hi = X + shift;
    if (hi > table.range_end())
        throw std::invalid_argument("invalid-range: X + a exceeds sieve table");

    const ExactInt Ab(A), Bb(B), bb(b);
    std::vector<ExactInt> ring(shift + 1);
    uint64_t skip = 0;
    evaluate_range(def, 1, hi, table, [&](uint64_t m, const ExactInt& v) {
        ring[m % (shift + 1)] = v;
        if (m > shift) {
            uint64_t n = m - shift;
            const ExactInt& fn = ring[n % (shift + 1)];
            if (Ab * v == Bb * fn + bb) {
                ++rep.count;
                append_member(rep.members, rep.stride, skip, n);
            }
        }
        return true;
    });
    rep.checkpoints = density_report(rep.members, X);
    rescale_checkpoints(rep);
    return rep;
}

struct DefectEntry {
    uint64_t p;
    uint32_t nu;
    uint64_t pnu;
    uint64_t count;  // #{n in members : p^nu || n}
    double delta;
};

struct EquidistReport {
    std::vector<DefectEntry> entries;     // all prime powers p^nu <= limit
    double aggregate;                     // sum of delta^2 / p^nu
    std::vector<uint64_t> flagged;        // p^nu with delta > delta0 / 4
};

// Equidistribution defect of a member set in [1, X]:
//   Delta_{p^nu} = | (p^nu/X) #{n : p^nu || n} - (1 - 1/p) (1/X) #members |.
// A set of density delta whose members spread over residues like all
// integers keeps every Delta far below delta; entries above delta0/4 are
// flagged.  Pre: members sorted, members <= X.
inline EquidistReport equidistribution_defect(const std::vector<uint64_t>& members, uint64_t X,
                                              uint64_t limit, double delta0,
                                              const SpfTable& table) {
    if (X < 2 || limit < 2)
        throw std::invalid_argument("invalid-range: defect needs X >= 2, limit >= 2");
    if (!members.empty() && members.back() > X)
        throw std::invalid_argument("invalid-input: member exceeds X");

    std::map<uint64_t, uint64_t> counts;  // p^nu -> count
    std::vector<DefectEntry> entries;
    table.for_primes(2, limit, [&](uint64_t p) {
        uint64_t q = p;
        uint32_t nu = 1;
        while (q <= limit) {
            entries.push_back({p, nu, q, 0, 0.0});
            counts[q] = 0;
            if (q > limit / p) break;
            q *= p;
            ++nu;
        }
    });

    for (uint64_t n : members) {
        uint64_t r = n;
        while (r > 1) {
            uint64_t p = (r <= table.range_end()) ? table.spf(r) : factorize(r).front().first;
            uint64_t q = 1;
            while (r % p == 0) { r /= p; q *= p; }
            if (q <= limit) {
                auto it = counts.find(q);
                if (it != counts.end()) ++it->second;
            }
        }
    }

    double density = static_cast<double>(members.size()) / static_cast<double>(X);
    EquidistReport rep;
    KahanSum agg;
    for (auto& e : entries) {
        e.count = counts[e.pnu];
        double local = static_cast<double>(e.pnu) / static_cast<double>(X) *
                       static_cast<double>(e.count);
        double expect = (1.0 - 1.0 / static_cast<double>(e.p)) * density;
        e.delta = std::abs(local - expect);
        agg.add(e.delta * e.delta / static_cast<double>(e.pnu));
        if (e.delta > delta0 / 4.0) rep.flagged.push_back(e.pnu);
    }
    std::sort(entries.begin(), entries.end(),
              [](const DefectEntry& a, const DefectEntry& b) { return a.pnu < b.pnu; });
    rep.entries = std::move(entries);
    rep.aggregate = agg.value();
    return rep;
}

struct GapScanReport {
    long long C;
    uint64_t X;
    std::vector<uint64_t> counts;   // counts[b + C] = #{n : f(n+1) - f(n) = b}
    uint64_t aggregate_count = 0;   // total over |b| <= C
    double aggregate_log_density = 0.0;
};

// Scans n <= X for bounded consecutive gaps f(n+1) - f(n) = b, |b| <= C.
inline GapScanReport gap_scan(const MultFuncDef& def, long long C, uint64_t X,
                              const SpfTable& table) {
    if (C < 0)
        throw std::invalid_argument("invalid-parameter: gap bound must be >= 0");
    if (X < 1 || X + 1 > table.range_end())
        throw std::invalid_argument("invalid-range: X + 1 exceeds sieve table");

    GapScanReport rep;
    rep.C = C;
    rep.X = X;
    rep.counts.assign(static_cast<size_t>(2 * C + 1), 0);
    KahanSum logsum;
    ExactInt prev;
    evaluate_range(def, 1, X + 1, table, [&](uint64_t m, const ExactInt& v) {
        if (m > 1) {
            ExactInt diff = v - prev;
            auto d = diff.to_i64();
            if (d && *d >= -C && *d <= C) {
                ++rep.counts[static_cast<size_t>(*d + C)];
                ++rep.aggregate_count;
                logsum.add(1.0 / static_cast<double>(m - 1));
            }
        }
        prev = v;
        return true;
    });
    rep.aggregate_log_density = logsum.value() / std::log(static_cast<double>(X));
    return rep;
}

}  // namespace mfgap
