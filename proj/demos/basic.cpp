// Small tour of the library: build a multiplicative function with two
// exceptional primes, enumerate the solution set of a shifted equation,
// and compare the measured density with the zero-dimensional sieve value.

#include "mfgap/multfunc.hpp"
#include "mfgap/sieve.hpp"
#include "mfgap/sieve_density.hpp"
#include "mfgap/solutions.hpp"

#include <cstdio>

int main() {
    using namespace mfgap;

    const uint64_t X = 1000000;
    SpfTable table(X + 2);

    // Completely multiplicative, f(p) = p except f(3) = 6 and f(5) = 10.
    MultFuncDef f = MultFuncDef::identity()
                        .with_exception(3, 6)
                        .with_exception(5, 10);
    f.completely_multiplicative = true;

    // Solutions of f(n + 1) = f(n) + 2.
    SolutionSetReport sols = enumerate_solutions(f, 1, 2, 1, 1, X, table);
    std::printf("solutions of f(n+1) = f(n) + 2 up to %llu: %llu\n",
                static_cast<unsigned long long>(X),
                static_cast<unsigned long long>(sols.count));
    for (size_t i = 0; i < sols.members.size() && i < 10; ++i)
        std::printf("  n = %llu\n", static_cast<unsigned long long>(sols.members[i]));

    double measured = static_cast<double>(sols.count) / static_cast<double>(X);
    std::printf("measured density: %.6f\n", measured);

    // The dominant local events: 5 || n and 3 || n+1 forces f(n) = 2n and
    // f(n+1) = 2n + 2, and symmetrically with the roles of 3 and 5 swapped.
    DensityPrediction ord1 = zero_dim_density({{5, 1, 0}, {3, 1, 1}}, {}, {});
    DensityPrediction ord2 = zero_dim_density({{3, 1, 0}, {5, 1, 1}}, {}, {});
    std::printf("sieve value, both orderings: %.6f\n",
                ord1.to_double() + ord2.to_double());
    return 0;
}
