#pragma once

#include "rforge/multipoly.hpp"

#include <cstdint>
#include <random>

namespace rforge {

/// Sparse random polynomials in the first `nvars` variables: up to max_terms
/// terms of total degree <= max_degree with coefficients in {-5..5} \ {0}.
/// Draws use mt19937_64 with plain modulo reduction, so sequences are the
/// same on every platform.
class RandomPolys {
public:
    explicit RandomPolys(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    MultiPoly poly(const VarSetPtr& v, std::size_t nvars, int max_degree = 4, int max_terms = 6) {
        MultiPoly p(v);
        const int terms = uniform(1, max_terms);
        for (int t = 0; t < terms; ++t) {
            std::vector<int> e(v->size(), 0);
            const int budget = uniform(0, max_degree);
            for (int k = 0; k < budget; ++k) e[static_cast<std::size_t>(uniform(0, static_cast<int>(nvars) - 1))]++;
            int c = 0;
            while (c == 0) c = uniform(-5, 5);
            p.add_term(Monomial(e), c);
        }
        return p;
    }

private:
    std::mt19937_64 rng_;
};

/// Seed for trial `index` of a run seeded with `seed` (splitmix64 finalizer).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace rforge
