#pragma once

#include "rforge/milnor.hpp"
#include "rforge/twisted.hpp"

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

namespace rforge {

enum class Convention { Hres, Saito, Canonical };

Convention parse_convention(const std::string& name);
std::string convention_name(Convention c);

/// u^shift * sum_k coeffs[k] u^k
struct ShiftedSeries {
    int shift = 0;
    RatSeries coeffs{Rational(0), 0};

    /// Coefficient of u^power.
    Rational at(int power) const { return power < shift ? Rational(0) : coeffs[power - shift]; }
};

/// Counts of pairing evaluations and of disagreements between the one-sided
/// and symmetrized order-k formulas (each disagreement also throws).
struct PairingCounters {
    std::atomic<std::uint64_t> evaluations{0};
    std::atomic<std::uint64_t> mismatches{0};
};
PairingCounters& pairing_counters();

/// H^0..H^order (h dx, g dx) where
///   H^i = (1/2)[Res((-1)^n b_{i,f}(h) g dx) + Res(b_{i,-f}(g) h dx)].
/// Both halves are computed and must agree.
RatSeries hres_series(const MilnorAlgebra& milnor, const MultiPoly& h, const MultiPoly& g, int order);
Rational hres_order(const MilnorAlgebra& milnor, const MultiPoly& h, const MultiPoly& g, int i);

/// Sesquilinear extension sum_{i,j,k} (-1)^j H^k(w1_i, w2_j) u^{i+j+k} through
/// `order`, then the convention: saito multiplies by u^n, canonical by
/// (-1)^{n(n+1)/2}.
ShiftedSeries pairing_series(const MilnorAlgebra& milnor, const TwistedClass& w1, const TwistedClass& w2, int order,
                             Convention convention = Convention::Hres);

struct PairingMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<ShiftedSeries>> entries;
    Convention convention = Convention::Hres;
    int order = 0;
};

/// Pairings of eta_a dx, eta_b dx over the Milnor basis; entries are computed
/// independently on up to `jobs` threads.
PairingMatrix pairing_matrix(const MilnorAlgebra& milnor, int order, Convention convention = Convention::Hres,
                             unsigned jobs = 1);

/// Sign relating hres to the canonical pairing: (-1)^{n(n+1)/2}.
int canonical_sign(std::size_t n);

/// delta(x, y) = det(Delta_j(d_i f)) over f's variables followed by copies x'.
struct DiagonalKernel {
    MultiPoly delta;
    std::vector<std::size_t> copies;
};
DiagonalKernel chern_delta(const MultiPoly& f);

} // namespace rforge
