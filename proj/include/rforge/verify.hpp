#pragma once

#include "rforge/milnor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rforge {

struct VerifyOptions {
    int order = 4;
    int trials = 25;
    std::uint64_t seed = 7;
    unsigned jobs = 1;
};

struct VerifyFailure {
    std::string fingerprint;
    std::string check;
    std::string input;
    std::string expected;
    std::string got;
};

/// Outcome of one suite. Failures are sorted by fingerprint and notes are
/// sorted, so a report depends only on (f, options), not on scheduling.
struct VerifyReport {
    std::string suite;
    std::string f;
    std::uint64_t seed = 0;
    int trials = 0;
    int order = 0;
    std::uint64_t instances = 0;
    std::vector<VerifyFailure> failures;
    std::vector<std::string> notes;

    bool passed() const { return failures.empty(); }
    /// Failure with the shortest input description, or nullptr.
    const VerifyFailure* smallest() const;
};

/// b_{k+1,f}(f h) - f b_{k+1,f}(h) = (k+n) b_{k,f}(h), its -f mirror, and the
/// pairing identities H^0(f h, g) = H^0(h, f g),
/// H^{k+1}(f h, g) - H^{k+1}(h, f g) = (k+n) H^k(h, g), for k <= order.
VerifyReport check_flatness_u(const MilnorAlgebra& milnor, const VerifyOptions& options);

/// With F = f + sum_i z_i eta_i:
///   d/dz_i b_{k,F}(h) = -b_{k+1,F}(eta_i h) + eta_i b_{k+1,F}(h),
///   d/dz_i b_{k,-F}(g) = b_{k+1,-F}(eta_i g) - eta_i b_{k+1,-F}(g),
/// for k <= order. Empty `etas` means the Milnor basis.
VerifyReport check_flatness_z(const MilnorAlgebra& milnor, const std::vector<MultiPoly>& etas,
                              const VerifyOptions& options);

/// For every basis element eta: P_k(y) = Res_x[(-1)^n b_k(eta) delta(x, y) dx]
/// and the class sum_k P_k u^k dy must equal eta(y) dy in the twisted
/// cohomology (order-0 slab eta, higher slabs zero after twisted normal form).
VerifyReport check_characteristic_equation(const MilnorAlgebra& milnor, const VerifyOptions& options);

/// omega_{+-f}(h) is closed and the wedge of omega_f(h), omega_{-f}(g)
/// reduces to its top form through explicit boundaries.
VerifyReport check_closedness(const MilnorAlgebra& milnor, const VerifyOptions& options);

/// b-sign flip, (-1)^i symmetry, Saito axioms 1, 2, 4, 5, class invariance,
/// and vanishing of the higher orders (1..6) on the basis when f is
/// quasi-homogeneous.
VerifyReport check_symmetries(const MilnorAlgebra& milnor, const VerifyOptions& options);

/// Suite names accepted by run_suite: closedness, flatness-u, flatness-z,
/// char-eq, symmetry; "all" runs them in that order.
std::vector<std::string> suite_names();
std::vector<VerifyReport> run_suite(const std::string& name, const MilnorAlgebra& milnor,
                                    const std::vector<MultiPoly>& etas, const VerifyOptions& options);

/// Positive weights w with sum_i w_i e_i = 1 on every monomial of f, if any.
std::optional<std::vector<Rational>> quasi_homogeneous_weights(const MultiPoly& f);

} // namespace rforge
