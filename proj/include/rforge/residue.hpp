#pragma once

#include "rforge/localized.hpp"
#include "rforge/milnor.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace rforge {

/// Res^G[num dx / (x_1^{D_1}, ..., x_n^{D_n})]: the coefficient of
/// x^{D-1} in num over the active variables. Parameters pass through, so the
/// result is a polynomial in the parameters only.
MultiPoly res_monomial(const MultiPoly& num, const std::vector<int>& D);

/// Transformation-law data for the generators (F_1^{m_1}, ..., F_n^{m_n}):
/// x^D = C . g and det C.
struct ResidueCertificate {
    std::vector<int> exponents;
    MultiPoly det;
    /// Same data with every D_i raised by one (row i multiplied by x_i), when requested.
    std::vector<int> raised_exponents;
    MultiPoly raised_det;
};

/// Grothendieck residues of LocalizedRational n-forms via the transformation
/// law. The certificate for (F_1, ..., F_n) comes from power_containment; those
/// for higher powers are lifted from it. Certificates are cached per
/// (family, exponents).
class ResidueEngine {
public:
    struct Stats {
        std::uint64_t evaluations = 0;
        std::uint64_t certificates = 0;
        std::uint64_t raised_checks = 0;
    };

    /// When enabled every evaluation is repeated with the raised certificate and
    /// a disagreement throws InvariantViolation.
    void set_check_raised_certificates(bool on) { check_raised_ = on; }
    bool check_raised_certificates() const { return check_raised_; }

    /// Res^G[num dx / (F_1^{m_1}, ..., F_n^{m_n})]. Exponents equal to zero are
    /// first raised to one. The family must be free of parameters.
    MultiPoly residue(const LocalizedRational& v);
    /// Same, for parameter-free numerators.
    Rational residue_value(const LocalizedRational& v);

    std::shared_ptr<const ResidueCertificate> certificate(const DenominatorFamily& family,
                                                          const std::vector<int>& m);

    Stats stats() const;
    void clear_cache();

private:
    const PowerCertificate& base_certificate(const DenominatorFamily& family);

    std::atomic<bool> check_raised_{false};
    std::atomic<std::uint64_t> evaluations_{0};
    std::atomic<std::uint64_t> certificates_{0};
    std::atomic<std::uint64_t> raised_checks_{0};
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const ResidueCertificate>> cache_;
    std::map<std::string, std::shared_ptr<const PowerCertificate>> base_;
};

/// Process-wide engine used by the free functions below.
ResidueEngine& residue_engine();

MultiPoly res_grothendieck(const LocalizedRational& v);

/// Res_f(h dx, g dx) = Res^G[h g dx / (f_1, ..., f_n)].
Rational res_pairing(const MultiPoly& f, const MultiPoly& h, const MultiPoly& g);

} // namespace rforge
