#ifndef MFHRR_CHERN_HPP
#define MFHRR_CHERN_HPP

#include <map>
#include <string>
#include <vector>

#include "mfhrr/ext.hpp"

namespace mfhrr {

// Top-degree twisted Hodge class tau(alpha) = f dx_1...dx_n, stored as the
// Milnor normal form of f.
struct ChernClass {
    MultiPoly milnor_class;
    int n = 0;
    int parity = 0;  // n mod 2
};

// Boundary-bulk map on a single affine chart with the flat connection:
// tau(alpha) = str(exp(-d delta) alpha), reduced into the Milnor ring.
// Throws not_closed_error when alpha is not a cocycle.
ChernClass boundary_bulk(const MatrixFactorization& p, const PolyMatrix& alpha,
                         const MilnorRing& mr);

// tau of the identity.
ChernClass chern_local(const MatrixFactorization& p, const MilnorRing& mr);

// The involution (-1)^p on p-forms, in top degree: multiply by (-1)^n.
ChernClass dual_class(const ChernClass& c);

// Universal Todd series prod x_i/(1 - e^{-x_i}) expanded in the elementary
// symmetric polynomials c_1, c_2, ... up to total degree `degree`. Keys are
// exponent vectors (a_1, ..., a_degree) of c_1^{a_1} c_2^{a_2} ...
struct ToddSeries {
    int degree = 0;
    std::map<std::vector<int>, Rational> coeffs;

    Rational coeff(const std::vector<int>& key) const;
    std::string str() const;
};

ToddSeries todd_series(int degree);

// --- sign conventions ---------------------------------------------------

// How the duality involution enters the residue form of the pairing: either
// the residue identification already absorbs it ("identity") or an extra
// (-1)^n is due ("top_sign"). Fixed once by calibration probes.
enum class VeeConvention { identity, top_sign };

struct Calibration {
    VeeConvention convention = VeeConvention::identity;
    bool identity_ok = false, top_sign_ok = false;
    std::string record;
};

// Runs the calibration probes once per process and caches the result.
// Throws convention_error when no single convention fits every probe.
const Calibration& global_calibration();

// (-1)^{binom(n+1,2)}.
int hrr_sign_constant(int n);

int vee_factor(const Calibration& cal, int n);

// --- right-hand sides -----------------------------------------------------

// sign * vee * Res[g f / (dw)] with f = tau(1_P), g = tau(1_Q), td = 1.
Rational hrr_rhs(const MatrixFactorization& p, const MatrixFactorization& q, const MilnorRing& mr);

// Same with f = tau(alpha), g = tau(beta).
Rational cardy_rhs(const PolyMatrix& alpha, const PolyMatrix& beta,
                   const MatrixFactorization& p, const MatrixFactorization& q,
                   const MilnorRing& mr);

// --- verification reports ---------------------------------------------------

struct VerificationReport {
    std::string w;
    int n = 0;
    long mu = 0;
    std::string p_descr, q_descr;
    long lhs = 0;
    Rational rhs;
    bool equal = false;
    int sign_constant = 1;
    std::string chern_p, chern_q;
    std::string method;
    std::string calibration;
    double elapsed_ms = 0.0;
    std::string error;  // empty on success; scope violations land here

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct CardyReport {
    std::string w;
    int n = 0;
    long mu = 0;
    std::string p_descr, q_descr;
    std::string alpha, beta;
    Rational lhs, rhs;
    bool equal = false;
    int sign_constant = 1;
    std::string tau_alpha, tau_beta;
    std::string method;
    std::string calibration;
    double elapsed_ms = 0.0;
    std::string error;

    friend bool operator==(const CardyReport&, const CardyReport&) = default;
};

// Full HRR check: lhs by Ext dimensions, rhs by residue; scope violations are
// reported, not thrown. `method` selects the Ext algorithm: "groebner",
// "graded", or "both" (cross-check whenever the input is gradable).
VerificationReport verify_hrr(const MatrixFactorization& p, const MatrixFactorization& q,
                              const std::string& method = "both");

CardyReport verify_cardy(const MatrixFactorization& p, const MatrixFactorization& q,
                         const PolyMatrix& alpha, const PolyMatrix& beta,
                         const std::string& alpha_name = "alpha",
                         const std::string& beta_name = "beta",
                         const std::string& method = "both");

std::string report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const std::string& text);
std::string report_to_json(const CardyReport& r);
CardyReport cardy_report_from_json(const std::string& text);

std::string report_to_text(const VerificationReport& r);
std::string report_to_text(const CardyReport& r);

}  // namespace mfhrr

#endif
