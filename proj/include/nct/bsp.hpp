#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nct/algebra.hpp"
#include "nct/matrix.hpp"
#include "nct/operators.hpp"
#include "nct/report.hpp"

namespace nct {

/**
 * A fractional Schrodinger problem on a lattice box truncation.  The kinetic
 * part is the diagonal |k|^{n/p} (kernel exactly the k = 0 mode); the potential
 * is the compression of left multiplication by a self-adjoint element V.  The
 * (p, q) pair must sit in one of the three regimes accepted by the eigenvalue
 * counting bounds: p > 1 with q = p, p = 1 with q > 1, or p < 1 with q = 1.
 */
struct SchrodingerInstance {
    ThetaMatrix theta;
    double p_exponent;
    double q_exponent;
    FourierElement V;
    int K_op;
    int K_tau;
    std::vector<double> lambda_grid;  // negative spectral parameters
    std::vector<double> h_grid;       // optional semiclassical parameters, decreasing

    /// Validates self-adjointness of V (coefficientwise to 1e-12), the (p, q)
    /// regime, and positive box radii; lambda_grid defaults to the geometric
    /// grid -2^{-i}, i = 0..10.
    SchrodingerInstance(ThetaMatrix t, double p, double q, FourierElement v, int K_op_, int K_tau_);
};

nlohmann::json to_json(const SchrodingerInstance& inst);
SchrodingerInstance schrodinger_from_json(const nlohmann::json& j);

/// The geometric grid {-2^{-i}}, i = 0..10.
std::vector<double> default_lambda_grid();

/// Diagonal kinetic operator |k|^{n/p} on the K_op box.
HermitianOperator build_H(const SchrodingerInstance& inst);

/// Form sum on the truncation: build_H plus the Hermitian part of the
/// compression of left multiplication by V.
HermitianOperator build_HV(const SchrodingerInstance& inst);

/**
 * Core Birman-Schwinger matrix -(D - lambda)^{-1/2} V (D - lambda)^{-1/2} from
 * a nonnegative diagonal kinetic part and a Hermitian potential block.  For
 * lambda < 0 the factors are full inverses; lambda == 0 uses the partial
 * inverse (zero diagonal entries contribute a zero factor).  Positive lambda
 * is rejected.
 */
CMatrix birman_schwinger_core(const std::vector<double>& kinetic_diag, const CMatrix& v,
                              double lambda);

/// Birman-Schwinger operator of the instance at lambda < 0.
HermitianOperator birman_schwinger_K(const SchrodingerInstance& inst, double lambda);

/**
 * For every grid lambda at distance > 1e-6 from the spectrum of H_V, asserts
 * the exact integer identity
 *   count_below(H_V, lambda) == count_above(K_V(lambda), 1).
 * Grid points inside the guard band produce boundary-sensitive records and are
 * excluded from pass/fail.  The identity holds exactly in finite dimension, so
 * a failure is a defect, not a truncation artifact.
 */
VerificationReport verify_abstract_bsp(const SchrodingerInstance& inst,
                                       const std::string& id_prefix = "bsp");

/**
 * Zero-energy counting for nonpositive V (checked: the compression of -V must
 * be PSD).  With K_V built through the partial inverse of H, asserts the
 * sandwich
 *   count_above(K_V, 1) <= count_below(H_V, 0) <= count_above(K_V, 1) + dim ker H
 * as exact integers, and the weak-norm chain
 *   0 <= count_below(H_V, 0) - N0 <= weak_quasinorm(mu(K_V), p)^p,
 * where N0 = 1 exactly when the scalar block tau(V) is below -1e-12.
 */
VerificationReport verify_borderline_bsp(const SchrodingerInstance& inst,
                                         const std::string& id_prefix = "borderline");

/**
 * Negative-eigenvalue counting bounds.  Emits one record for the plain count
 * minus one and one for the zero-mean (k = 0 row and column deleted) count,
 * both against the same right-hand side
 *   clr_constant(p, q) * nu0_closed_bound(n) * tau[|V_-|^q]^{p/q},
 * with the trace estimated at K_tau.  A non-converged estimate (relative
 * change >= 1e-2) yields inconclusive records instead of pass/fail.
 */
VerificationReport verify_clr(const SchrodingerInstance& inst,
                              const std::string& id_prefix = "clr");

/**
 * Counts for h^{n/p} H + V over h_grid against the scaled bound
 * clr_constant * nu0 * h^{-n} * tau[|V_-|^q]^{p/q} + 1.  Counts that touch
 * dim - 1 saturate the box and are reported inconclusive; count * h^n is
 * emitted as a diagnostic for trend inspection but never asserted.
 */
VerificationReport semiclassical_scan(const SchrodingerInstance& inst,
                                      const std::string& id_prefix = "semiclassical");

/**
 * Riesz means of the negative spectrum of the zero-mean truncation:
 *   sum |lambda_j|^gamma <= lt_bound(p, gamma, n, nu0) * tau[|V_-|^{p+gamma}].
 * Requires p > 1.  The compression only lowers the left side, so a pass is
 * meaningful despite truncation.
 */
VerificationReport verify_lt(const SchrodingerInstance& inst, double gamma,
                             const std::string& id_prefix = "lt");

/**
 * Kinetic-energy lower bound for an orthonormal family of zero-mean elements
 * (both properties checked):
 *   sum gradient_energy(u_l) >= K_n * tau[(sum u_l u_l*)^{(n+2)/n}],
 * with K_n derived from the Riesz-mean constant at (p, gamma) = (n/2, 1) and
 * the density trace estimated at K_tau.  Requires n >= 3.
 */
VerificationReport verify_sobolev(const std::vector<FourierElement>& family, int K_tau,
                                  const std::string& id_prefix = "sobolev");

}  // namespace nct
