#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "nct/algebra.hpp"
#include "nct/matrix.hpp"
#include "nct/report.hpp"
#include "nct/sequences.hpp"

namespace nct {

/// Finitely supported Fourier multiplier symbol k -> g(k).
using Symbol = std::map<LatticeVector, cplx>;

/// Decreasing rearrangement of |g| over the support of g.
DecreasingSequence rearranged_abs(const Symbol& g);

/// (sum_k |g(k)|^p)^{1/p}; p = 2 is the GNS norm of the symbol.
double symbol_lp_norm(const Symbol& g, double p);

/// The canonical symbol g_p(k) = |k|^{-n/p} (g_p(0) = 0) on the box |k|_inf <= K.
Symbol gp_symbol(int n, double p, int K);

/**
 * Gram matrix of the rank-|supp g| operator T = lambda(x) g(-i nabla):
 * G_{k,k'} = conj(g(k)) g(k') <x U^{k'}, x U^k>, modes in lexicographic order.
 * G equals T*T restricted to the span of the modes in supp g, so eig(G) are
 * exactly the squared singular values of T -- no ambient box, no truncation.
 */
struct GramMatrix {
    std::vector<LatticeVector> modes;
    CMatrix entries;
};

GramMatrix gram_matrix(const FourierElement& x, const Symbol& g);

/// Exact singular values of lambda(x) g(-i nabla), descending, |supp g| many.
DecreasingSequence gram_mu(const FourierElement& x, const Symbol& g);

/**
 * One product-operator instance: left multiplication by x composed with the
 * multiplier g(-i nabla), to be checked in the norm regime selected by p.
 */
struct CwikelInstance {
    FourierElement x;
    Symbol g;
    double p = 2.0;

    CwikelInstance(FourierElement x_, Symbol g_, double p_);

    /// "weak-above-two" (p > 2), "exact-at-two" (p == 2), "below-two" (p < 2).
    std::string regime() const;
};

nlohmann::json to_json(const CwikelInstance& inst);
CwikelInstance cwikel_instance_from_json(const nlohmann::json& j);

/// ||lambda(x) g(-i nabla)||_{HS} = ||x||_{L_2} ||g||_{l_2} to 1e-10 * scale.
VerificationReport verify_hs_equality(const FourierElement& x, const Symbol& g,
                                      const std::string& id_prefix = "hs");

/**
 * ||x||^2_{L_2} mu^2(g) is majorized by mu^2(lambda(x) g(-i nabla)): partial
 * sums of eig(G) dominate within 1e-9 * scale and the totals agree within
 * 1e-10 * scale (the totals identity is the Hilbert-Schmidt equality).
 */
VerificationReport verify_majorization(const FourierElement& x, const Symbol& g,
                                       const std::string& id_prefix = "maj");

/**
 * Norm bounds on mu(lambda(x) g(-i nabla)) in the regime picked by inst.p:
 *   p > 2:  weak quasi-norm <= c_plus(p) ||x||_{L_p} * weak quasi-norm of g,
 *           and Schatten norm <= ||x||_{L_p} ||g||_{l_p};
 *   p == 2: Schatten-2 equality ||.||_2 = ||x||_{L_2} ||g||_{l_2};
 *   p < 2:  Schatten norm <= ||x||_{L_2} ||g||_{l_p}, and weak quasi-norm
 *           <= c_minus(p) ||x||_{L_2} * weak quasi-norm of g.
 * ||x||_{L_p} for p > 2 comes from the box-compression trace estimator with
 * radius K_tau; non-convergence yields inconclusive records.  Each record's
 * diagnostics carry the observed ratio LHS / (norm product), an empirical
 * lower bound on the best constant, never compared against the proved upper
 * bounds as a failure.
 */
VerificationReport verify_cwikel_bounds(const CwikelInstance& inst, int K_tau, double tol,
                                        const std::string& id_prefix = "cwikel");

/**
 * Weak quasi-norm bound for the sandwiched operator W lambda(V) W with
 * W = multiplier of |k|^{-n/(2p)} (zero at k = 0), compressed to the box
 * |k|_inf <= K_g (compression never increases singular values):
 *   weak_quasinorm(mu, p) <= 2^{1/p} c^2 nu0^{1/p} tau[|V|^q]^{1/q},
 * with the squared constant dispatched by regime ((p>1, q=p), (p=1, q>1),
 * (p<1, q=1)) and the 2^{1/p} factor dropped when V is known positive.
 * tau[|V|^q] uses the trace estimator at radius K_tau; non-convergence
 * yields an inconclusive record.
 */
VerificationReport verify_sandwiched_cwikel(const FourierElement& V, double p, double q, int K_g,
                                            int K_tau, double tol, bool known_positive,
                                            const std::string& id_prefix = "sandwich");

}  // namespace nct
