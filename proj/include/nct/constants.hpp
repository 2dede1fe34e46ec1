#pragma once

namespace nct::constants {

/// Upper bound (130 p / (p-2))^{1/2} for the best constant in the
/// supercritical (p > 2) weak Cwikel estimate.
double c_plus(double p);

/// Upper bound 2^{1/p} (2-p)^{-1/p} for the best constant in the
/// subcritical (0 < p < 2) weak Cwikel estimate.
double c_minus(double p);

/// Endpoint constant 2^{-1/p} p^{-1/2} (p-2)^{1/p-1/2} c_plus(p) used for the
/// weak-L_2 bound obtained through the Hoelder route; requires p > 2.
double c_two(double p);

/// Optimal constant p^{-1/q} q^{-1/p} (p+q)^{1/p+1/q} of the weak-Schatten
/// Hoelder inequality ||ST||_{r,oo} <= gamma(p,q) ||S||_{p,oo} ||T||_{q,oo},
/// 1/r = 1/p + 1/q.
double gamma_holder(double p, double q);

/// Lieb-Thirring constant bound
/// gamma * Gamma(p+1) Gamma(gamma) / Gamma(p+gamma+1) * c_plus(2p)^{2p} * nu0;
/// requires p > 1, gamma > 0.
double lt_bound(double p, double gamma, int n, double nu0);

/// Sobolev constant from the Lieb-Thirring one:
/// K_n = n/(n+2) * ((n+2) L / 2)^{-2/n}.
/// The -2/n exponent is the one consistent with the chain
/// K >= n/(n+2) ((n+2)L/2)^{-2/n} and L <= 2/(n+2) ((n+2)K/n)^{-n/2};
/// an alternative -n/2 display is inconsistent with that chain and is
/// flagged in every report built on this value.
double sobolev_K_from_L(int n, double L);

/// Note string attached to every report that uses sobolev_K_from_L.
const char* sobolev_exponent_note();

/// Eigenvalue-counting constant c(p,q)^{2p} of the fractional Schroedinger
/// bound, with the regime dispatch c(p,q) = c_plus(2p) for p > 1 (q = p),
/// c_two(2q) for p = 1 (q > 1), c_minus(2p) for p < 1 (q = 1).
double clr_constant(double p, double q);

/// Squared Cwikel constant c(p,q)^2 of the sandwiched estimate, same regime
/// dispatch as clr_constant.
double sandwich_constant_sq(double p, double q);

}  // namespace nct::constants
