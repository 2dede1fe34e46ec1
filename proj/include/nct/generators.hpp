#pragma once

#include <vector>

#include "nct/algebra.hpp"
#include "nct/cwikel.hpp"
#include "nct/rng.hpp"

namespace nct {

/**
 * Seeded instance builders shared by the campaign driver and the acceptance
 * suite.  Every function consumes variates from the passed Rng in a fixed
 * order, so a corpus is a pure function of the seed and the shape parameters.
 */

/// Random deformation matrix: independent uniform [0, 1) entries above the
/// diagonal, antisymmetrized.
ThetaMatrix random_theta(Rng& rng, int n);

/// Sum of `terms` random modes U^k with |k|_inf <= radius and complex normal
/// weights (coinciding modes accumulate).
FourierElement random_element(Rng& rng, const ThetaMatrix& theta, int radius, int terms);

/// Random finitely supported multiplier symbol on Z^n; never empty.
Symbol random_symbol(Rng& rng, int n, int radius, int terms);

/// Nonpositive potential -y*y from a random y.
FourierElement squared_well(Rng& rng, const ThetaMatrix& theta, int radius, int terms);

/**
 * Strictly negative scalar-dominant potential -(c0 + s^2 y*y) with y drawn at
 * random and normalized to unit GNS norm, c0 ~ U[c0_lo, c0_hi].  The scalar
 * part concentrates the L_q mass on the exactly computed zero Fourier mode,
 * which keeps box trace estimates of |V|^q converging at small radii; the
 * y*y part carries the off-diagonal structure.
 */
FourierElement scalar_dominant_well(Rng& rng, const ThetaMatrix& theta, int radius, int terms,
                                    double c0_lo, double c0_hi, double s);

/**
 * Positive element c0 + s (e^{i phi} U^e + e^{-i phi} U^{-e}) / sqrt(2) with a
 * random coordinate direction e, random phase, and c0 ~ U[c0_lo, c0_hi].  The
 * spectrum is an explicit cosine band c0 + s sqrt(2) cos, so the L_p / L_2
 * norm gap is bounded below uniformly in the draw and box trace estimates
 * converge at small radii.  Requires c0_lo > s sqrt(2) for positivity.
 */
FourierElement one_frequency_element(Rng& rng, const ThetaMatrix& theta, double c0_lo,
                                     double c0_hi, double s);

/// Random-weight symbol supported on `modes` distinct points of the lattice
/// {0, spacing}^n shifted grid {-spacing, 0, spacing}^n.  Any two support
/// points differ by at least `spacing` in some coordinate, so the induced
/// Gram matrix of a compactly supported x is diagonal once the support
/// diameter of x*x stays below `spacing`.  Requires modes <= 3^n.
Symbol separated_symbol(Rng& rng, int n, int modes, int spacing);

/// `size` distinct unit modes U^k with k != 0 and |k|_inf <= radius: an
/// orthonormal zero-mean family whose density sum_i u_i u_i* is exactly
/// size times the unit.  Requires size <= (2 radius + 1)^n - 1.
std::vector<FourierElement> mode_family(Rng& rng, const ThetaMatrix& theta, int size, int radius);

/// Orthonormal zero-mean family of the given size: random elements with the
/// zero mode cleared, orthonormalized by modified Gram-Schmidt with
/// reorthogonalization.  Degenerate draws are redrawn deterministically.
std::vector<FourierElement> gram_schmidt_family(Rng& rng, const ThetaMatrix& theta, int size,
                                                int radius, int terms);

}  // namespace nct
