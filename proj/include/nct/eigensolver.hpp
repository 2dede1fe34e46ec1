#pragma once

#include <vector>

#include "nct/matrix.hpp"

namespace nct {

struct EigResult {
    std::vector<double> eigenvalues;  // ascending; ties keep pre-sort order
    CMatrix vectors;                  // columns aligned with eigenvalues when requested
    bool has_vectors = false;
};

/**
 * Eigendecomposition of a Hermitian matrix.  The input is symmetrized, reduced
 * to real symmetric tridiagonal form by complex Householder reflectors plus a
 * diagonal phase rescaling, then diagonalized by implicit-shift QL sweeps with
 * rotations accumulated into the eigenvector basis.  Throws on non-square
 * input or (never observed in practice) QL non-convergence.
 */
EigResult hermitian_eig(const CMatrix& a, bool want_vectors);

/// Singular values via the Hermitian eigenproblem for the smaller of T*T and
/// TT*; descending, length min(rows, cols), negative rounding clamped to zero.
std::vector<double> singular_values_raw(const CMatrix& t);

}  // namespace nct
