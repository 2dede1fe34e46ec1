#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nct/lattice_basis.hpp"
#include "nct/matrix.hpp"
#include "nct/sequences.hpp"

namespace nct {

/// Dense matrix acting on the span of a lattice box basis.
struct GeneralOperator {
    LatticeBasis basis;
    CMatrix entries;

    GeneralOperator(LatticeBasis b, CMatrix m);
};

/// Hermitian matrix on a lattice box basis.  Construction averages the input
/// with its adjoint and records the defect removed, so downstream spectral
/// routines always see an exactly Hermitian array.
struct HermitianOperator {
    LatticeBasis basis;
    CMatrix entries;
    double symmetrization_defect = 0.0;

    HermitianOperator(LatticeBasis b, CMatrix m);
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    std::optional<CMatrix> vectors;   // columns aligned with eigenvalues
};

struct SingularValues {
    DecreasingSequence values;  // descending; entries below the floor report as zero
    double floor = 0.0;         // 1e-8 times the largest singular value
    std::size_t clamped = 0;    // number of entries suppressed by the floor
};

}  // namespace nct
