#include "nct/operators.hpp"

#include <stdexcept>
#include <utility>

namespace nct {

GeneralOperator::GeneralOperator(LatticeBasis b, CMatrix m)
    : basis(std::move(b)), entries(std::move(m)) {
    if (entries.rows() != entries.cols() || entries.rows() != basis.size())
        throw std::invalid_argument("GeneralOperator: matrix size must match basis size");
}

HermitianOperator::HermitianOperator(LatticeBasis b, CMatrix m)
    : basis(std::move(b)), entries(0, 0) {
    if (m.rows() != m.cols() || m.rows() != basis.size())
        throw std::invalid_argument("HermitianOperator: matrix size must match basis size");
    const std::size_t n = m.rows();
    symmetrization_defect = hermitian_defect(m);
    entries = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            entries(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
}

}  // namespace nct
