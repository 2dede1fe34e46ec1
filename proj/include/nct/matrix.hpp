#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nct {

using cplx = std::complex<double>;

/**
 * Dense complex matrix, row-major.  Minimal container shared by the
 * truncation engine, the eigensolver, and the verification labs; no
 * expression templates, no views — every operation returns a fresh matrix.
 */
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline CMatrix matmul(const CMatrix& A, const CMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    CMatrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const cplx aik = A(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

inline CMatrix conj_transpose(const CMatrix& A) {
    CMatrix B(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) B(j, i) = std::conj(A(i, j));
    return B;
}

/// A* A without forming the conjugate transpose separately.
inline CMatrix normal_matrix(const CMatrix& A) {
    CMatrix C(A.cols(), A.cols());
    for (std::size_t k = 0; k < A.rows(); ++k)
        for (std::size_t i = 0; i < A.cols(); ++i) {
            const cplx aki = std::conj(A(k, i));
            if (aki == cplx{}) continue;
            for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) += aki * A(k, j);
        }
    return C;
}

inline CMatrix add(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("add: dimension mismatch");
    CMatrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) + B(i, j);
    return C;
}

inline CMatrix sub(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("sub: dimension mismatch");
    CMatrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) - B(i, j);
    return C;
}

inline CMatrix scale(const CMatrix& A, cplx s) {
    CMatrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = s * A(i, j);
    return C;
}

inline double max_abs(const CMatrix& A) {
    double m = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j)));
    return m;
}

inline double frobenius_norm(const CMatrix& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

/// Largest entrywise deviation from Hermitian symmetry.
inline double hermitian_defect(const CMatrix& A) {
    double m = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = i; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j) - std::conj(A(j, i))));
    return m;
}

}  // namespace nct
