#include "nct/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nct {

namespace {

/**
 * Implicit-shift QL on a real symmetric tridiagonal matrix with diagonal d and
 * subdiagonal sub (sub[i] couples i and i+1, sub[n-1] unused).  On return d
 * holds unordered eigenvalues; when z is given its columns are rotated so that
 * column j becomes an eigenvector for d[j].
 */
void tridiag_ql(std::vector<double>& d, std::vector<double>& sub, CMatrix* z) {
    const std::size_t n = d.size();
    if (n == 0) return;
    sub[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    // Overall scale for an absolute deflation test: couplings below eps * anorm
    // move eigenvalues by less than the ambient rounding noise, and splitting
    // there keeps sweeps from mixing wildly different magnitude ranges.
    double anorm = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        anorm = std::max(anorm, std::abs(d[j]) + std::abs(sub[j]) +
                                    (j > 0 ? std::abs(sub[j - 1]) : 0.0));
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m = l;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(sub[m]) <= eps * dd || std::abs(sub[m]) <= eps * anorm)
                    break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("hermitian_eig: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + sub[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * sub[i];
                    const double b = c * sub[i];
                    r = std::hypot(f, g);
                    sub[i + 1] = r;
                    if (r == 0.0) {
                        // Deflate without finishing the sweep and restart.
                        d[i + 1] -= p;
                        sub[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z != nullptr) {
                        for (std::size_t k = 0; k < n; ++k) {
                            const cplx t = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * t;
                            (*z)(k, i) = c * (*z)(k, i) - s * t;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                sub[l] = g;
                sub[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

EigResult hermitian_eig(const CMatrix& a_in, bool want_vectors) {
    if (a_in.rows() != a_in.cols())
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    const std::size_t n = a_in.rows();
    EigResult out;
    out.has_vectors = want_vectors;
    if (n == 0) {
        out.vectors = CMatrix(0, 0);
        return out;
    }

    // Symmetrize so a tiny Hermitian defect cannot leave the real track.
    CMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = 0.5 * (a_in(i, j) + std::conj(a_in(j, i)));

    struct Reflector {
        std::size_t len;
        double c;
        std::vector<cplx> u;
    };
    std::vector<Reflector> refl;
    std::vector<cplx> esub(n, cplx(0.0, 0.0));

    // Reduce column i (rows 0..i-2) for i = n-1 down to 2; each reflector
    // H = I - c u u* acts on the leading i-by-i block and fixes the rest.
    for (std::size_t i = n - 1; i >= 2; --i) {
        double off = 0.0;
        for (std::size_t j = 0; j + 1 < i; ++j) off += std::abs(w(j, i));
        if (off == 0.0) {
            esub[i] = w(i - 1, i);
            continue;
        }
        // Scale the pivot column by its 1-norm before squaring anything, so
        // columns that have decayed to denormal range cannot underflow sigma
        // or the reflector norm into a division by zero.
        double scale = 0.0;
        for (std::size_t j = 0; j < i; ++j) scale += std::abs(w(j, i));
        double sigma2 = 0.0;
        for (std::size_t j = 0; j < i; ++j) sigma2 += std::norm(w(j, i) / scale);
        const double sigma = std::sqrt(sigma2);
        const cplx alpha = w(i - 1, i) / scale;
        const double aa = std::abs(alpha);
        const cplx mu = (aa == 0.0) ? cplx(1.0, 0.0) : alpha / aa;
        const cplx beta_s = -mu * sigma;
        const cplx beta = scale * beta_s;  // H maps the column to beta * e_{i-1}

        std::vector<cplx> u(i);
        for (std::size_t j = 0; j < i; ++j) u[j] = w(j, i) / scale;
        u[i - 1] -= beta_s;
        double un2 = 0.0;
        for (std::size_t j = 0; j < i; ++j) un2 += std::norm(u[j]);
        const double c = 2.0 / un2;

        std::vector<cplx> q(i, cplx(0.0, 0.0));
        for (std::size_t r = 0; r < i; ++r) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < i; ++l) s += w(r, l) * u[l];
            q[r] = s;
        }
        cplx kappa(0.0, 0.0);
        for (std::size_t j = 0; j < i; ++j) kappa += std::conj(u[j]) * q[j];
        // kappa = u* A u is real for Hermitian A; keep only that part.  The
        // rank-2 update is a similarity transform only while the block is
        // exactly Hermitian, and any asymmetry it leaks gets re-amplified by
        // later reflectors, so write one triangle and mirror it.
        const double c2k = c * c * kappa.real();
        for (std::size_t r = 0; r < i; ++r) {
            const cplx ur = u[r];
            const cplx qr = q[r];
            for (std::size_t l = 0; l < r; ++l) {
                w(r, l) += -c * (ur * std::conj(q[l]) + qr * std::conj(u[l])) +
                           c2k * ur * std::conj(u[l]);
                w(l, r) = std::conj(w(r, l));
            }
            w(r, r) = w(r, r).real() - 2.0 * c * (ur * std::conj(qr)).real() +
                      c2k * std::norm(ur);
        }
        for (std::size_t j = 0; j + 1 < i; ++j) {
            w(j, i) = 0.0;
            w(i, j) = 0.0;
        }
        w(i - 1, i) = beta;
        w(i, i - 1) = std::conj(beta);
        esub[i] = beta;
        refl.push_back({i, c, std::move(u)});
    }
    if (n >= 2) esub[1] = w(0, 1);

    std::vector<double> d(n), sub(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = w(j, j).real();

    // Diagonal phase unitary D making the subdiagonal real nonnegative:
    // (D* T D)[j-1][j] = |esub[j]|.
    std::vector<cplx> delta(n, cplx(1.0, 0.0));
    for (std::size_t j = 1; j < n; ++j) {
        const double m = std::abs(esub[j]);
        if (m == 0.0) {
            delta[j] = delta[j - 1];
            sub[j - 1] = 0.0;
        } else {
            delta[j] = delta[j - 1] * std::conj(esub[j]) / m;
            sub[j - 1] = m;
        }
    }

    CMatrix z(0, 0);
    if (want_vectors) {
        z = CMatrix::identity(n);
        // Accumulate Q = H_{n-1} ... H_2 by left-applying reflectors in
        // ascending block size, then fold in the phase columns.
        for (auto it = refl.rbegin(); it != refl.rend(); ++it) {
            const auto& h = *it;
            std::vector<cplx> v(n, cplx(0.0, 0.0));
            for (std::size_t col = 0; col < n; ++col) {
                cplx s(0.0, 0.0);
                for (std::size_t r = 0; r < h.len; ++r)
                    s += std::conj(h.u[r]) * z(r, col);
                v[col] = s;
            }
            for (std::size_t r = 0; r < h.len; ++r) {
                const cplx cu = h.c * h.u[r];
                for (std::size_t col = 0; col < n; ++col) z(r, col) -= cu * v[col];
            }
        }
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t r = 0; r < n; ++r) z(r, col) *= delta[col];
    }

    tridiag_ql(d, sub, want_vectors ? &z : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out.eigenvalues.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.eigenvalues[j] = d[order[j]];
    if (want_vectors) {
        out.vectors = CMatrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = z(r, order[j]);
    }
    return out;
}

std::vector<double> singular_values_raw(const CMatrix& t) {
    const std::size_t m = std::min(t.rows(), t.cols());
    if (m == 0) return {};
    // Use the smaller Gram matrix; its eigenvalues are the squared singular
    // values (plus zeros never reported beyond min(rows, cols)).
    CMatrix gram = (t.rows() <= t.cols())
                       ? normal_matrix(conj_transpose(t))
                       : normal_matrix(t);
    auto eig = hermitian_eig(gram, false);
    std::vector<double> sv(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double lam = eig.eigenvalues[m - 1 - i];
        sv[i] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return sv;
}

}  // namespace nct
