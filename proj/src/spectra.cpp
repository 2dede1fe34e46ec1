#include "nct/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nct {

namespace {

double max_abs_eig(const std::vector<double>& eigenvalues) {
    double m = 0.0;
    for (double v : eigenvalues) m = std::max(m, std::abs(v));
    return m;
}

// Polynomial interpolation through (h_i, v_i) evaluated at h = 0 (Neville).
double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v) {
    std::vector<double> p = v;
    const std::size_t m = v.size();
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = 0; i + level < m; ++i)
            p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
    return p.empty() ? 0.0 : p[0];
}

std::vector<int> truncation_radii(const FourierElement& x, int K_tau, int points) {
    if (K_tau < 1) throw std::invalid_argument("trace estimate: K_tau must be >= 1");
    const int rmin = std::max(1, x.support_radius());
    if (K_tau < rmin)
        throw std::invalid_argument(
            "trace estimate: K_tau smaller than the support radius of x");
    std::vector<int> radii;
    for (int r = std::max(rmin, K_tau - (points - 1)); r <= K_tau; ++r) radii.push_back(r);
    return radii;
}

TraceDiagnostics assemble(const std::vector<int>& radii, const std::vector<double>& values,
                          double tol) {
    TraceDiagnostics diag;
    diag.radii = radii;
    diag.values = values;
    diag.value = values.back();
    std::vector<double> h;
    for (int r : radii) h.push_back(1.0 / (2.0 * r + 1.0));
    diag.extrapolated = values.size() >= 2 ? extrapolate_to_zero(h, values) : values.back();
    if (values.size() >= 2) {
        const double prev = values[values.size() - 2];
        const double scale = std::max(std::abs(diag.value), 1e-300);
        diag.rel_change = std::abs(diag.value - prev) / scale;
        diag.converged = diag.rel_change < tol;
    } else {
        diag.rel_change = std::numeric_limits<double>::quiet_NaN();
        diag.converged = false;
    }
    return diag;
}

}  // namespace

GeneralOperator left_mult_matrix(const FourierElement& x, const LatticeBasis& basis) {
    if (basis.n() != x.theta().dim())
        throw std::invalid_argument("left_mult_matrix: basis dimension mismatch");
    const std::size_t dim = basis.size();
    const int n = basis.n();
    CMatrix m(dim, dim);
    LatticeVector diff(static_cast<std::size_t>(n), 0);
    for (std::size_t row = 0; row < dim; ++row) {
        const LatticeVector& kp = basis.point(row);
        for (std::size_t col = 0; col < dim; ++col) {
            const LatticeVector& k = basis.point(col);
            for (int j = 0; j < n; ++j)
                diff[static_cast<std::size_t>(j)] =
                    kp[static_cast<std::size_t>(j)] - k[static_cast<std::size_t>(j)];
            const cplx c = x.coeff(diff);
            if (c == cplx(0.0, 0.0)) continue;
            m(row, col) = c * cis_cocycle(diff, k, x.theta());
        }
    }
    return {basis, std::move(m)};
}

GeneralOperator multiplier_matrix(const std::function<cplx(const LatticeVector&)>& g,
                                  const LatticeBasis& basis) {
    const std::size_t dim = basis.size();
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = g(basis.point(i));
    return {basis, std::move(m)};
}

Spectrum hermitian_spectrum(const HermitianOperator& a, bool want_vectors) {
    auto eig = hermitian_eig(a.entries, want_vectors);
    Spectrum s;
    s.eigenvalues = std::move(eig.eigenvalues);
    if (want_vectors) s.vectors = std::move(eig.vectors);
    return s;
}

SingularValues singular_values(const GeneralOperator& t) {
    auto raw = singular_values_raw(t.entries);
    SingularValues out;
    out.floor = raw.empty() ? 0.0 : 1e-8 * raw.front();
    for (double& v : raw) {
        if (v < out.floor) {
            v = 0.0;
            ++out.clamped;
        }
    }
    out.values = DecreasingSequence(std::move(raw));
    return out;
}

HermitianOperator spectral_function(const HermitianOperator& a,
                                    const std::function<double(double)>& f) {
    auto spec = hermitian_spectrum(a, true);
    const std::size_t dim = spec.eigenvalues.size();
    std::vector<double> fv(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        fv[i] = f(spec.eigenvalues[i]);
        if (!std::isfinite(fv[i])) {
            std::ostringstream msg;
            msg << "spectral_function: f is not finite at eigenvalue "
                << spec.eigenvalues[i];
            throw std::domain_error(msg.str());
        }
    }
    const CMatrix& v = *spec.vectors;
    CMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < dim; ++l)
                s += fv[l] * v(i, l) * std::conj(v(j, l));
            b(i, j) = s;
        }
    return {a.basis, std::move(b)};
}

CountResult count_below(const std::vector<double>& eigenvalues, double threshold) {
    CountResult r;
    r.guard = 1e-9 * max_abs_eig(eigenvalues);
    for (double v : eigenvalues) {
        if (v < threshold) ++r.count;
        if (std::abs(v - threshold) <= r.guard) r.boundary_sensitive = true;
    }
    return r;
}

CountResult count_above(const std::vector<double>& eigenvalues, double threshold) {
    CountResult r;
    r.guard = 1e-9 * max_abs_eig(eigenvalues);
    for (double v : eigenvalues) {
        if (v > threshold) ++r.count;
        if (std::abs(v - threshold) <= r.guard) r.boundary_sensitive = true;
    }
    return r;
}

CountResult count_below(const HermitianOperator& a, double threshold) {
    return count_below(hermitian_spectrum(a).eigenvalues, threshold);
}

CountResult count_above(const HermitianOperator& a, double threshold) {
    return count_above(hermitian_spectrum(a).eigenvalues, threshold);
}

SingularSpectra::SingularSpectra(const FourierElement& x, int K_tau, int points) {
    radii_ = truncation_radii(x, K_tau, points);
    for (int r : radii_) {
        LatticeBasis basis(x.theta().dim(), r);
        auto op = left_mult_matrix(x, basis);
        dims_.push_back(basis.size());
        svals_.push_back(singular_values_raw(op.entries));
    }
}

TraceDiagnostics SingularSpectra::power_trace(double p, double tol) const {
    if (!(p > 0.0)) throw std::invalid_argument("power_trace: p must be positive");
    std::vector<double> values;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        double s = 0.0;
        for (double sv : svals_[i])
            if (sv > 0.0) s += std::pow(sv, p);
        values.push_back(s / static_cast<double>(dims_[i]));
    }
    return assemble(radii_, values, tol);
}

CompressionSpectra::CompressionSpectra(const FourierElement& x, int K_tau, int points) {
    const double scale = std::max(hatlp_norm(x, 1.0), 1e-300);
    if (l1_distance(x, adjoint(x)) > 1e-12 * scale)
        throw std::invalid_argument("CompressionSpectra: x must be self-adjoint");
    radii_ = truncation_radii(x, K_tau, points);
    for (int r : radii_) {
        LatticeBasis basis(x.theta().dim(), r);
        auto op = left_mult_matrix(x, basis);
        HermitianOperator h(basis, std::move(op.entries));
        dims_.push_back(basis.size());
        eigs_.push_back(hermitian_spectrum(h).eigenvalues);
    }
}

TraceDiagnostics CompressionSpectra::trace_of(const std::function<double(double)>& f,
                                              double tol) const {
    std::vector<double> values;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        double s = 0.0;
        for (double lam : eigs_[i]) s += f(lam);
        values.push_back(s / static_cast<double>(dims_[i]));
    }
    return assemble(radii_, values, tol);
}

TraceDiagnostics lp_trace(const FourierElement& x, double p, int K_tau, double tol) {
    SingularSpectra spectra(x, K_tau);
    return spectra.power_trace(p, tol);
}

PartTraceDiagnostics positive_negative_parts(const FourierElement& x, double q, int K_tau,
                                             double tol) {
    if (!(q > 0.0))
        throw std::invalid_argument("positive_negative_parts: q must be positive");
    CompressionSpectra spectra(x, K_tau);
    PartTraceDiagnostics out;
    out.positive = spectra.trace_of(
        [q](double lam) { return lam > 0.0 ? std::pow(lam, q) : 0.0; }, tol);
    out.negative = spectra.trace_of(
        [q](double lam) { return lam < 0.0 ? std::pow(-lam, q) : 0.0; }, tol);
    return out;
}

}  // namespace nct
