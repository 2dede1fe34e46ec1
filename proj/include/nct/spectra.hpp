#pragma once

#include <functional>
#include <vector>

#include "nct/algebra.hpp"
#include "nct/eigensolver.hpp"
#include "nct/lattice_basis.hpp"
#include "nct/operators.hpp"

namespace nct {

/// Matrix of left multiplication y -> x y compressed to the box basis:
/// entry(k', k) = x_{k'-k} * cocycle phase(k'-k, k).
GeneralOperator left_mult_matrix(const FourierElement& x, const LatticeBasis& basis);

/// Diagonal matrix of the Fourier multiplier k -> g(k) on the box basis.
GeneralOperator multiplier_matrix(const std::function<cplx(const LatticeVector&)>& g,
                                  const LatticeBasis& basis);

Spectrum hermitian_spectrum(const HermitianOperator& a, bool want_vectors = false);

/// Singular values, descending.  Values below 1e-8 times the largest one are
/// unreliable squares of rounding noise; they are reported as zero and counted,
/// with the floor recorded alongside.
SingularValues singular_values(const GeneralOperator& t);

/// Spectral calculus A -> f(A).  Throws std::domain_error naming the offending
/// eigenvalue when f is not finite there.
HermitianOperator spectral_function(const HermitianOperator& a,
                                    const std::function<double(double)>& f);

/**
 * Strict eigenvalue counts with a guard band: a count is boundary sensitive
 * when some eigenvalue lies within 1e-9 * max|eig| of the threshold, i.e. the
 * strict count could move under perturbations at working precision.
 */
struct CountResult {
    long long count = 0;
    bool boundary_sensitive = false;
    double guard = 0.0;
};

CountResult count_below(const std::vector<double>& eigenvalues, double threshold);
CountResult count_above(const std::vector<double>& eigenvalues, double threshold);
CountResult count_below(const HermitianOperator& a, double threshold);
CountResult count_above(const HermitianOperator& a, double threshold);

/**
 * Truncation series for normalized-trace functionals: estimates at up to three
 * box radii ending at K_tau, with the last-step relative change and a
 * polynomial extrapolation in h = 1/(2r+1) to h = 0.  `value` (the largest
 * radius estimate) is the primary output; `extrapolated` is a diagnostic that
 * removes the leading boundary effect of the compression.
 */
struct TraceDiagnostics {
    double value = 0.0;
    double rel_change = 0.0;
    bool converged = false;
    double extrapolated = 0.0;
    std::vector<int> radii;      // ascending
    std::vector<double> values;  // aligned with radii
};

/// Singular values of the box compressions of left multiplication by x,
/// computed once per radius and reusable across exponents.
class SingularSpectra {
  public:
    SingularSpectra(const FourierElement& x, int K_tau, int points = 3);

    /// Normalized Schatten power sum (1/dim) sum sigma_i^p per radius.
    TraceDiagnostics power_trace(double p, double tol) const;
    const std::vector<int>& radii() const { return radii_; }
    const std::vector<double>& values_at(std::size_t i) const { return svals_[i]; }

  private:
    std::vector<int> radii_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<double>> svals_;  // descending per radius
};

/// Eigenvalues of the Hermitian box compressions of left multiplication by a
/// self-adjoint x, one solve per radius, reusable across spectral functionals.
class CompressionSpectra {
  public:
    CompressionSpectra(const FourierElement& x, int K_tau, int points = 3);

    /// Normalized trace (1/dim) sum f(lambda_i) per radius.
    TraceDiagnostics trace_of(const std::function<double(double)>& f, double tol) const;
    const std::vector<int>& radii() const { return radii_; }
    const std::vector<double>& eigenvalues_at(std::size_t i) const { return eigs_[i]; }

  private:
    std::vector<int> radii_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<double>> eigs_;  // ascending per radius
};

/// Normalized Schatten p-trace of x estimated through box compressions.
TraceDiagnostics lp_trace(const FourierElement& x, double p, int K_tau, double tol);

struct PartTraceDiagnostics {
    TraceDiagnostics positive;  // normalized trace of (x_+)^q
    TraceDiagnostics negative;  // normalized trace of (x_-)^q
};

/// Traces of the q-th powers of the positive and negative parts of a
/// self-adjoint x (checked; throws otherwise), through box compressions.
PartTraceDiagnostics positive_negative_parts(const FourierElement& x, double q, int K_tau,
                                             double tol);

}  // namespace nct
