#pragma once

#include <complex>
#include <map>
#include <vector>

namespace nct {

using cplx = std::complex<double>;

/// Lattice index k of a twisted Fourier mode U^k, one integer per axis.
using LatticeVector = std::vector<int>;

/// Box norm |k|_inf — used for truncation radii, never for spectral symbols.
int sup_norm(const LatticeVector& k);

/// Squared Euclidean norm |k|_2^2 — used for spectral symbols, never for boxes.
long long euclidean_sq(const LatticeVector& k);

/**
 * Real antisymmetric n x n deformation parameter of the quantum torus.
 * The generators obey U_l U_j = e^{2 i pi theta_{jl}} U_j U_l.
 */
class ThetaMatrix {
  public:
    /// entries is row-major n x n; must be antisymmetric with zero diagonal.
    ThetaMatrix(int n, std::vector<double> entries);

    static ThetaMatrix zero(int n);
    /// n = 2 with the single parameter theta_{12} = t (so theta_{21} = -t).
    static ThetaMatrix two_d(double t);

    int dim() const { return n_; }
    double at(int j, int l) const { return entries_[static_cast<std::size_t>(j) * n_ + l]; }  // 0-based

    bool operator==(const ThetaMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }
    bool operator!=(const ThetaMatrix& o) const { return !(*this == o); }

  private:
    int n_;
    std::vector<double> entries_;
};

/// Angle in radians normalized into [0, 2*pi).
struct PhaseAngle {
    double value = 0.0;
    static PhaseAngle normalized(double radians);
};

/**
 * Unreduced cocycle angle phi(k, m) with U^k U^m = e^{i phi(k,m)} U^{k+m},
 * where U^k := U_1^{k_1} ... U_n^{k_n}.  Normal-ordering the product gives
 * phi(k, m) = 2*pi * sum_{j<l} theta_{jl} k_l m_j.  The un-reduced value is
 * what feeds e^{i phi}; reduction mod 2*pi is done only for reporting.
 */
double phase_cocycle_raw(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta);

/// phi(k, m) reduced into [0, 2*pi).
PhaseAngle phase_cocycle(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta);

/// e^{i phi(k,m)} computed from the unreduced angle.
cplx cis_cocycle(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta);

/**
 * Finitely supported twisted Fourier series x = sum_k x_k U^k over T^n_theta.
 * Coefficients are stored canonically: exact zeros are dropped, and the map
 * ordering (lexicographic on k) makes iteration deterministic.
 */
class FourierElement {
  public:
    explicit FourierElement(ThetaMatrix theta);

    /// The unit 1 = U^0.
    static FourierElement unit(const ThetaMatrix& theta);
    /// c * U^k.
    static FourierElement mode(const ThetaMatrix& theta, const LatticeVector& k, cplx c = 1.0);

    const ThetaMatrix& theta() const { return theta_; }
    int dim() const { return theta_.dim(); }

    const std::map<LatticeVector, cplx>& coeffs() const { return coeffs_; }
    cplx coeff(const LatticeVector& k) const;
    /// Stores c at k; exact zero deletes the entry (canonical form).
    void set_coeff(const LatticeVector& k, cplx c);
    void add_coeff(const LatticeVector& k, cplx c);

    std::size_t support_size() const { return coeffs_.size(); }
    /// max |k|_inf over the support; 0 for the zero element.
    int support_radius() const;

  private:
    ThetaMatrix theta_;
    std::map<LatticeVector, cplx> coeffs_;
};

/// Twisted product: (xy)_p = sum_{k+m=p} x_k y_m e^{i phi(k,m)}.
FourierElement mul(const FourierElement& x, const FourierElement& y);

/// Involution: (x*)_m = conj(x_{-m}) e^{-i phi(-m, m)}; (U^k)* = (U^k)^{-1}.
FourierElement adjoint(const FourierElement& x);

/// Normalized trace tau(x) = x_0.
cplx trace(const FourierElement& x);

/// Derivation along axis j (1-based): coefficients become i * k_j * x_k.
FourierElement derivation(int axis, const FourierElement& x);

/// tau[|grad u|^2] = sum_k |k|_2^2 |u_k|^2.
double gradient_energy(const FourierElement& u);

/// Sobolev norm (sum_k (1+|k|_2^2)^s |u_k|^2)^{1/2}, s >= 0.
double sobolev_norm(const FourierElement& u, double s);

/// l_p (quasi-)norm of the coefficient sequence; p = infinity gives max modulus.
double hatlp_norm(const FourierElement& x, double p);

/// GNS inner product <u, v> = tau(u v*) = sum_k u_k conj(v_k), antilinear in v.
cplx inner(const FourierElement& u, const FourierElement& v);

FourierElement add(const FourierElement& x, const FourierElement& y);
FourierElement sub(const FourierElement& x, const FourierElement& y);
FourierElement scale(const FourierElement& x, cplx s);

/// Coefficient-wise comparison with absolute tolerance.
bool approx_equal(const FourierElement& x, const FourierElement& y, double tol = 1e-14);

/// ||x - y|| in the l1 coefficient norm (convenient for associativity checks).
double l1_distance(const FourierElement& x, const FourierElement& y);

}  // namespace nct
