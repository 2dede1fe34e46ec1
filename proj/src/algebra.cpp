#include "nct/algebra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nct {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_dim(const LatticeVector& k, int n, const char* what) {
    if (static_cast<int>(k.size()) != n) throw std::invalid_argument(std::string(what) + ": lattice vector dimension mismatch");
}
}  // namespace

int sup_norm(const LatticeVector& k) {
    int m = 0;
    for (int v : k) m = std::max(m, std::abs(v));
    return m;
}

long long euclidean_sq(const LatticeVector& k) {
    long long s = 0;
    for (int v : k) s += static_cast<long long>(v) * v;
    return s;
}

ThetaMatrix::ThetaMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) throw std::invalid_argument("ThetaMatrix: dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(n_) * n_) throw std::invalid_argument("ThetaMatrix: entry count != n*n");
    for (int j = 0; j < n_; ++j) {
        if (at(j, j) != 0.0) throw std::invalid_argument("ThetaMatrix: diagonal must be zero");
        for (int l = j + 1; l < n_; ++l)
            if (at(j, l) != -at(l, j)) throw std::invalid_argument("ThetaMatrix: not antisymmetric");
    }
}

ThetaMatrix ThetaMatrix::zero(int n) { return ThetaMatrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)); }

ThetaMatrix ThetaMatrix::two_d(double t) {
    std::vector<double> e(4, 0.0);
    e[0 * 2 + 1] = t;
    e[1 * 2 + 0] = -t;
    return ThetaMatrix(2, std::move(e));
}

PhaseAngle PhaseAngle::normalized(double radians) {
    double v = std::fmod(radians, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    if (v >= kTwoPi) v = 0.0;  // fmod rounding can land exactly on 2*pi
    return PhaseAngle{v};
}

double phase_cocycle_raw(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta) {
    const int n = theta.dim();
    check_dim(k, n, "phase_cocycle");
    check_dim(m, n, "phase_cocycle");
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        if (m[j] == 0) continue;
        for (int l = j + 1; l < n; ++l) s += theta.at(j, l) * k[l] * m[j];
    }
    return kTwoPi * s;
}

PhaseAngle phase_cocycle(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta) {
    return PhaseAngle::normalized(phase_cocycle_raw(k, m, theta));
}

cplx cis_cocycle(const LatticeVector& k, const LatticeVector& m, const ThetaMatrix& theta) {
    return std::polar(1.0, phase_cocycle_raw(k, m, theta));
}

FourierElement::FourierElement(ThetaMatrix theta) : theta_(std::move(theta)) {}

FourierElement FourierElement::unit(const ThetaMatrix& theta) {
    return mode(theta, LatticeVector(static_cast<std::size_t>(theta.dim()), 0), 1.0);
}

FourierElement FourierElement::mode(const ThetaMatrix& theta, const LatticeVector& k, cplx c) {
    FourierElement x(theta);
    check_dim(k, theta.dim(), "FourierElement::mode");
    x.set_coeff(k, c);
    return x;
}

cplx FourierElement::coeff(const LatticeVector& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? cplx{} : it->second;
}

void FourierElement::set_coeff(const LatticeVector& k, cplx c) {
    check_dim(k, theta_.dim(), "FourierElement::set_coeff");
    if (c == cplx{})
        coeffs_.erase(k);
    else
        coeffs_[k] = c;
}

void FourierElement::add_coeff(const LatticeVector& k, cplx c) { set_coeff(k, coeff(k) + c); }

int FourierElement::support_radius() const {
    int r = 0;
    for (const auto& [k, c] : coeffs_) r = std::max(r, sup_norm(k));
    return r;
}

FourierElement mul(const FourierElement& x, const FourierElement& y) {
    if (x.theta() != y.theta()) throw std::invalid_argument("mul: theta mismatch");
    const int n = x.dim();
    FourierElement out(x.theta());
    LatticeVector p(static_cast<std::size_t>(n));
    for (const auto& [k, xk] : x.coeffs())
        for (const auto& [m, ym] : y.coeffs()) {
            for (int j = 0; j < n; ++j) p[j] = k[j] + m[j];
            out.add_coeff(p, xk * ym * cis_cocycle(k, m, x.theta()));
        }
    return out;
}

FourierElement adjoint(const FourierElement& x) {
    const int n = x.dim();
    FourierElement out(x.theta());
    LatticeVector m(static_cast<std::size_t>(n));
    for (const auto& [k, xk] : x.coeffs()) {
        for (int j = 0; j < n; ++j) m[j] = -k[j];
        // (x*)_{-k} = conj(x_k) e^{-i phi(k, -k)}
        out.set_coeff(m, std::conj(xk) * std::polar(1.0, -phase_cocycle_raw(k, m, x.theta())));
    }
    return out;
}

cplx trace(const FourierElement& x) { return x.coeff(LatticeVector(static_cast<std::size_t>(x.dim()), 0)); }

FourierElement derivation(int axis, const FourierElement& x) {
    if (axis < 1 || axis > x.dim()) throw std::out_of_range("derivation: axis out of range");
    FourierElement out(x.theta());
    for (const auto& [k, xk] : x.coeffs()) out.set_coeff(k, cplx(0.0, 1.0) * static_cast<double>(k[axis - 1]) * xk);
    return out;
}

double gradient_energy(const FourierElement& u) {
    double s = 0.0;
    for (const auto& [k, c] : u.coeffs()) s += static_cast<double>(euclidean_sq(k)) * std::norm(c);
    return s;
}

double sobolev_norm(const FourierElement& u, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be nonnegative");
    double acc = 0.0;
    for (const auto& [k, c] : u.coeffs()) acc += std::pow(1.0 + static_cast<double>(euclidean_sq(k)), s) * std::norm(c);
    return std::sqrt(acc);
}

double hatlp_norm(const FourierElement& x, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& [k, c] : x.coeffs()) m = std::max(m, std::abs(c));
        return m;
    }
    if (p <= 0.0) throw std::invalid_argument("hatlp_norm: p must be positive");
    double s = 0.0;
    for (const auto& [k, c] : x.coeffs()) s += std::pow(std::abs(c), p);
    return std::pow(s, 1.0 / p);
}

cplx inner(const FourierElement& u, const FourierElement& v) {
    // tau(u v*) collapses to the Parseval sum because {U^k} is orthonormal.
    const auto& a = u.coeffs();
    const auto& b = v.coeffs();
    cplx s{};
    if (a.size() <= b.size()) {
        for (const auto& [k, c] : a) {
            auto it = b.find(k);
            if (it != b.end()) s += c * std::conj(it->second);
        }
    } else {
        for (const auto& [k, c] : b) {
            auto it = a.find(k);
            if (it != a.end()) s += it->second * std::conj(c);
        }
    }
    return s;
}

FourierElement add(const FourierElement& x, const FourierElement& y) {
    if (x.theta() != y.theta()) throw std::invalid_argument("add: theta mismatch");
    FourierElement out = x;
    for (const auto& [k, c] : y.coeffs()) out.add_coeff(k, c);
    return out;
}

FourierElement sub(const FourierElement& x, const FourierElement& y) {
    if (x.theta() != y.theta()) throw std::invalid_argument("sub: theta mismatch");
    FourierElement out = x;
    for (const auto& [k, c] : y.coeffs()) out.add_coeff(k, -c);
    return out;
}

FourierElement scale(const FourierElement& x, cplx s) {
    FourierElement out(x.theta());
    for (const auto& [k, c] : x.coeffs()) out.set_coeff(k, s * c);
    return out;
}

bool approx_equal(const FourierElement& x, const FourierElement& y, double tol) {
    if (x.theta() != y.theta()) return false;
    for (const auto& [k, c] : x.coeffs())
        if (std::abs(c - y.coeff(k)) > tol) return false;
    for (const auto& [k, c] : y.coeffs())
        if (std::abs(c - x.coeff(k)) > tol) return false;
    return true;
}

double l1_distance(const FourierElement& x, const FourierElement& y) {
    double s = 0.0;
    for (const auto& [k, c] : x.coeffs()) s += std::abs(c - y.coeff(k));
    for (const auto& [k, c] : y.coeffs())
        if (x.coeffs().find(k) == x.coeffs().end()) s += std::abs(c);
    return s;
}

}  // namespace nct
