#include "nct/generators.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace nct {

ThetaMatrix random_theta(Rng& rng, int n) {
    if (n < 1) throw std::invalid_argument("random_theta: dimension must be positive");
    std::vector<double> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
            const double t = rng.uniform();
            e[static_cast<std::size_t>(j) * n + l] = t;
            e[static_cast<std::size_t>(l) * n + j] = -t;
        }
    return ThetaMatrix(n, std::move(e));
}

FourierElement random_element(Rng& rng, const ThetaMatrix& theta, int radius, int terms) {
    FourierElement x(theta);
    const int n = theta.dim();
    for (int t = 0; t < terms; ++t) {
        LatticeVector k(static_cast<std::size_t>(n));
        for (auto& kj : k) kj = rng.integer(-radius, radius);
        x.add_coeff(k, rng.cnormal());
    }
    return x;
}

Symbol random_symbol(Rng& rng, int n, int radius, int terms) {
    Symbol g;
    for (int t = 0; t < terms; ++t) {
        LatticeVector k(static_cast<std::size_t>(n));
        for (auto& kj : k) kj = rng.integer(-radius, radius);
        g[k] = rng.cnormal();
    }
    if (g.empty()) g[LatticeVector(static_cast<std::size_t>(n), 0)] = 1.0;
    return g;
}

namespace {

FourierElement unit_norm_element(Rng& rng, const ThetaMatrix& theta, int radius, int terms) {
    for (;;) {
        FourierElement y = random_element(rng, theta, radius, terms);
        const double nrm = std::sqrt(inner(y, y).real());
        // coinciding modes can cancel; redraw instead of dividing by ~0
        if (nrm > 1e-8) return scale(y, 1.0 / nrm);
    }
}

}  // namespace

FourierElement squared_well(Rng& rng, const ThetaMatrix& theta, int radius, int terms) {
    const FourierElement y = random_element(rng, theta, radius, terms);
    return scale(mul(adjoint(y), y), -1.0);
}

FourierElement scalar_dominant_well(Rng& rng, const ThetaMatrix& theta, int radius, int terms,
                                    double c0_lo, double c0_hi, double s) {
    const double c0 = rng.uniform(c0_lo, c0_hi);
    const FourierElement y = unit_norm_element(rng, theta, radius, terms);
    FourierElement v = scale(mul(adjoint(y), y), -s * s);
    return sub(v, scale(FourierElement::unit(theta), c0));
}

FourierElement one_frequency_element(Rng& rng, const ThetaMatrix& theta, double c0_lo,
                                     double c0_hi, double s) {
    const double b = s / std::sqrt(2.0);
    if (!(c0_lo > 2.0 * b))
        throw std::invalid_argument("one_frequency_element: c0_lo must exceed s sqrt(2)");
    const double c0 = rng.uniform(c0_lo, c0_hi);
    const int dir = rng.integer(0, theta.dim() - 1);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    LatticeVector e(static_cast<std::size_t>(theta.dim()), 0);
    e[static_cast<std::size_t>(dir)] = 1;
    LatticeVector me = e;
    me[static_cast<std::size_t>(dir)] = -1;
    FourierElement x = scale(FourierElement::unit(theta), c0);
    x.add_coeff(e, b * std::polar(1.0, phi));
    x.add_coeff(me, b * std::polar(1.0, -phi));
    return x;
}

Symbol separated_symbol(Rng& rng, int n, int modes, int spacing) {
    double room = 1.0;
    for (int j = 0; j < n; ++j) room *= 3.0;
    if (modes < 1 || static_cast<double>(modes) > room)
        throw std::invalid_argument("separated_symbol: more modes than grid points");
    std::set<LatticeVector> seen;
    Symbol g;
    while (g.size() < static_cast<std::size_t>(modes)) {
        LatticeVector k(static_cast<std::size_t>(n));
        for (auto& kj : k) kj = spacing * rng.integer(-1, 1);
        if (!seen.insert(k).second) continue;
        g[k] = rng.cnormal();
    }
    return g;
}

std::vector<FourierElement> mode_family(Rng& rng, const ThetaMatrix& theta, int size, int radius) {
    const int n = theta.dim();
    double room = 1.0;
    for (int j = 0; j < n; ++j) room *= 2.0 * radius + 1.0;
    if (size < 1 || static_cast<double>(size) > room - 1.0)
        throw std::invalid_argument("mode_family: size exceeds the nonzero modes in the box");
    std::set<LatticeVector> seen;
    std::vector<FourierElement> family;
    while (family.size() < static_cast<std::size_t>(size)) {
        LatticeVector k(static_cast<std::size_t>(n));
        bool zero = true;
        for (auto& kj : k) {
            kj = rng.integer(-radius, radius);
            zero = zero && kj == 0;
        }
        if (zero || !seen.insert(k).second) continue;
        family.push_back(FourierElement::mode(theta, k));
    }
    return family;
}

std::vector<FourierElement> gram_schmidt_family(Rng& rng, const ThetaMatrix& theta, int size,
                                                int radius, int terms) {
    if (size < 1) throw std::invalid_argument("gram_schmidt_family: size must be positive");
    const LatticeVector origin(static_cast<std::size_t>(theta.dim()), 0);
    std::vector<FourierElement> out;
    while (out.size() < static_cast<std::size_t>(size)) {
        FourierElement v = random_element(rng, theta, radius, terms);
        v.set_coeff(origin, 0.0);
        for (int pass = 0; pass < 2; ++pass)
            for (const FourierElement& u : out) v = sub(v, scale(u, inner(v, u)));
        const double nrm = std::sqrt(inner(v, v).real());
        if (nrm <= 1e-8) continue;  // degenerate draw, try the next one
        out.push_back(scale(v, 1.0 / nrm));
    }
    return out;
}

}  // namespace nct
