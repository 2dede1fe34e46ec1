#include "nct/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace nct::constants {

double c_plus(double p) {
    if (!(p > 2.0)) throw std::domain_error("c_plus: requires p > 2");
    return std::sqrt(130.0 * p / (p - 2.0));
}

double c_minus(double p) {
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("c_minus: requires 0 < p < 2");
    return std::pow(2.0, 1.0 / p) * std::pow(2.0 - p, -1.0 / p);
}

double c_two(double p) {
    if (!(p > 2.0)) throw std::domain_error("c_two: requires p > 2");
    return std::pow(2.0, -1.0 / p) * std::pow(p, -0.5) * std::pow(p - 2.0, 1.0 / p - 0.5) * c_plus(p);
}

double gamma_holder(double p, double q) {
    if (!(p > 0.0 && q > 0.0)) throw std::domain_error("gamma_holder: requires p, q > 0");
    return std::pow(p, -1.0 / q) * std::pow(q, -1.0 / p) * std::pow(p + q, 1.0 / p + 1.0 / q);
}

double lt_bound(double p, double gamma, int n, double nu0) {
    if (!(p > 1.0)) throw std::domain_error("lt_bound: requires p > 1");
    if (!(gamma > 0.0)) throw std::domain_error("lt_bound: requires gamma > 0");
    if (n < 1) throw std::domain_error("lt_bound: requires n >= 1");
    if (!(nu0 > 0.0)) throw std::domain_error("lt_bound: requires nu0 > 0");
    const double beta = std::exp(std::lgamma(p + 1.0) + std::lgamma(gamma) - std::lgamma(p + gamma + 1.0));
    return gamma * beta * std::pow(c_plus(2.0 * p), 2.0 * p) * nu0;
}

double sobolev_K_from_L(int n, double L) {
    if (n < 1) throw std::domain_error("sobolev_K_from_L: requires n >= 1");
    if (!(L > 0.0)) throw std::domain_error("sobolev_K_from_L: requires L > 0");
    const double nn = static_cast<double>(n);
    return nn / (nn + 2.0) * std::pow((nn + 2.0) * L / 2.0, -2.0 / nn);
}

const char* sobolev_exponent_note() {
    return "constant uses K_n = n/(n+2)*((n+2)L/2)^(-2/n); the alternative -n/2 "
           "exponent display is inconsistent with the derivation chain and not used";
}

double clr_constant(double p, double q) {
    if (!(p > 0.0)) throw std::domain_error("clr_constant: requires p > 0");
    if (p > 1.0) {
        if (q != p) throw std::domain_error("clr_constant: regime p > 1 requires q = p");
        return std::pow(c_plus(2.0 * p), 2.0 * p);
    }
    if (p == 1.0) {
        if (!(q > 1.0)) throw std::domain_error("clr_constant: regime p = 1 requires q > 1");
        const double c = c_two(2.0 * q);
        return c * c;
    }
    if (q != 1.0) throw std::domain_error("clr_constant: regime p < 1 requires q = 1");
    return std::pow(c_minus(2.0 * p), 2.0 * p);
}

double sandwich_constant_sq(double p, double q) {
    if (!(p > 0.0)) throw std::domain_error("sandwich_constant_sq: requires p > 0");
    if (p > 1.0) {
        if (q != p) throw std::domain_error("sandwich_constant_sq: regime p > 1 requires q = p");
        const double c = c_plus(2.0 * p);
        return c * c;
    }
    if (p == 1.0) {
        if (!(q > 1.0)) throw std::domain_error("sandwich_constant_sq: regime p = 1 requires q > 1");
        const double c = c_two(2.0 * q);
        return c * c;
    }
    if (q != 1.0) throw std::domain_error("sandwich_constant_sq: regime p < 1 requires q = 1");
    const double c = c_minus(2.0 * p);
    return c * c;
}

}  // namespace nct::constants
