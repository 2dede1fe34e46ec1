#include "nct/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nct {

DecreasingSequence::DecreasingSequence(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!(values_[j] >= 0.0)) throw std::invalid_argument("DecreasingSequence: negative or non-finite entry");
        if (j > 0 && values_[j] > values_[j - 1]) throw std::invalid_argument("DecreasingSequence: not nonincreasing");
    }
}

double DecreasingSequence::total() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

DecreasingSequence decreasing_rearrangement(const std::vector<double>& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (double x : a) v.push_back(std::abs(x));
    std::sort(v.begin(), v.end(), std::greater<double>());
    return DecreasingSequence(std::move(v));
}

DecreasingSequence decreasing_rearrangement(const std::vector<std::complex<double>>& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (const auto& x : a) v.push_back(std::abs(x));
    std::sort(v.begin(), v.end(), std::greater<double>());
    return DecreasingSequence(std::move(v));
}

double weak_quasinorm(const DecreasingSequence& a, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("weak_quasinorm: p must be positive");
    const double inv_p = 1.0 / p;
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::pow(static_cast<double>(j + 1), inv_p) * a[j]);
    return m;
}

double primed_norm(const DecreasingSequence& a, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("primed_norm: requires p > 1");
    const double e = -1.0 + 1.0 / p;
    double m = 0.0, partial = 0.0;
    for (std::size_t n = 1; n <= a.size(); ++n) {
        partial += a[n - 1];
        m = std::max(m, std::pow(static_cast<double>(n), e) * partial);
    }
    return m;
}

double schatten_norm(const DecreasingSequence& a, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
    double s = 0.0;
    for (double v : a.values()) s += std::pow(v, p);
    return std::pow(s, 1.0 / p);
}

MajorizationWitness submajorizes(const DecreasingSequence& b, const DecreasingSequence& a, double tol) {
    MajorizationWitness w;
    const std::size_t len = std::max(a.size(), b.size());
    double pa = 0.0, pb = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < len; ++n) {
        pa += n < a.size() ? a[n] : 0.0;
        pb += n < b.size() ? b[n] : 0.0;
        const double deficit = pa - pb;
        if (deficit > worst) {
            worst = deficit;
            w.worst_n = n;
        }
    }
    if (len == 0) worst = 0.0;
    w.deficit = worst;
    w.total_gap = std::abs(pa - pb);
    w.holds = worst <= tol;
    return w;
}

MajorizationWitness majorizes(const DecreasingSequence& b, const DecreasingSequence& a, double tol) {
    MajorizationWitness w = submajorizes(b, a, tol);
    w.holds = w.holds && w.total_gap <= tol;
    return w;
}

}  // namespace nct
