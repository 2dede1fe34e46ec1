#include "nct/lattice_basis.hpp"

#include <stdexcept>

namespace nct {

LatticeBasis::LatticeBasis(int n, int K) : n_(n), K_(K) {
    if (n < 1) throw std::invalid_argument("LatticeBasis: dimension must be >= 1");
    if (K < 0) throw std::invalid_argument("LatticeBasis: K must be >= 0");
    const LatticeVector zero(static_cast<std::size_t>(n), 0);
    points_.push_back(zero);
    LatticeVector k(static_cast<std::size_t>(n), -K);
    while (true) {
        if (k != zero) points_.push_back(k);
        int axis = n - 1;
        while (axis >= 0 && k[static_cast<std::size_t>(axis)] == K) {
            k[static_cast<std::size_t>(axis)] = -K;
            --axis;
        }
        if (axis < 0) break;
        ++k[static_cast<std::size_t>(axis)];
    }
    for (std::size_t i = 0; i < points_.size(); ++i) index_[points_[i]] = i;
}

std::optional<std::size_t> LatticeBasis::index_of(const LatticeVector& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

}  // namespace nct
