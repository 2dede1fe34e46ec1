#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nct/algebra.hpp"

namespace nct {

/**
 * Ordered enumeration of the lattice box {k in Z^n : |k|_inf <= K} used to
 * index matrix truncations.  Index 0 is k = 0; the remaining points follow in
 * lexicographic order, so enlarging K never permutes existing indices of the
 * zero mode and compressions are taken by principal submatrices of a fixed
 * ordering convention.
 */
class LatticeBasis {
  public:
    LatticeBasis(int n, int K);

    int n() const { return n_; }
    int K() const { return K_; }
    std::size_t size() const { return points_.size(); }
    const LatticeVector& point(std::size_t i) const { return points_[i]; }
    std::optional<std::size_t> index_of(const LatticeVector& k) const;

  private:
    int n_;
    int K_;
    std::vector<LatticeVector> points_;
    std::map<LatticeVector, std::size_t> index_;
};

}  // namespace nct
