#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nct {

/**
 * Finite nonincreasing nonnegative sequence — the decreasing rearrangement
 * mu(a) of a modulus sequence, or the singular-value sequence mu(T).
 */
class DecreasingSequence {
  public:
    DecreasingSequence() = default;
    /// values must already be sorted nonincreasing and nonnegative.
    explicit DecreasingSequence(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    double total() const;

  private:
    std::vector<double> values_;
};

DecreasingSequence decreasing_rearrangement(const std::vector<double>& a);
DecreasingSequence decreasing_rearrangement(const std::vector<std::complex<double>>& a);

/// sup_j (j+1)^{1/p} a_j  (j zero-based), the weak quasi-norm.
double weak_quasinorm(const DecreasingSequence& a, double p);

/// sup_{N>=1} N^{-1+1/p} sum_{j<N} a_j; sandwiched between the weak
/// quasi-norm and p/(p-1) times it.  Requires p > 1.
double primed_norm(const DecreasingSequence& a, double p);

/// (sum_j a_j^p)^{1/p}.
double schatten_norm(const DecreasingSequence& a, double p);

/**
 * Witness for (sub)majorization checks.  For submajorizes(b, a): holds iff
 * every partial sum of a is <= the matching partial sum of b up to tol;
 * deficit is the worst value of sum_{j<=N} a_j - sum_{j<=N} b_j and worst_n
 * the N attaining it.  majorizes(b, a) additionally requires the totals to
 * agree up to tol (total_gap = |sum a - sum b|).
 */
struct MajorizationWitness {
    bool holds = false;
    std::size_t worst_n = 0;
    double deficit = 0.0;
    double total_gap = 0.0;
};

/// Hardy-Littlewood-Polya submajorization a <<~ b (partial-sum domination only).
MajorizationWitness submajorizes(const DecreasingSequence& b, const DecreasingSequence& a, double tol);

/// Majorization a <~ b: submajorization plus equal totals within tol.
MajorizationWitness majorizes(const DecreasingSequence& b, const DecreasingSequence& a, double tol);

}  // namespace nct
