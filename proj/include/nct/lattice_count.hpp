#pragma once

#include <vector>

namespace nct {

/**
 * Step profile of the counting function N0(lambda) = #{k in Z^n \ 0 : |k|^2 <= lambda}:
 * the distinct squared norms ("jumps") up to lambda_max with cumulative counts.
 */
struct LatticeCountProfile {
    int n = 0;
    double lambda_max = 0.0;
    std::vector<double> jump_lambdas;   // distinct |k|^2, ascending; first entry is 1
    std::vector<long long> cumulative;  // N0 at each jump, strictly increasing
};

/// N0(lambda) for lambda >= 1.
long long count_nonzero_in_ball(int n, double lambda);

LatticeCountProfile lattice_count_profile(int n, double lambda_max);

/**
 * Scan estimate of nu0(n) = sup_{lambda >= 1} lambda^{-n/2} N0(lambda).
 * The sup restricted to [1, lambda_max] is attained at a jump, so enumerating
 * jumps is exact on the window; the result is a certified lower bound for the
 * full sup.  argmax_lambda is the first jump attaining the maximum.
 */
struct Nu0Estimate {
    double value = 0.0;
    double argmax_lambda = 0.0;
    LatticeCountProfile profile;
};

Nu0Estimate nu0_estimate(int n, double lambda_max);

/// Closed-form upper bound for nu0(n) used on inequality right-hand sides:
/// 4 for n = 2 (from N0 <= 4 lambda), 3^n - 1 otherwise.
double nu0_closed_bound(int n);

/// Weak quasi-norm of the symbol g_p(k) = |k|^{-n/p} (g_p(0) = 0) over the
/// box |k|_inf <= K.
double weak_norm_gp(int n, double p, int K);

}  // namespace nct
