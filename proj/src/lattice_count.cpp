#include "nct/lattice_count.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace nct {

namespace {

// ways[s] = #{k in Z^n : |k|^2 = s} for s = 0..S, built by convolving the
// one-dimensional shell counts n times.
std::vector<long long> shell_counts(int n, long long S) {
    std::vector<long long> one(static_cast<std::size_t>(S) + 1, 0);
    one[0] = 1;
    for (long long j = 1; j * j <= S; ++j) one[static_cast<std::size_t>(j * j)] = 2;
    std::vector<long long> ways = one;
    for (int axis = 2; axis <= n; ++axis) {
        std::vector<long long> next(static_cast<std::size_t>(S) + 1, 0);
        for (long long s = 0; s <= S; ++s) {
            if (ways[static_cast<std::size_t>(s)] == 0) continue;
            for (long long j = 0; s + j * j <= S; j = (j == 0 ? 1 : j + 1)) {
                long long mult = (j == 0) ? 1 : 2;
                next[static_cast<std::size_t>(s + j * j)] +=
                    mult * ways[static_cast<std::size_t>(s)];
            }
        }
        ways = std::move(next);
    }
    return ways;
}

void check_args(int n, double lambda, double lo) {
    if (n < 1) throw std::invalid_argument("lattice count: dimension must be >= 1");
    if (!(lambda >= lo)) throw std::invalid_argument("lattice count: lambda below valid range");
}

}  // namespace

long long count_nonzero_in_ball(int n, double lambda) {
    check_args(n, lambda, 1.0);
    const long long S = static_cast<long long>(std::floor(lambda));
    auto ways = shell_counts(n, S);
    long long total = 0;
    for (long long s = 1; s <= S; ++s) total += ways[static_cast<std::size_t>(s)];
    return total;
}

LatticeCountProfile lattice_count_profile(int n, double lambda_max) {
    check_args(n, lambda_max, 1.0);
    const long long S = static_cast<long long>(std::floor(lambda_max));
    auto ways = shell_counts(n, S);
    LatticeCountProfile profile;
    profile.n = n;
    profile.lambda_max = lambda_max;
    long long running = 0;
    for (long long s = 1; s <= S; ++s) {
        if (ways[static_cast<std::size_t>(s)] == 0) continue;
        running += ways[static_cast<std::size_t>(s)];
        profile.jump_lambdas.push_back(static_cast<double>(s));
        profile.cumulative.push_back(running);
    }
    return profile;
}

Nu0Estimate nu0_estimate(int n, double lambda_max) {
    Nu0Estimate est;
    est.profile = lattice_count_profile(n, lambda_max);
    // lambda^{-n/2} N0(lambda) is decreasing between jumps, so the sup over
    // the window is attained at a jump; keep the first maximizer (strict >).
    for (std::size_t i = 0; i < est.profile.jump_lambdas.size(); ++i) {
        const double lam = est.profile.jump_lambdas[i];
        const double ratio =
            static_cast<double>(est.profile.cumulative[i]) * std::pow(lam, -0.5 * n);
        if (ratio > est.value) {
            est.value = ratio;
            est.argmax_lambda = lam;
        }
    }
    return est;
}

double nu0_closed_bound(int n) {
    if (n < 1) throw std::invalid_argument("nu0 bound: dimension must be >= 1");
    if (n == 2) return 4.0;
    return std::pow(3.0, n) - 1.0;
}

double weak_norm_gp(int n, double p, int K) {
    if (n < 1) throw std::invalid_argument("weak_norm_gp: dimension must be >= 1");
    if (!(p > 0.0)) throw std::invalid_argument("weak_norm_gp: p must be positive");
    if (K < 1) throw std::invalid_argument("weak_norm_gp: K must be >= 1");
    // Collect |k|^{-n/p} over the box, largest first, then take the weak
    // quasi-norm sup_m m^{1/p} a_m directly.
    std::vector<double> vals;
    std::vector<int> k(static_cast<std::size_t>(n), -K);
    while (true) {
        long long sq = 0;
        for (int v : k) sq += static_cast<long long>(v) * v;
        if (sq > 0)
            vals.push_back(std::pow(static_cast<double>(sq), -0.5 * n / p));
        int axis = n - 1;
        while (axis >= 0 && k[static_cast<std::size_t>(axis)] == K) {
            k[static_cast<std::size_t>(axis)] = -K;
            --axis;
        }
        if (axis < 0) break;
        ++k[static_cast<std::size_t>(axis)];
    }
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    double best = 0.0;
    for (std::size_t m = 0; m < vals.size(); ++m)
        best = std::max(best, std::pow(static_cast<double>(m + 1), 1.0 / p) * vals[m]);
    return best;
}

}  // namespace nct
