#include "nct/cwikel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "nct/algebra_json.hpp"
#include "nct/constants.hpp"
#include "nct/eigensolver.hpp"
#include "nct/lattice_basis.hpp"
#include "nct/lattice_count.hpp"
#include "nct/spectra.hpp"

namespace nct {

namespace {

LatticeVector vec_add(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

LatticeVector vec_sub(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

std::vector<LatticeVector> support_modes(const Symbol& g, std::size_t dim) {
    std::vector<LatticeVector> modes;
    for (const auto& [k, v] : g) {
        if (k.size() != dim) throw std::invalid_argument("symbol mode dimension mismatch");
        if (v != cplx{}) modes.push_back(k);
    }
    return modes;
}

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

DecreasingSequence rearranged_abs(const Symbol& g) {
    std::vector<double> mods;
    mods.reserve(g.size());
    for (const auto& [k, v] : g)
        if (v != cplx{}) mods.push_back(std::abs(v));
    return decreasing_rearrangement(mods);
}

double symbol_lp_norm(const Symbol& g, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("symbol_lp_norm: p must be positive");
    double s = 0.0;
    for (const auto& [k, v] : g) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

Symbol gp_symbol(int n, double p, int K) {
    if (n < 1 || K < 0) throw std::invalid_argument("gp_symbol: need n >= 1, K >= 0");
    if (!(p > 0.0)) throw std::invalid_argument("gp_symbol: p must be positive");
    Symbol g;
    LatticeBasis basis(n, K);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const LatticeVector k = basis.point(i);
        const long long r2 = euclidean_sq(k);
        if (r2 == 0) continue;
        g[k] = std::pow(static_cast<double>(r2), -n / (2.0 * p));
    }
    return g;
}

GramMatrix gram_matrix(const FourierElement& x, const Symbol& g) {
    const auto dim = static_cast<std::size_t>(x.dim());
    GramMatrix G;
    G.modes = support_modes(g, dim);
    const std::size_t S = G.modes.size();
    G.entries = CMatrix(S, S);
    const ThetaMatrix& theta = x.theta();
    for (std::size_t a = 0; a < S; ++a) {
        const LatticeVector& k = G.modes[a];
        const cplx gk = g.at(k);
        for (std::size_t b = a; b < S; ++b) {
            const LatticeVector& kp = G.modes[b];
            const LatticeVector m = vec_sub(kp, k);
            // <x U^{k'}, x U^k> = sum_j x_j conj(x_{j+m}) e^{i(phi(j,k') - phi(j+m,k))}
            cplx ip = 0.0;
            for (const auto& [j, xj] : x.coeffs()) {
                const LatticeVector jm = vec_add(j, m);
                const cplx partner = x.coeff(jm);
                if (partner == cplx{}) continue;
                ip += xj * std::conj(partner) * cis_cocycle(j, kp, theta) *
                      std::conj(cis_cocycle(jm, k, theta));
            }
            const cplx entry = std::conj(gk) * g.at(kp) * ip;
            G.entries(a, b) = a == b ? cplx{entry.real(), 0.0} : entry;
            if (a != b) G.entries(b, a) = std::conj(entry);
        }
    }
    return G;
}

DecreasingSequence gram_mu(const FourierElement& x, const Symbol& g) {
    const GramMatrix G = gram_matrix(x, g);
    EigResult eig = hermitian_eig(G.entries, false);
    std::vector<double> mu(eig.eigenvalues.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        mu[i] = std::sqrt(std::max(0.0, eig.eigenvalues[eig.eigenvalues.size() - 1 - i]));
    return DecreasingSequence(std::move(mu));
}

CwikelInstance::CwikelInstance(FourierElement x_, Symbol g_, double p_)
    : x(std::move(x_)), g(std::move(g_)), p(p_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("CwikelInstance: p must be positive");
    support_modes(g, static_cast<std::size_t>(x.dim()));  // validates mode dimensions
}

std::string CwikelInstance::regime() const {
    if (p > 2.0) return "weak-above-two";
    if (p == 2.0) return "exact-at-two";
    return "below-two";
}

nlohmann::json to_json(const CwikelInstance& inst) {
    nlohmann::json jg = nlohmann::json::array();
    for (const auto& [k, v] : inst.g) {
        if (v == cplx{}) continue;
        nlohmann::json e;
        e["k"] = k;
        e["re"] = v.real();
        e["im"] = v.imag();
        jg.push_back(e);
    }
    nlohmann::json j;
    j["x"] = to_json(inst.x);
    j["g"] = jg;
    j["p"] = inst.p;
    return j;
}

CwikelInstance cwikel_instance_from_json(const nlohmann::json& j) {
    FourierElement x = element_from_json(j.at("x"));
    Symbol g;
    for (const auto& e : j.at("g")) {
        LatticeVector k = e.at("k").get<LatticeVector>();
        g[k] = cplx{e.at("re").get<double>(), e.at("im").get<double>()};
    }
    return CwikelInstance(std::move(x), std::move(g), j.at("p").get<double>());
}

VerificationReport verify_hs_equality(const FourierElement& x, const Symbol& g,
                                      const std::string& id_prefix) {
    const GramMatrix G = gram_matrix(x, g);
    double sum = 0.0;
    for (double ev : hermitian_eig(G.entries, false).eigenvalues) sum += std::max(0.0, ev);
    const double lhs = std::sqrt(sum);
    const double rhs = hatlp_norm(x, 2.0) * symbol_lp_norm(g, 2.0);
    nlohmann::json diag;
    diag["modes"] = G.modes.size();
    VerificationReport rep;
    rep.add(check_eq(id_prefix, "hs-factorization-equality", lhs, rhs, 1e-10 * scale_of(lhs, rhs),
                     std::move(diag)));
    return rep;
}

VerificationReport verify_majorization(const FourierElement& x, const Symbol& g,
                                       const std::string& id_prefix) {
    const GramMatrix G = gram_matrix(x, g);
    EigResult eig = hermitian_eig(G.entries, false);
    std::vector<double> mu2(eig.eigenvalues.rbegin(), eig.eigenvalues.rend());
    for (double& v : mu2) v = std::max(0.0, v);

    const double xl2sq = hatlp_norm(x, 2.0) * hatlp_norm(x, 2.0);
    const DecreasingSequence gmu = rearranged_abs(g);
    std::vector<double> target;
    for (double m : gmu.values()) target.push_back(xl2sq * m * m);

    // worst partial-sum deficit of the dominated sequence against eig(G)
    const std::size_t len = std::max(mu2.size(), target.size());
    double sum_mu2 = 0.0, sum_target = 0.0, total_mu2 = 0.0, total_target = 0.0;
    double worst_lhs = 0.0, worst_rhs = 0.0, worst_deficit = -1.0;
    std::size_t worst_n = 0;
    for (std::size_t j = 0; j < len; ++j) {
        sum_mu2 += j < mu2.size() ? mu2[j] : 0.0;
        sum_target += j < target.size() ? target[j] : 0.0;
        const double deficit = sum_target - sum_mu2;
        if (deficit > worst_deficit) {
            worst_deficit = deficit;
            worst_lhs = sum_target;
            worst_rhs = sum_mu2;
            worst_n = j;
        }
    }
    total_mu2 = sum_mu2;
    total_target = sum_target;

    const double scale = std::max({1.0, total_mu2, total_target});
    nlohmann::json diag;
    diag["worst_partial_index"] = worst_n;
    VerificationReport rep;
    rep.add(check_le(id_prefix + "/partial-sums", "mu-squared-majorization-partial-sums", worst_lhs,
                     worst_rhs, 1e-9 * scale, diag));
    rep.add(check_eq(id_prefix + "/totals", "mu-squared-majorization-totals", total_target,
                     total_mu2, 1e-10 * scale));
    return rep;
}

namespace {

nlohmann::json ratio_diag(const CwikelInstance& inst, double lhs, double product,
                          double constant_upper) {
    nlohmann::json diag;
    diag["p"] = inst.p;
    diag["regime"] = inst.regime();
    if (product > 0.0) diag["observed_best_constant_lower_bound"] = lhs / product;
    if (constant_upper > 0.0) diag["constant_upper_bound"] = constant_upper;
    return diag;
}

}  // namespace

VerificationReport verify_cwikel_bounds(const CwikelInstance& inst, int K_tau, double tol,
                                        const std::string& id_prefix) {
    VerificationReport rep;
    const DecreasingSequence mu = gram_mu(inst.x, inst.g);
    const DecreasingSequence gmu = rearranged_abs(inst.g);
    const double p = inst.p;

    if (p > 2.0) {
        const TraceDiagnostics td = lp_trace(inst.x, p, K_tau, tol);
        if (!td.converged) {
            nlohmann::json diag;
            diag["rel_change"] = td.rel_change;
            diag["radii"] = td.radii;
            rep.add(check_inconclusive(id_prefix + "/weak", "weak-cwikel-above-two",
                                       "trace-estimator-not-converged", diag));
            rep.add(check_inconclusive(id_prefix + "/strong", "strong-cwikel-schatten",
                                       "trace-estimator-not-converged", diag));
            return rep;
        }
        const double xnorm = std::pow(td.value, 1.0 / p);
        const double cplus = constants::c_plus(p);

        const double weak_lhs = weak_quasinorm(mu, p);
        const double weak_product = xnorm * weak_quasinorm(gmu, p);
        nlohmann::json wd = ratio_diag(inst, weak_lhs, weak_product, cplus);
        wd["x_norm_estimate"] = xnorm;
        wd["x_norm_rel_change"] = td.rel_change;
        rep.add(check_le(id_prefix + "/weak", "weak-cwikel-above-two", weak_lhs,
                         cplus * weak_product, 1e-9 * scale_of(weak_lhs, cplus * weak_product),
                         std::move(wd)));

        const double strong_lhs = schatten_norm(mu, p);
        const double strong_rhs = xnorm * symbol_lp_norm(inst.g, p);
        rep.add(check_le(id_prefix + "/strong", "strong-cwikel-schatten", strong_lhs, strong_rhs,
                         1e-9 * scale_of(strong_lhs, strong_rhs),
                         ratio_diag(inst, strong_lhs, strong_rhs, 1.0)));
        return rep;
    }

    if (p == 2.0) {
        const double lhs = schatten_norm(mu, 2.0);
        const double rhs = hatlp_norm(inst.x, 2.0) * symbol_lp_norm(inst.g, 2.0);
        rep.add(check_eq(id_prefix + "/strong", "hs-factorization-equality", lhs, rhs,
                         1e-10 * scale_of(lhs, rhs), ratio_diag(inst, lhs, rhs, 1.0)));
        return rep;
    }

    const double xl2 = hatlp_norm(inst.x, 2.0);
    const double strong_lhs = schatten_norm(mu, p);
    const double strong_rhs = xl2 * symbol_lp_norm(inst.g, p);
    rep.add(check_le(id_prefix + "/strong", "strong-cwikel-below-two", strong_lhs, strong_rhs,
                     1e-9 * scale_of(strong_lhs, strong_rhs),
                     ratio_diag(inst, strong_lhs, strong_rhs, 1.0)));

    const double cminus = constants::c_minus(p);
    const double weak_lhs = weak_quasinorm(mu, p);
    const double weak_product = xl2 * weak_quasinorm(gmu, p);
    rep.add(check_le(id_prefix + "/weak", "weak-cwikel-below-two", weak_lhs, cminus * weak_product,
                     1e-9 * scale_of(weak_lhs, cminus * weak_product),
                     ratio_diag(inst, weak_lhs, weak_product, cminus)));
    return rep;
}

VerificationReport verify_sandwiched_cwikel(const FourierElement& V, double p, double q, int K_g,
                                            int K_tau, double tol, bool known_positive,
                                            const std::string& id_prefix) {
    if (!(p > 0.0)) throw std::invalid_argument("sandwiched cwikel: p must be positive");
    const bool regime_ok = (p > 1.0 && q == p) || (p == 1.0 && q > 1.0) || (p < 1.0 && q == 1.0);
    if (!regime_ok)
        throw std::invalid_argument(
            "sandwiched cwikel: exponents must satisfy (p>1, q=p), (p=1, q>1), or (p<1, q=1)");
    if (K_g < 1) throw std::invalid_argument("sandwiched cwikel: K_g must be >= 1");

    const int n = V.dim();
    LatticeBasis basis(n, K_g);
    const GeneralOperator M = left_mult_matrix(V, basis);
    const GeneralOperator W = multiplier_matrix(
        [n, p](const LatticeVector& k) -> cplx {
            const long long r2 = euclidean_sq(k);
            if (r2 == 0) return 0.0;
            return std::pow(static_cast<double>(r2), -n / (4.0 * p));
        },
        basis);
    const CMatrix T = matmul(W.entries, matmul(M.entries, W.entries));
    const DecreasingSequence mu{singular_values_raw(T)};
    const double lhs = weak_quasinorm(mu, p);

    const std::string claim =
        known_positive ? "sandwiched-cwikel-weak-bound-positive" : "sandwiched-cwikel-weak-bound";
    const TraceDiagnostics td = lp_trace(V, q, K_tau, tol);
    if (!td.converged) {
        nlohmann::json diag;
        diag["rel_change"] = td.rel_change;
        diag["radii"] = td.radii;
        VerificationReport rep;
        rep.add(check_inconclusive(id_prefix, claim, "trace-estimator-not-converged",
                                   std::move(diag)));
        return rep;
    }
    const double vnorm = std::pow(td.value, 1.0 / q);
    const double doubling = known_positive ? 1.0 : std::pow(2.0, 1.0 / p);
    const double nu0 = nu0_closed_bound(n);
    const double rhs =
        doubling * constants::sandwich_constant_sq(p, q) * std::pow(nu0, 1.0 / p) * vnorm;

    nlohmann::json diag;
    diag["p"] = p;
    diag["q"] = q;
    diag["box_radius"] = K_g;
    diag["nu0_bound"] = nu0;
    diag["v_norm_estimate"] = vnorm;
    diag["v_norm_rel_change"] = td.rel_change;
    diag["known_positive"] = known_positive;
    VerificationReport rep;
    rep.add(check_le(id_prefix, claim, lhs, rhs, 1e-9 * scale_of(lhs, rhs), std::move(diag)));
    return rep;
}

}  // namespace nct
