#include "nct/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "nct/algebra_json.hpp"
#include "nct/bsp.hpp"
#include "nct/cwikel.hpp"
#include "nct/generators.hpp"
#include "nct/lattice_count.hpp"

namespace nct {

namespace {

constexpr const char* kSuiteNames[] = {"bsp", "borderline", "clr",          "lt",  "sobolev",
                                       "cwikel", "majorization", "nu0", "all"};

std::string format_error(const std::string& file, int line, const std::string& message) {
    if (file.empty()) return message;
    if (line <= 0) return file + ": " + message;
    return file + ":" + std::to_string(line) + ": " + message;
}

}  // namespace

std::string to_string(Suite s) { return kSuiteNames[static_cast<int>(s)]; }

Suite suite_from_string(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(Suite::all); ++i)
        if (name == kSuiteNames[i]) return static_cast<Suite>(i);
    throw CampaignError("", 0,
                        "unknown suite \"" + name +
                            "\"; expected bsp, borderline, clr, lt, sobolev, cwikel, "
                            "majorization, nu0, or all");
}

CampaignError::CampaignError(std::string file, int line, const std::string& message)
    : std::runtime_error(format_error(file, line, message)), file_(std::move(file)), line_(line) {}

namespace {

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    const std::size_t stop = std::min(byte, text.size());
    for (std::size_t i = 0; i < stop; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CampaignError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw CampaignError(path, line_of_byte(text, byte), e.what());
    }
}

template <typename T>
std::optional<T> opt_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known)
            throw CampaignError("", 0, std::string("unknown ") + where + " key \"" + item.key() + "\"");
    }
}

}  // namespace

CampaignConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw CampaignError("", 0, "config must be a JSON object");
    reject_unknown_keys(j, {"suite", "source", "trace_tolerance", "out"}, "config");
    try {
        CampaignConfig cfg;
        if (!j.contains("suite")) throw CampaignError("", 0, "config needs a \"suite\" field");
        cfg.suite = suite_from_string(j.at("suite").get<std::string>());
        if (j.contains("source")) {
            const nlohmann::json& s = j.at("source");
            if (!s.is_object()) throw CampaignError("", 0, "source must be a JSON object");
            reject_unknown_keys(s, {"file", "seed", "count", "n", "K_op", "K_tau", "lambda_max"},
                                "source");
            cfg.source.file = opt_field<std::string>(s, "file");
            cfg.source.seed = opt_field<std::uint64_t>(s, "seed");
            cfg.source.count = opt_field<int>(s, "count");
            cfg.source.n = opt_field<int>(s, "n");
            cfg.source.K_op = opt_field<int>(s, "K_op");
            cfg.source.K_tau = opt_field<int>(s, "K_tau");
            cfg.source.lambda_max = opt_field<double>(s, "lambda_max");
        }
        if (j.contains("trace_tolerance"))
            cfg.trace_tolerance = j.at("trace_tolerance").get<double>();
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
        if (!(cfg.trace_tolerance > 0.0) || !std::isfinite(cfg.trace_tolerance))
            throw CampaignError("", 0, "tolerances must be positive");
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw CampaignError("", 0, std::string("malformed config: ") + e.what());
    }
}

CampaignConfig load_config(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    try {
        return config_from_json(j);
    } catch (const CampaignError& e) {
        if (e.file().empty()) throw CampaignError(path, 0, e.what());
        throw;
    }
}

namespace {

/// Source fields resolved against the per-suite defaults.
struct Resolved {
    std::uint64_t seed = 0;
    int count = 0;
    int n = 2;
    int K_op = 3;
    int K_tau = 6;
    double lambda_max = 1e4;
};

Resolved resolve(const CampaignConfig& cfg, Suite s) {
    int count = 0, n = 2, K_op = 3, K_tau = 6;
    switch (s) {
        case Suite::bsp: count = 200, K_op = 3, K_tau = 3; break;
        case Suite::borderline: count = 100, K_op = 3, K_tau = 3; break;
        case Suite::clr: count = 300, K_op = 6, K_tau = 8; break;
        case Suite::lt: count = 100, K_op = 6, K_tau = 6; break;
        case Suite::sobolev: count = 50, n = 3, K_op = 1, K_tau = 4; break;
        case Suite::cwikel: count = 300, K_op = 2, K_tau = 8; break;
        case Suite::majorization: count = 500, K_op = 2; break;
        case Suite::nu0: count = 1; break;
        case Suite::all: break;
    }
    Resolved r;
    r.seed = cfg.source.seed.value_or(0);
    r.count = cfg.source.count.value_or(count);
    r.n = cfg.source.n.value_or(n);
    r.K_op = cfg.source.K_op.value_or(K_op);
    r.K_tau = cfg.source.K_tau.value_or(K_tau);
    r.lambda_max = cfg.source.lambda_max.value_or(r.n == 2 ? 1e4 : 1e3);
    const std::string name = to_string(s);
    if (r.count < 0) throw CampaignError("", 0, name + ": count must be nonnegative");
    if (r.n < 1) throw CampaignError("", 0, name + ": dimension must be positive");
    if (s == Suite::sobolev && r.n < 3)
        throw CampaignError("", 0, name + ": dimension must be at least 3");
    if (r.K_op < 1 || r.K_tau < 1) throw CampaignError("", 0, name + ": box radii must be positive");
    if (!(r.lambda_max >= 1.0)) throw CampaignError("", 0, name + ": lambda_max must be at least 1");
    return r;
}

/// splitmix64 finalizer over (seed, suite), so the suites of an `all` run are
/// decorrelated yet each equals the matching single-suite run.
std::uint64_t suite_seed(std::uint64_t seed, Suite s) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(s) + 1);
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Runs fn(0..count-1) on a small thread pool, merging reports in index
/// order; the merged report is independent of the scheduling.
template <typename Fn>
VerificationReport map_ordered(std::size_t count, Fn&& fn) {
    VerificationReport all;
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t threads = std::min({hw, count, std::size_t{8}});
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) all.append(fn(i));
        return all;
    }
    std::vector<VerificationReport> parts(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    parts[i] = fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    for (auto& p : parts) all.append(p);
    return all;
}

template <typename Fn>
auto load_instance_array(const std::string& path, Fn&& parse)
    -> std::vector<decltype(parse(nlohmann::json{}))> {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_array()) throw CampaignError(path, 0, "instance file must hold a JSON array");
    std::vector<decltype(parse(nlohmann::json{}))> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(parse(j[i]));
        } catch (const std::exception& e) {
            throw CampaignError(path, 0, "instance " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

Symbol symbol_from_json(const nlohmann::json& j) {
    Symbol g;
    for (const auto& e : j) {
        LatticeVector k = e.at("k").get<LatticeVector>();
        g[k] = cplx{e.at("re").get<double>(), e.at("im").get<double>()};
    }
    return g;
}

std::string tag(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

VerificationReport run_bsp(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<SchrodingerInstance> insts;
    if (cfg.source.file) {
        insts = load_instance_array(*cfg.source.file,
                                    [](const nlohmann::json& j) { return schrodinger_from_json(j); });
    } else {
        Rng rng(suite_seed(r.seed, Suite::bsp));
        insts.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            insts.emplace_back(theta, 2.0, 2.0, squared_well(rng, theta, 2, 4), r.K_op, r.K_tau);
        }
    }
    return map_ordered(insts.size(), [&](std::size_t i) {
        return verify_abstract_bsp(insts[i], tag("bsp/", i));
    });
}

VerificationReport run_borderline(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<SchrodingerInstance> insts;
    if (cfg.source.file) {
        insts = load_instance_array(*cfg.source.file,
                                    [](const nlohmann::json& j) { return schrodinger_from_json(j); });
    } else {
        static constexpr double kP[] = {0.5, 1.0, 2.0};
        static constexpr double kQ[] = {1.0, 2.0, 2.0};
        Rng rng(suite_seed(r.seed, Suite::borderline));
        insts.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            insts.emplace_back(theta, kP[i % 3], kQ[i % 3], squared_well(rng, theta, 2, 4), r.K_op,
                               r.K_tau);
        }
    }
    return map_ordered(insts.size(), [&](std::size_t i) {
        return verify_borderline_bsp(insts[i], tag("borderline/", i));
    });
}

VerificationReport run_clr(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<SchrodingerInstance> insts;
    if (cfg.source.file) {
        insts = load_instance_array(*cfg.source.file,
                                    [](const nlohmann::json& j) { return schrodinger_from_json(j); });
    } else {
        static constexpr double kP[] = {2.0, 1.0, 0.5};
        static constexpr double kQ[] = {2.0, 2.0, 1.0};
        Rng rng(suite_seed(r.seed, Suite::clr));
        insts.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            insts.emplace_back(theta, kP[i % 3], kQ[i % 3],
                               scalar_dominant_well(rng, theta, 2, 4, 0.4, 1.2, 0.3), r.K_op,
                               r.K_tau);
        }
    }
    return map_ordered(insts.size(),
                       [&](std::size_t i) { return verify_clr(insts[i], tag("clr/", i)); });
}

VerificationReport run_lt(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<SchrodingerInstance> insts;
    if (cfg.source.file) {
        insts = load_instance_array(*cfg.source.file,
                                    [](const nlohmann::json& j) { return schrodinger_from_json(j); });
    } else {
        Rng rng(suite_seed(r.seed, Suite::lt));
        insts.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            insts.emplace_back(theta, 2.0, 2.0, scalar_dominant_well(rng, theta, 2, 4, 0.4, 1.2, 0.3),
                               r.K_op, r.K_tau);
        }
    }
    static constexpr double kGamma[] = {0.5, 1.0, 2.0};
    return map_ordered(insts.size(), [&](std::size_t i) {
        VerificationReport rep;
        for (std::size_t g = 0; g < 3; ++g)
            rep.append(verify_lt(insts[i], kGamma[g],
                                 tag("lt/", i) + "/gamma[" + std::to_string(g) + "]"));
        return rep;
    });
}

VerificationReport run_sobolev(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<std::vector<FourierElement>> families;
    if (cfg.source.file) {
        const std::string& path = *cfg.source.file;
        const nlohmann::json j = load_json_file(path);
        if (!j.is_array()) throw CampaignError(path, 0, "instance file must hold a JSON array");
        families.reserve(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) {
            try {
                if (!j[i].is_array()) throw std::invalid_argument("family must be a JSON array");
                std::vector<FourierElement> family;
                for (const auto& e : j[i]) family.push_back(element_from_json(e));
                families.push_back(std::move(family));
            } catch (const std::exception& e) {
                throw CampaignError(path, 0, "family " + std::to_string(i) + ": " + e.what());
            }
        }
    } else {
        Rng rng(suite_seed(r.seed, Suite::sobolev));
        families.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            const int size = 1 + i % 5;
            // small families use exact mode densities; the density trace of a
            // generic size-1 or size-2 family does not settle at usable radii
            families.push_back(size <= 2 ? mode_family(rng, theta, size, 1)
                                         : gram_schmidt_family(rng, theta, size, 1, 4));
        }
    }
    return map_ordered(families.size(), [&](std::size_t i) {
        return verify_sobolev(families[i], r.K_tau, tag("sobolev/", i));
    });
}

VerificationReport run_cwikel(const CampaignConfig& cfg, const Resolved& r) {
    std::vector<CwikelInstance> insts;
    if (cfg.source.file) {
        insts = load_instance_array(*cfg.source.file, [](const nlohmann::json& j) {
            return cwikel_instance_from_json(j);
        });
    } else {
        static constexpr double kP[] = {3.0, 4.0, 2.0, 0.5, 1.0, 1.5};
        Rng rng(suite_seed(r.seed, Suite::cwikel));
        insts.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const double p = kP[i % 6];
            const ThetaMatrix theta = random_theta(rng, r.n);
            if (p > 2.0) {
                // p > 2 estimates ||x||_p by box traces, so x needs a spectrum
                // that converges at small radii yet sits strictly above ||x||_2;
                // a cosine band does both, and a separated symbol keeps the
                // singular values at exactly ||x||_2 |g|, clear of the bound
                FourierElement x = one_frequency_element(rng, theta, 0.7, 1.0, 0.4);
                insts.emplace_back(std::move(x), separated_symbol(rng, r.n, 3 + rng.integer(0, 3), 5),
                                   p);
            } else {
                insts.emplace_back(random_element(rng, theta, 2, 4), random_symbol(rng, r.n, 2, 6),
                                   p);
            }
        }
    }
    return map_ordered(insts.size(), [&](std::size_t i) {
        return verify_cwikel_bounds(insts[i], r.K_tau, cfg.trace_tolerance, tag("cwikel/", i));
    });
}

VerificationReport run_majorization(const CampaignConfig& cfg, const Resolved& r) {
    struct Pair {
        FourierElement x;
        Symbol g;
    };
    std::vector<Pair> pairs;
    if (cfg.source.file) {
        pairs = load_instance_array(*cfg.source.file, [](const nlohmann::json& j) {
            return Pair{element_from_json(j.at("x")), symbol_from_json(j.at("g"))};
        });
    } else {
        Rng rng(suite_seed(r.seed, Suite::majorization));
        pairs.reserve(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i) {
            const ThetaMatrix theta = random_theta(rng, r.n);
            Pair pr{random_element(rng, theta, 2, 5), random_symbol(rng, r.n, 2, 6)};
            pairs.push_back(std::move(pr));
        }
    }
    return map_ordered(pairs.size(), [&](std::size_t i) {
        VerificationReport rep;
        rep.append(verify_hs_equality(pairs[i].x, pairs[i].g, tag("majorization/", i) + "/hs"));
        rep.append(verify_majorization(pairs[i].x, pairs[i].g, tag("majorization/", i)));
        return rep;
    });
}

VerificationReport run_nu0(const CampaignConfig& cfg, const Resolved& r) {
    if (cfg.source.file)
        throw CampaignError(*cfg.source.file, 0,
                            "the nu0 suite scans the lattice directly and takes no instance file");
    const Nu0Estimate est = nu0_estimate(r.n, r.lambda_max);
    nlohmann::json diag;
    diag["n"] = r.n;
    diag["lambda_max"] = r.lambda_max;
    diag["argmax_lambda"] = est.argmax_lambda;
    diag["jumps"] = est.profile.jump_lambdas.size();
    VerificationReport rep;
    rep.add(check_le("nu0", "lattice-counting-sup-bound", est.value, nu0_closed_bound(r.n), 0.0,
                     std::move(diag)));
    return rep;
}

VerificationReport run_suite(Suite s, const CampaignConfig& cfg, const Resolved& r) {
    switch (s) {
        case Suite::bsp: return run_bsp(cfg, r);
        case Suite::borderline: return run_borderline(cfg, r);
        case Suite::clr: return run_clr(cfg, r);
        case Suite::lt: return run_lt(cfg, r);
        case Suite::sobolev: return run_sobolev(cfg, r);
        case Suite::cwikel: return run_cwikel(cfg, r);
        case Suite::majorization: return run_majorization(cfg, r);
        case Suite::nu0: return run_nu0(cfg, r);
        case Suite::all: break;
    }
    throw std::logic_error("run_suite: unexpected suite");
}

void write_reports(const CampaignConfig& cfg, const Resolved& r, SuiteRun& run) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw CampaignError(cfg.out_dir, 0, "cannot create output directory: " + ec.message());

    nlohmann::json source;
    if (cfg.source.file) source["file"] = *cfg.source.file;
    source["seed"] = r.seed;
    source["count"] = r.count;
    source["n"] = r.n;
    source["K_op"] = r.K_op;
    source["K_tau"] = r.K_tau;
    source["lambda_max"] = r.lambda_max;
    nlohmann::json wrapper;
    wrapper["suite"] = to_string(run.suite);
    wrapper["source"] = source;
    wrapper["trace_tolerance"] = cfg.trace_tolerance;
    wrapper["report"] = run.report.to_json();

    const fs::path base = fs::path(cfg.out_dir) / (to_string(run.suite) + ".report");
    run.json_path = base.string() + ".json";
    run.csv_path = base.string() + ".csv";
    std::ofstream jf(run.json_path);
    if (!jf) throw CampaignError(run.json_path, 0, "cannot write report");
    jf << wrapper.dump(2) << '\n';
    std::ofstream cf(run.csv_path);
    if (!cf) throw CampaignError(run.csv_path, 0, "cannot write report");
    cf << run.report.to_csv();
}

}  // namespace

bool CampaignResult::clean() const {
    for (const auto& run : runs)
        if (!run.report.clean()) return false;
    return true;
}

std::size_t CampaignResult::total(CheckStatus s) const {
    std::size_t c = 0;
    for (const auto& run : runs) c += run.report.count(s);
    return c;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
    if (!(cfg.trace_tolerance > 0.0) || !std::isfinite(cfg.trace_tolerance))
        throw CampaignError("", 0, "tolerances must be positive");

    std::vector<Suite> suites;
    if (cfg.suite == Suite::all) {
        if (cfg.source.file)
            throw CampaignError("", 0, "suite all cannot read an instance file; select one suite");
        suites = {Suite::bsp, Suite::borderline, Suite::clr,          Suite::lt,
                  Suite::sobolev, Suite::cwikel, Suite::majorization, Suite::nu0};
    } else {
        suites = {cfg.suite};
    }
    if (!cfg.source.file && cfg.suite != Suite::nu0 && !cfg.source.seed.has_value())
        throw CampaignError("", 0, "seed is mandatory for generated corpora");

    // validate every suite's shape before running any of them
    std::vector<Resolved> resolved;
    resolved.reserve(suites.size());
    for (Suite s : suites) resolved.push_back(resolve(cfg, s));

    CampaignResult result;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        SuiteRun run;
        run.suite = suites[i];
        run.report = run_suite(suites[i], cfg, resolved[i]);
        if (!cfg.out_dir.empty()) write_reports(cfg, resolved[i], run);
        result.runs.push_back(std::move(run));
    }
    return result;
}

namespace {

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_counts(const std::string& label, std::size_t pass, std::size_t fail,
                          std::size_t inconclusive, std::size_t boundary, double worst) {
    std::ostringstream out;
    out << label << ": " << pass << " pass, " << fail << " fail, " << inconclusive
        << " inconclusive, " << boundary << " boundary-sensitive";
    if (std::isfinite(worst)) out << ", worst margin " << format_g(worst);
    return out.str();
}

}  // namespace

std::string summarize_report(const std::string& label, const VerificationReport& report) {
    return format_counts(label, report.count(CheckStatus::pass), report.count(CheckStatus::fail),
                         report.count(CheckStatus::inconclusive),
                         report.count(CheckStatus::boundary_sensitive), report.worst_margin());
}

std::string summarize(const std::vector<std::string>& report_files, std::size_t* fail_count) {
    std::ostringstream out;
    std::size_t tp = 0, tf = 0, ti = 0, tb = 0;
    double total_worst = std::numeric_limits<double>::infinity();
    for (const std::string& path : report_files) {
        const nlohmann::json j = load_json_file(path);
        const bool wrapped = j.is_object() && j.contains("report");
        const nlohmann::json& rep = wrapped ? j.at("report") : j;
        if (!rep.is_object() || !rep.contains("checks"))
            throw CampaignError(path, 0, "not a verification report");
        const std::string label =
            wrapped && j.contains("suite") ? j.at("suite").get<std::string>() : path;

        std::size_t pass = 0, fail = 0, inconclusive = 0, boundary = 0;
        double worst = std::numeric_limits<double>::infinity();
        // claim -> max observed ratio and how many records carried one
        std::map<std::string, std::pair<double, std::size_t>> probes;
        try {
            for (const auto& rec : rep.at("checks")) {
                const std::string status = rec.at("status").get<std::string>();
                if (status == "pass") ++pass;
                else if (status == "fail") ++fail;
                else if (status == "inconclusive") ++inconclusive;
                else if (status == "boundary-sensitive") ++boundary;
                else throw std::invalid_argument("unknown record status \"" + status + "\"");
                if (status == "pass" || status == "fail")
                    worst = std::min(worst, rec.at("margin").get<double>());
                if (rec.contains("diagnostics") &&
                    rec.at("diagnostics").contains("observed_best_constant_lower_bound")) {
                    const double ratio =
                        rec.at("diagnostics").at("observed_best_constant_lower_bound").get<double>();
                    auto& slot = probes[rec.at("claim").get<std::string>()];
                    slot.first = slot.second == 0 ? ratio : std::max(slot.first, ratio);
                    ++slot.second;
                }
            }
        } catch (const nlohmann::json::exception& e) {
            throw CampaignError(path, 0, std::string("malformed report: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw CampaignError(path, 0, std::string("malformed report: ") + e.what());
        }

        out << format_counts(label, pass, fail, inconclusive, boundary, worst) << '\n';
        for (const auto& [claim, probe] : probes)
            out << "  probe " << claim << ": max observed ratio " << format_g(probe.first)
                << " over " << probe.second << " records\n";
        tp += pass;
        tf += fail;
        ti += inconclusive;
        tb += boundary;
        total_worst = std::min(total_worst, worst);
    }
    out << format_counts("total", tp, tf, ti, tb, total_worst) << '\n';
    if (fail_count) *fail_count = tf;
    return out.str();
}

}  // namespace nct
