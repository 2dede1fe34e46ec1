#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nct/algebra_json.hpp"
#include "nct/bsp.hpp"
#include "nct/campaign.hpp"
#include "nct/cwikel.hpp"
#include "nct/generators.hpp"
#include "nct/lattice_count.hpp"

using namespace nct;
namespace fs = std::filesystem;

namespace {

/// Per-case scratch directory under the test working directory.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::path("campaign_scratch_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& leaf) const { return (dir / leaf).string(); }
};

std::string write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json parse_file(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

/// V = -0.3 exactly: H_V eigenvalues |k| - 0.3 sit off the default lambda grid.
SchrodingerInstance tiny_schrodinger() {
    const ThetaMatrix theta = ThetaMatrix::two_d(0.3);
    const FourierElement y = FourierElement::mode(theta, {1, 0}, std::sqrt(0.3));
    return SchrodingerInstance(theta, 2.0, 2.0, scale(mul(adjoint(y), y), -1.0), 2, 2);
}

/// Scaled unit times a two-mode symbol: every norm in play is exact.
CwikelInstance tiny_cwikel(double p) {
    const ThetaMatrix theta = ThetaMatrix::two_d(0.3);
    Symbol g;
    g[{0, 0}] = 1.0;
    g[{1, 0}] = 0.5;
    return CwikelInstance(scale(FourierElement::unit(theta), 0.9), g, p);
}

}  // namespace

TEST_CASE("suite names round trip and unknown names are rejected") {
    const char* names[] = {"bsp", "borderline", "clr",          "lt",  "sobolev",
                           "cwikel", "majorization", "nu0", "all"};
    for (const char* name : names) CHECK(to_string(suite_from_string(name)) == name);
    CHECK_THROWS_WITH_AS(suite_from_string("spectra"),
                         doctest::Contains("unknown suite \"spectra\""), CampaignError);
}

TEST_CASE("campaign errors carry file and line") {
    const CampaignError positioned("cfg.json", 7, "boom");
    CHECK(positioned.file() == "cfg.json");
    CHECK(positioned.line() == 7);
    CHECK(std::string(positioned.what()) == "cfg.json:7: boom");
    CHECK(std::string(CampaignError("cfg.json", 0, "boom").what()) == "cfg.json: boom");
    CHECK(std::string(CampaignError("", 0, "boom").what()) == "boom");
}

TEST_CASE("config parsing applies defaults and rejects defects") {
    const auto full = config_from_json(nlohmann::json::parse(R"({
        "suite": "clr",
        "source": {"seed": 7, "count": 300, "n": 2, "K_op": 6, "K_tau": 8},
        "trace_tolerance": 0.01,
        "out": "reports"})"));
    CHECK(full.suite == Suite::clr);
    CHECK(full.source.seed == 7);
    CHECK(full.source.count == 300);
    CHECK(full.source.K_op == 6);
    CHECK(full.trace_tolerance == 0.01);
    CHECK(full.out_dir == "reports");

    const auto minimal = config_from_json(nlohmann::json::parse(R"({"suite": "nu0"})"));
    CHECK(minimal.suite == Suite::nu0);
    CHECK_FALSE(minimal.source.seed.has_value());
    CHECK(minimal.trace_tolerance == 0.01);
    CHECK(minimal.out_dir.empty());

    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::parse("[1]")),
                         doctest::Contains("JSON object"), CampaignError);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::parse(R"({"source": {}})")),
                         doctest::Contains("suite"), CampaignError);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::parse(R"({"suite": "bsp", "sede": 1})")),
                         doctest::Contains("unknown config key \"sede\""), CampaignError);
    CHECK_THROWS_WITH_AS(
        config_from_json(nlohmann::json::parse(R"({"suite": "bsp", "source": {"sed": 1}})")),
        doctest::Contains("unknown source key \"sed\""), CampaignError);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::parse(R"({"suite": 3})")),
                         doctest::Contains("malformed config"), CampaignError);
    CHECK_THROWS_WITH_AS(
        config_from_json(nlohmann::json::parse(R"({"suite": "bsp", "trace_tolerance": 0})")),
        doctest::Contains("tolerances must be positive"), CampaignError);
}

TEST_CASE("config files report their parse position") {
    Scratch scratch("config_files");
    const std::string broken = write_text(scratch.path("broken.json"),
                                          "{\n  \"suite\": \"bsp\"\n  \"source\": {}\n}\n");
    try {
        load_config(broken);
        FAIL("expected a parse error");
    } catch (const CampaignError& e) {
        CHECK(e.file() == broken);
        CHECK(e.line() == 3);  // the missing comma surfaces on line 3
        CHECK(std::string(e.what()).rfind(broken + ":3:", 0) == 0);
    }

    try {
        load_config(scratch.path("absent.json"));
        FAIL("expected a file error");
    } catch (const CampaignError& e) {
        CHECK(e.file() == scratch.path("absent.json"));
        CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
    }

    const std::string good = write_text(scratch.path("good.json"),
                                        R"({"suite": "majorization", "source": {"seed": 4}})");
    CHECK(load_config(good).suite == Suite::majorization);

    // a config-level defect in a file gains the file name
    const std::string odd = write_text(scratch.path("odd.json"), R"({"suite": "nope"})");
    try {
        load_config(odd);
        FAIL("expected a config error");
    } catch (const CampaignError& e) {
        CHECK(e.file() == odd);
        CHECK(std::string(e.what()).find("unknown suite") != std::string::npos);
    }
}

TEST_CASE("generated corpora require a seed, nu0 does not") {
    CampaignConfig cfg;
    cfg.suite = Suite::bsp;
    cfg.source.count = 1;
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("seed is mandatory"), CampaignError);

    CampaignConfig nu0;
    nu0.suite = Suite::nu0;
    nu0.source.lambda_max = 64.0;
    const CampaignResult result = run_campaign(nu0);
    REQUIRE(result.runs.size() == 1);
    REQUIRE(result.runs[0].report.size() == 1);
    const CheckRecord& rec = result.runs[0].report.records[0];
    CHECK(rec.id == "nu0");
    CHECK(rec.claim == "lattice-counting-sup-bound");
    CHECK(rec.status == CheckStatus::pass);
    CHECK(rec.lhs == 4.0);  // the scan sup is attained exactly
    CHECK(rec.rhs == nu0_closed_bound(2));
    CHECK(result.exit_code() == 0);
    CHECK(result.runs[0].json_path.empty());  // no out directory, no files

    CampaignConfig filed;
    filed.suite = Suite::nu0;
    filed.source.file = "anything.json";
    CHECK_THROWS_WITH_AS(run_campaign(filed), doctest::Contains("no instance file"), CampaignError);

    CampaignConfig allfile;
    allfile.suite = Suite::all;
    allfile.source.file = "anything.json";
    CHECK_THROWS_WITH_AS(run_campaign(allfile), doctest::Contains("select one suite"),
                         CampaignError);
}

TEST_CASE("shape validation runs before any suite") {
    Scratch scratch("validation");
    CampaignConfig cfg;
    cfg.source.seed = 1;

    cfg.suite = Suite::sobolev;
    cfg.source.n = 2;
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("at least 3"), CampaignError);
    cfg.source.n.reset();

    cfg.suite = Suite::bsp;
    cfg.source.count = -1;
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("nonnegative"), CampaignError);
    cfg.source.count = 1;

    cfg.suite = Suite::nu0;
    cfg.source.lambda_max = 0.5;
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("lambda_max"), CampaignError);
    cfg.source.lambda_max.reset();

    cfg.suite = Suite::cwikel;
    cfg.trace_tolerance = -1.0;
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("tolerances must be positive"),
                         CampaignError);
    cfg.trace_tolerance = 1e-2;

    // `all` validates every suite's shape up front: sobolev rejects n=2, so
    // nothing runs and nothing is written
    cfg.suite = Suite::all;
    cfg.source.n = 2;
    cfg.out_dir = scratch.path("never");
    CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("at least 3"), CampaignError);
    CHECK_FALSE(fs::exists(cfg.out_dir));
}

TEST_CASE("an empty instance file yields an empty clean report") {
    Scratch scratch("empty");
    const std::string insts = write_text(scratch.path("insts.json"), "[]\n");
    CampaignConfig cfg;
    cfg.suite = Suite::cwikel;
    cfg.source.file = insts;
    cfg.out_dir = scratch.path("out");

    const CampaignResult result = run_campaign(cfg);
    REQUIRE(result.runs.size() == 1);
    CHECK(result.runs[0].report.size() == 0);
    CHECK(result.clean());
    CHECK(result.exit_code() == 0);
    CHECK(summarize_report("cwikel", result.runs[0].report) ==
          "cwikel: 0 pass, 0 fail, 0 inconclusive, 0 boundary-sensitive");

    const nlohmann::json wrapper = parse_file(result.runs[0].json_path);
    CHECK(wrapper.at("suite") == "cwikel");
    CHECK(wrapper.at("source").at("file") == insts);
    CHECK(wrapper.at("report").at("checks").empty());
    CHECK(slurp(result.runs[0].csv_path) == "id,status,margin\n");
}

TEST_CASE("file sourced instances round trip through every suite format") {
    Scratch scratch("files");
    CampaignConfig cfg;
    cfg.out_dir.clear();

    SUBCASE("schrodinger instances") {
        nlohmann::json arr = nlohmann::json::array();
        arr.push_back(to_json(tiny_schrodinger()));
        cfg.suite = Suite::bsp;
        cfg.source.file = write_text(scratch.path("bsp.json"), arr.dump());
        const CampaignResult result = run_campaign(cfg);
        REQUIRE(result.runs.size() == 1);
        CHECK(result.runs[0].report.size() == 11);  // one record per default grid point
        CHECK(result.runs[0].report.count(CheckStatus::pass) == 11);
        CHECK(result.runs[0].report.records[0].id == "bsp/0/lambda[0]");
    }

    SUBCASE("product operator instances") {
        nlohmann::json arr = nlohmann::json::array();
        arr.push_back(to_json(tiny_cwikel(2.0)));
        arr.push_back(to_json(tiny_cwikel(3.0)));
        cfg.suite = Suite::cwikel;
        cfg.source.file = write_text(scratch.path("cw.json"), arr.dump());
        const CampaignResult result = run_campaign(cfg);
        const VerificationReport& rep = result.runs[0].report;
        REQUIRE(rep.size() == 3);  // exact-at-two record, then weak and strong
        CHECK(rep.count(CheckStatus::pass) == 3);
        CHECK(rep.records[0].id == "cwikel/0");
        CHECK(rep.records[1].id == "cwikel/1/weak");
        CHECK(rep.records[2].id == "cwikel/1/strong");
    }

    SUBCASE("element and symbol pairs") {
        const ThetaMatrix theta = ThetaMatrix::two_d(0.3);
        FourierElement x(theta);
        x.add_coeff({1, 0}, cplx{0.5, 0.25});
        x.add_coeff({0, 1}, 1.0);
        nlohmann::json pair;
        pair["x"] = to_json(x);
        pair["g"] = nlohmann::json::array(
            {{{"k", {0, 0}}, {"re", 1.0}, {"im", 0.0}}, {{"k", {2, 1}}, {"re", 0.0}, {"im", 0.75}}});
        cfg.suite = Suite::majorization;
        cfg.source.file = write_text(scratch.path("maj.json"), nlohmann::json::array({pair}).dump());
        const CampaignResult result = run_campaign(cfg);
        const VerificationReport& rep = result.runs[0].report;
        REQUIRE(rep.size() == 3);
        CHECK(rep.records[0].id == "majorization/0/hs");
        CHECK(rep.records[1].id == "majorization/0/partial-sums");
        CHECK(rep.records[2].id == "majorization/0/totals");
        CHECK(rep.count(CheckStatus::pass) == 3);
    }

    SUBCASE("orthonormal families") {
        const ThetaMatrix theta = ThetaMatrix::zero(3);
        const nlohmann::json family =
            nlohmann::json::array({to_json(FourierElement::mode(theta, {1, 0, 0}))});
        cfg.suite = Suite::sobolev;
        cfg.source.n = 3;
        cfg.source.file =
            write_text(scratch.path("sob.json"), nlohmann::json::array({family}).dump());
        const CampaignResult result = run_campaign(cfg);
        REQUIRE(result.runs[0].report.size() == 1);
        CHECK(result.runs[0].report.records[0].status == CheckStatus::pass);
    }

    SUBCASE("defective instances name the file and index") {
        cfg.suite = Suite::cwikel;
        cfg.source.file = write_text(scratch.path("bad.json"), R"([{"x": 3}])");
        try {
            run_campaign(cfg);
            FAIL("expected an instance error");
        } catch (const CampaignError& e) {
            CHECK(e.file() == *cfg.source.file);
            CHECK(std::string(e.what()).find("instance 0") != std::string::npos);
        }

        cfg.source.file = write_text(scratch.path("notarray.json"), "{}");
        CHECK_THROWS_WITH_AS(run_campaign(cfg), doctest::Contains("JSON array"), CampaignError);
    }
}

TEST_CASE("campaigns are deterministic and all matches single suite runs") {
    Scratch scratch("determinism");
    CampaignConfig cfg;
    cfg.suite = Suite::all;
    cfg.source.seed = 5;
    cfg.source.count = 2;
    cfg.source.K_op = 2;
    cfg.source.K_tau = 3;
    cfg.source.lambda_max = 64.0;

    cfg.out_dir = scratch.path("a");
    const CampaignResult first = run_campaign(cfg);
    REQUIRE(first.runs.size() == 8);
    const Suite order[] = {Suite::bsp, Suite::borderline, Suite::clr,          Suite::lt,
                           Suite::sobolev, Suite::cwikel, Suite::majorization, Suite::nu0};
    for (std::size_t i = 0; i < 8; ++i) CHECK(first.runs[i].suite == order[i]);

    cfg.out_dir = scratch.path("b");
    run_campaign(cfg);
    for (const SuiteRun& run : first.runs) {
        const std::string leaf = to_string(run.suite) + ".report";
        CHECK(slurp(scratch.path("a/" + leaf + ".json")) ==
              slurp(scratch.path("b/" + leaf + ".json")));
        CHECK(slurp(scratch.path("a/" + leaf + ".csv")) == slurp(scratch.path("b/" + leaf + ".csv")));
    }

    // the bsp and cwikel slices of `all` equal the same-config single runs
    for (Suite s : {Suite::bsp, Suite::cwikel}) {
        cfg.suite = s;
        cfg.out_dir = scratch.path("single_" + to_string(s));
        run_campaign(cfg);
        const std::string leaf = to_string(s) + ".report.json";
        CHECK(slurp(cfg.out_dir + "/" + leaf) == slurp(scratch.path("a/" + leaf)));
    }
}

TEST_CASE("summaries tally reports deterministically") {
    Scratch scratch("summaries");

    SUBCASE("a single pass record") {
        VerificationReport rep;
        rep.add(check_le("solo", "some-claim", 1.0, 2.0, 0.0));
        const std::string path = scratch.path("solo.json");
        rep.write_json(path);
        std::size_t fails = 99;
        const std::string text = summarize({path}, &fails);
        CHECK(fails == 0);
        CHECK(text.find("1 pass, 0 fail") != std::string::npos);
        CHECK(text.find(path + ":") != std::string::npos);  // bare reports are labeled by path
        CHECK(text.find("total: 1 pass, 0 fail, 0 inconclusive, 0 boundary-sensitive") !=
              std::string::npos);
        CHECK(summarize({path}) == text);  // byte-for-byte stable
    }

    SUBCASE("mixed statuses and best constant probes") {
        VerificationReport rep;
        rep.add(check_le("m/0", "weak-bound", 0.5, 1.0, 0.0,
                         {{"observed_best_constant_lower_bound", 0.5}}));
        rep.add(check_le("m/1", "weak-bound", 2.0, 1.0, 1e-12,
                         {{"observed_best_constant_lower_bound", 0.75}}));
        rep.add(check_inconclusive("m/2", "weak-bound", "estimator-not-converged"));
        rep.add(check_boundary("m/3", "weak-bound", 1.0, 1.0));
        nlohmann::json wrapper;
        wrapper["suite"] = "demo";
        wrapper["report"] = rep.to_json();
        const std::string path = write_text(scratch.path("demo.json"), wrapper.dump(2) + "\n");

        std::size_t fails = 0;
        const std::string text = summarize({path}, &fails);
        CHECK(fails == 1);
        CHECK(text.find("demo: 1 pass, 1 fail, 1 inconclusive, 1 boundary-sensitive, "
                        "worst margin -1") != std::string::npos);
        CHECK(text.find("probe weak-bound: max observed ratio 0.75 over 2 records") !=
              std::string::npos);
        CHECK(text.find("total: 1 pass, 1 fail, 1 inconclusive, 1 boundary-sensitive") !=
              std::string::npos);
    }

    SUBCASE("defective inputs") {
        CHECK_THROWS_WITH_AS(summarize({scratch.path("absent.json")}),
                             doctest::Contains("cannot open"), CampaignError);
        const std::string notrep = write_text(scratch.path("notrep.json"), R"({"a": 1})");
        CHECK_THROWS_WITH_AS(summarize({notrep}), doctest::Contains("not a verification report"),
                             CampaignError);
        const std::string broken = write_text(scratch.path("broken.json"),
                                              R"({"checks": [{"status": "odd"}]})");
        CHECK_THROWS_WITH_AS(summarize({broken}), doctest::Contains("malformed report"),
                             CampaignError);
    }
}

TEST_CASE("exit codes distinguish failing campaigns from clean ones") {
    CampaignResult result;
    SuiteRun clean;
    clean.suite = Suite::majorization;
    clean.report.add(check_le("ok", "claim", 0.0, 1.0, 0.0));
    result.runs.push_back(clean);
    CHECK(result.clean());
    CHECK(result.exit_code() == 0);

    SuiteRun broken;
    broken.suite = Suite::cwikel;
    broken.report.add(check_le("bad", "claim", 2.0, 1.0, 1e-12));
    result.runs.push_back(broken);
    CHECK_FALSE(result.clean());
    CHECK(result.exit_code() == 1);
    CHECK(result.total(CheckStatus::fail) == 1);
    CHECK(result.total(CheckStatus::pass) == 1);
}

TEST_CASE("instance generators have the advertised structure") {
    Rng rng(11);
    const ThetaMatrix theta = random_theta(rng, 2);

    SUBCASE("one frequency elements are self-adjoint cosine bands") {
        for (int d = 0; d < 8; ++d) {
            const FourierElement x = one_frequency_element(rng, theta, 0.7, 1.0, 0.4);
            CHECK(x.support_size() == 3);
            CHECK(l1_distance(x, adjoint(x)) < 1e-12);
            const double c0 = x.coeff(LatticeVector{0, 0}).real();
            CHECK(c0 >= 0.7);
            CHECK(c0 <= 1.0);
            // GNS norm splits into the scalar part plus the band weight s^2
            CHECK(inner(x, x).real() == doctest::Approx(c0 * c0 + 0.16).epsilon(1e-12));
        }
        CHECK_THROWS_AS(one_frequency_element(rng, theta, 0.5, 1.0, 0.4), std::invalid_argument);
    }

    SUBCASE("separated symbols keep their support apart") {
        for (int d = 0; d < 8; ++d) {
            const Symbol g = separated_symbol(rng, 2, 3 + d % 4, 5);
            CHECK(g.size() == static_cast<std::size_t>(3 + d % 4));
            for (const auto& [k, gk] : g)
                for (const auto& [m, gm] : g) {
                    if (k == m) continue;
                    int apart = 0;
                    for (std::size_t j = 0; j < k.size(); ++j)
                        apart = std::max(apart, std::abs(k[j] - m[j]));
                    CHECK(apart >= 5);
                }
        }
        CHECK_THROWS_AS(separated_symbol(rng, 2, 10, 5), std::invalid_argument);
    }

    SUBCASE("generators are functions of the rng state") {
        Rng a(21), b(21);
        const ThetaMatrix ta = random_theta(a, 2);
        const ThetaMatrix tb = random_theta(b, 2);
        CHECK(ta == tb);
        CHECK(approx_equal(one_frequency_element(a, ta, 0.7, 1.0, 0.4),
                           one_frequency_element(b, tb, 0.7, 1.0, 0.4)));
        CHECK(separated_symbol(a, 2, 4, 5) == separated_symbol(b, 2, 4, 5));
    }
}

namespace {

int run_cli(const std::string& args, const std::string& capture) {
    const std::string cmd = std::string(NCT_VERIFY_BIN) + " " + args + " > " + capture + " 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("the command line front end wires campaigns together") {
    Scratch scratch("cli");
    const std::string log = scratch.path("cli_out.txt");

    CHECK(run_cli("", log) == 2);               // a subcommand is required
    CHECK(run_cli("verify spectra --seed 1", log) == 2);
    CHECK(slurp(log).find("unknown suite") != std::string::npos);
    CHECK(run_cli("verify bsp --count 1", log) == 2);  // generated corpus without a seed
    CHECK(slurp(log).find("seed is mandatory") != std::string::npos);

    const std::string out = scratch.path("reports");
    CHECK(run_cli("verify bsp --seed 3 --count 1 --K-op 2 --K-tau 2 --out " + out, log) == 0);
    const std::string text = slurp(log);
    CHECK(text.find("bsp: 11 pass, 0 fail") != std::string::npos);
    CHECK(text.find("wrote " + out + "/bsp.report.json") != std::string::npos);
    CHECK(fs::exists(out + "/bsp.report.csv"));

    CHECK(run_cli("summarize " + out + "/bsp.report.json", log) == 0);
    CHECK(slurp(log).find("total: 11 pass, 0 fail") != std::string::npos);
    CHECK(run_cli("summarize " + scratch.path("absent.json"), log) == 2);

    // flags override config fields; the report wrapper echoes the result
    const std::string cfg = write_text(scratch.path("cfg.json"),
                                       R"({"suite": "nu0", "source": {"lambda_max": 256}})");
    const std::string out2 = scratch.path("reports2");
    CHECK(run_cli("verify nu0 --config " + cfg + " --lambda-max 64 --out " + out2, log) == 0);
    const nlohmann::json wrapper = parse_file(out2 + "/nu0.report.json");
    CHECK(wrapper.at("source").at("lambda_max") == 64.0);

    // the dedicated nu0 subcommand prints the scan verdict
    CHECK(run_cli("nu0 --n 2 --lambda-max 64", log) == 0);
    CHECK(slurp(log).find("nu0(2) scan value 4 against bound 4 [pass]") != std::string::npos);
}
