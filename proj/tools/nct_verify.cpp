#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nct/campaign.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Seeded verification campaigns for spectral estimates on noncommutative tori"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand(
        "verify", "Run one verification suite (or all) over a seeded or file-based corpus");
    std::string suite_name;
    verify->add_option("suite", suite_name,
                       "bsp | borderline | clr | lt | sobolev | cwikel | majorization | nu0 | all")
        ->required();
    std::string config_path;
    auto* config_opt =
        verify->add_option("--config", config_path, "JSON campaign config; flags override it");
    std::uint64_t seed = 0;
    auto* seed_opt =
        verify->add_option("--seed", seed, "corpus seed (mandatory for generated corpora)");
    int count = 0;
    auto* count_opt = verify->add_option("--count", count, "number of instances to generate");
    int dim = 0;
    auto* dim_opt = verify->add_option("--n", dim, "torus dimension");
    int k_op = 0;
    auto* k_op_opt = verify->add_option("--K-op", k_op, "operator box radius");
    int k_tau = 0;
    auto* k_tau_opt = verify->add_option("--K-tau", k_tau, "trace estimator radius");
    double lambda_max = 0.0;
    auto* lambda_max_opt = verify->add_option("--lambda-max", lambda_max, "nu0 scan window");
    std::string instances;
    auto* instances_opt = verify->add_option(
        "--instances", instances, "JSON file holding an instance array (replaces the generator)");
    double tol = 0.0;
    auto* tol_opt =
        verify->add_option("--tol", tol, "trace-estimator relative-change gate (cwikel suite)");
    std::string out_dir;
    auto* out_opt =
        verify->add_option("--out", out_dir, "directory for <suite>.report.{json,csv} files");

    auto* nu0 = app.add_subcommand(
        "nu0", "Scan sup of lambda^{-n/2} N0(lambda) against the closed counting bound");
    int nu0_n = 2;
    nu0->add_option("--n", nu0_n, "lattice dimension")->capture_default_str();
    double nu0_lambda_max = 0.0;
    auto* nu0_lambda_max_opt = nu0->add_option("--lambda-max", nu0_lambda_max,
                                               "scan window (default 1e4 for n=2, 1e3 otherwise)");
    std::string nu0_out;
    auto* nu0_out_opt = nu0->add_option("--out", nu0_out, "directory for nu0.report.{json,csv}");

    auto* summarize_cmd = app.add_subcommand(
        "summarize", "Tally report files into a text summary; exits 1 when they hold failures");
    std::vector<std::string> files;
    summarize_cmd->add_option("files", files, "report JSON files written by verify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help and version are clean exits, usage errors are not
    }

    try {
        if (verify->parsed()) {
            nct::CampaignConfig cfg;
            if (config_opt->count()) cfg = nct::load_config(config_path);
            cfg.suite = nct::suite_from_string(suite_name);
            if (seed_opt->count()) cfg.source.seed = seed;
            if (count_opt->count()) cfg.source.count = count;
            if (dim_opt->count()) cfg.source.n = dim;
            if (k_op_opt->count()) cfg.source.K_op = k_op;
            if (k_tau_opt->count()) cfg.source.K_tau = k_tau;
            if (lambda_max_opt->count()) cfg.source.lambda_max = lambda_max;
            if (instances_opt->count()) cfg.source.file = instances;
            if (tol_opt->count()) cfg.trace_tolerance = tol;
            if (out_opt->count()) cfg.out_dir = out_dir;

            const nct::CampaignResult result = nct::run_campaign(cfg);
            for (const auto& run : result.runs) {
                std::cout << nct::summarize_report(nct::to_string(run.suite), run.report) << "\n";
                if (!run.json_path.empty())
                    std::cout << "wrote " << run.json_path << "\nwrote " << run.csv_path << "\n";
            }
            return result.exit_code();
        }
        if (nu0->parsed()) {
            nct::CampaignConfig cfg;
            cfg.suite = nct::Suite::nu0;
            cfg.source.n = nu0_n;
            if (nu0_lambda_max_opt->count()) cfg.source.lambda_max = nu0_lambda_max;
            if (nu0_out_opt->count()) cfg.out_dir = nu0_out;

            const nct::CampaignResult result = nct::run_campaign(cfg);
            const auto& run = result.runs.front();
            const auto& record = run.report.records.front();
            std::cout << "nu0(" << nu0_n << ") scan value " << record.lhs << " against bound "
                      << record.rhs << " [" << nct::to_string(record.status) << "]\n";
            if (!run.json_path.empty())
                std::cout << "wrote " << run.json_path << "\nwrote " << run.csv_path << "\n";
            return result.exit_code();
        }
        std::size_t fails = 0;
        std::cout << nct::summarize(files, &fails);
        return fails == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
