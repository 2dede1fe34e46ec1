#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nct/report.hpp"

namespace nct {

/// Verification families the batch driver can run; `all` runs every one.
enum class Suite { bsp, borderline, clr, lt, sobolev, cwikel, majorization, nu0, all };

std::string to_string(Suite s);
Suite suite_from_string(const std::string& name);

/// Defect in a config or instance artifact.  `file` names the artifact when
/// one is involved and `line` is 1-based when the position is known, else 0;
/// what() carries the formatted "file:line: message" string.
class CampaignError : public std::runtime_error {
  public:
    CampaignError(std::string file, int line, const std::string& message);

    const std::string& file() const { return file_; }
    int line() const { return line_; }

  private:
    std::string file_;
    int line_ = 0;
};

/**
 * Where a suite's instances come from: a JSON file holding an array of
 * instances, or a seeded generator.  The seed is mandatory for generated
 * corpora (every campaign must be reproducible); unset shape fields fall
 * back to per-suite defaults documented at run_campaign.  `K_tau` also
 * applies to file-sourced corpora whose instance format carries no trace
 * radius (cwikel, sobolev); `lambda_max` is the nu0 scan window.
 */
struct InstanceSource {
    std::optional<std::string> file;
    std::optional<std::uint64_t> seed;
    std::optional<int> count;
    std::optional<int> n;
    std::optional<int> K_op;
    std::optional<int> K_tau;
    std::optional<double> lambda_max;
};

/**
 * One batch run.  `trace_tolerance` is the relative-change gate handed to the
 * trace estimator of the cwikel suite (the counting suites pin their own gate
 * as part of the verified statement).  An empty `out_dir` suppresses report
 * files; otherwise each executed suite writes `<out_dir>/<suite>.report.json`
 * and `<out_dir>/<suite>.report.csv`.
 */
struct CampaignConfig {
    Suite suite = Suite::all;
    InstanceSource source;
    double trace_tolerance = 1e-2;
    std::string out_dir;
};

/**
 * Config JSON:
 *   {"suite": "clr",
 *    "source": {"seed": 7, "count": 300, "n": 2, "K_op": 6, "K_tau": 8},
 *    "trace_tolerance": 1e-2, "out": "reports"}
 * or "source": {"file": "instances.json"}.  All fields except "suite" are
 * optional.  Malformed input raises CampaignError.
 */
CampaignConfig config_from_json(const nlohmann::json& j);

/// Reads and parses a config file; parse errors carry the file and line.
CampaignConfig load_config(const std::string& path);

struct SuiteRun {
    Suite suite = Suite::all;
    VerificationReport report;
    std::string json_path;  // empty when no files were written
    std::string csv_path;
};

struct CampaignResult {
    std::vector<SuiteRun> runs;

    bool clean() const;
    std::size_t total(CheckStatus s) const;
    /// 0 when no record failed, 1 otherwise.
    int exit_code() const { return clean() ? 0 : 1; }
};

/**
 * Runs the selected suite (or all of them) and writes reports.  Deterministic:
 * a fixed config produces identical corpora, records, and bytes on disk, and
 * each suite inside `all` equals a single-suite run with the same seed.
 *
 * Generated corpora (per-suite defaults for unset source fields):
 *   bsp           200 instances, n=2, K_op=3: V = -y*y, identity checked on
 *                 the default 11-point lambda grid.
 *   borderline    100 instances, n=2, K_op=3: V = -y*y, exponent regimes
 *                 cycling (1/2,1), (1,2), (2,2).
 *   clr           300 instances, n=2, K_op=6, K_tau=8: scalar-dominant wells,
 *                 same regime cycle.
 *   lt            100 instances, n=2, K_op=6, K_tau=6: p=2 wells, Riesz
 *                 exponents 1/2, 1, 2 per instance.
 *   sobolev       50 families, n=3, K_tau=4: sizes cycle 1..5; sizes 1-2 are
 *                 distinct unit modes, sizes 3-5 Gram-Schmidt random.
 *   cwikel        300 instances, n=2, K_tau=8: p cycles 3, 4, 2, 1/2, 1, 3/2.
 *   majorization  500 (x, g) pairs: Hilbert-Schmidt equality plus the
 *                 squared-singular-value majorization on each pair.
 *   nu0           one record: the scan sup of lambda^{-n/2} N0(lambda) over
 *                 [1, lambda_max] against the closed counting bound.
 *
 * Instances are verified in parallel; reports are assembled in instance
 * order.  Inconclusive records never abort a campaign.
 */
CampaignResult run_campaign(const CampaignConfig& config);

/// One fixed-format line: "<label>: <P> pass, <F> fail, <I> inconclusive,
/// <B> boundary-sensitive" plus a worst-margin clause when defined.
std::string summarize_report(const std::string& label, const VerificationReport& report);

/**
 * Tallies report files (as written by run_campaign, or bare report JSON)
 * into a deterministic text summary: one line per file, observed
 * best-constant probe maxima where present, and a total line.  Missing or
 * malformed files raise CampaignError.  When `fail_count` is given it
 * receives the number of fail records tallied, for exit-code decisions.
 */
std::string summarize(const std::vector<std::string>& report_files,
                      std::size_t* fail_count = nullptr);

}  // namespace nct
