#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace nct {

enum class CheckStatus { pass, fail, inconclusive, boundary_sensitive };

std::string to_string(CheckStatus s);

/**
 * One verified claim.  `margin` is the slack toward passing: rhs - lhs for an
 * inequality check, -|lhs - rhs| for an equality check, so in every case
 * status == fail implies margin < -tolerance and a pass has margin >= -tol.
 * `claim` names the mathematical statement being checked with a stable
 * identifier; `diagnostics` carries free-form context (ratios, radii, reasons).
 */
struct CheckRecord {
    std::string id;
    std::string claim;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::pass;
    nlohmann::json diagnostics;
};

/// lhs <= rhs up to tolerance; margin = rhs - lhs.
CheckRecord check_le(std::string id, std::string claim, double lhs, double rhs, double tolerance,
                     nlohmann::json diagnostics = nlohmann::json::object());

/// lhs == rhs up to tolerance; margin = -|lhs - rhs| (0 at exact equality).
CheckRecord check_eq(std::string id, std::string claim, double lhs, double rhs, double tolerance,
                     nlohmann::json diagnostics = nlohmann::json::object());

/// Exact integer equality, zero tolerance.
CheckRecord check_count(std::string id, std::string claim, long long lhs, long long rhs,
                        nlohmann::json diagnostics = nlohmann::json::object());

/// The claim could not be evaluated reliably; `reason` is mandatory.
CheckRecord check_inconclusive(std::string id, std::string claim, std::string reason,
                               nlohmann::json diagnostics = nlohmann::json::object());

/// A count sat within the guard band of its threshold; excluded from pass/fail.
CheckRecord check_boundary(std::string id, std::string claim, double lhs, double rhs,
                           nlohmann::json diagnostics = nlohmann::json::object());

struct VerificationReport {
    std::vector<CheckRecord> records;

    void add(CheckRecord r);
    void append(const VerificationReport& other);

    std::size_t count(CheckStatus s) const;
    std::size_t size() const { return records.size(); }
    /// True when no record failed (inconclusive and boundary ones allowed).
    bool clean() const;
    /// Smallest margin over pass/fail records; +infinity when there are none.
    double worst_margin() const;

    /// Sorted-key JSON with a summary block; content-addressable (no clocks).
    nlohmann::json to_json() const;
    /// Flat rows "id,status,margin", one line per record plus a header.
    std::string to_csv() const;

    void write_json(const std::string& path) const;
    void write_csv(const std::string& path) const;
};

}  // namespace nct
