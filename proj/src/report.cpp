#include "nct/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <utility>

namespace nct {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
        case CheckStatus::boundary_sensitive: return "boundary-sensitive";
    }
    throw std::logic_error("to_string: unknown status");
}

CheckRecord check_le(std::string id, std::string claim, double lhs, double rhs, double tolerance,
                     nlohmann::json diagnostics) {
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tolerance = tolerance;
    r.status = r.margin >= -tolerance ? CheckStatus::pass : CheckStatus::fail;
    r.diagnostics = std::move(diagnostics);
    return r;
}

CheckRecord check_eq(std::string id, std::string claim, double lhs, double rhs, double tolerance,
                     nlohmann::json diagnostics) {
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = -std::abs(lhs - rhs);
    r.tolerance = tolerance;
    r.status = r.margin >= -tolerance ? CheckStatus::pass : CheckStatus::fail;
    r.diagnostics = std::move(diagnostics);
    return r;
}

CheckRecord check_count(std::string id, std::string claim, long long lhs, long long rhs,
                        nlohmann::json diagnostics) {
    return check_eq(std::move(id), std::move(claim), static_cast<double>(lhs),
                    static_cast<double>(rhs), 0.0, std::move(diagnostics));
}

CheckRecord check_inconclusive(std::string id, std::string claim, std::string reason,
                               nlohmann::json diagnostics) {
    if (reason.empty()) throw std::invalid_argument("check_inconclusive: reason required");
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.status = CheckStatus::inconclusive;
    r.diagnostics = std::move(diagnostics);
    r.diagnostics["reason"] = std::move(reason);
    return r;
}

CheckRecord check_boundary(std::string id, std::string claim, double lhs, double rhs,
                           nlohmann::json diagnostics) {
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.status = CheckStatus::boundary_sensitive;
    r.diagnostics = std::move(diagnostics);
    return r;
}

void VerificationReport::add(CheckRecord r) { records.push_back(std::move(r)); }

void VerificationReport::append(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
}

std::size_t VerificationReport::count(CheckStatus s) const {
    std::size_t c = 0;
    for (const auto& r : records)
        if (r.status == s) ++c;
    return c;
}

bool VerificationReport::clean() const { return count(CheckStatus::fail) == 0; }

double VerificationReport::worst_margin() const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : records)
        if (r.status == CheckStatus::pass || r.status == CheckStatus::fail)
            worst = std::min(worst, r.margin);
    return worst;
}

namespace {

nlohmann::json record_to_json(const CheckRecord& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["claim"] = r.claim;
    j["status"] = to_string(r.status);
    if (r.status != CheckStatus::inconclusive) {
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["margin"] = r.margin;
        j["tolerance"] = r.tolerance;
    }
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    return j;
}

std::string format_margin(double m) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", m);
    return buf;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : records) checks.push_back(record_to_json(r));
    nlohmann::json summary;
    summary["pass"] = count(CheckStatus::pass);
    summary["fail"] = count(CheckStatus::fail);
    summary["inconclusive"] = count(CheckStatus::inconclusive);
    summary["boundary-sensitive"] = count(CheckStatus::boundary_sensitive);
    if (std::isfinite(worst_margin())) summary["worst_margin"] = worst_margin();
    nlohmann::json j;
    j["checks"] = checks;
    j["summary"] = summary;
    return j;
}

std::string VerificationReport::to_csv() const {
    std::string out = "id,status,margin\n";
    for (const auto& r : records) {
        out += r.id;
        out += ',';
        out += to_string(r.status);
        out += ',';
        if (r.status == CheckStatus::inconclusive)
            out += "nan";
        else
            out += format_margin(r.margin);
        out += '\n';
    }
    return out;
}

void VerificationReport::write_json(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_json: cannot open " + path);
    f << to_json().dump(2) << '\n';
}

void VerificationReport::write_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << to_csv();
}

}  // namespace nct
