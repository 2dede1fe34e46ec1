#include "nct/algebra_json.hpp"

#include <stdexcept>

namespace nct {

using nlohmann::json;

json theta_to_json(const ThetaMatrix& theta) {
    json rows = json::array();
    for (int j = 0; j < theta.dim(); ++j) {
        json row = json::array();
        for (int l = 0; l < theta.dim(); ++l) row.push_back(theta.at(j, l));
        rows.push_back(std::move(row));
    }
    return rows;
}

ThetaMatrix theta_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("theta: expected non-empty array of rows");
    const int n = static_cast<int>(j.size());
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw std::invalid_argument("theta: ragged matrix");
        for (const auto& v : row) entries.push_back(v.get<double>());
    }
    return ThetaMatrix(n, std::move(entries));
}

json to_json(const FourierElement& x) {
    json j;
    j["n"] = x.dim();
    j["theta"] = theta_to_json(x.theta());
    json coeffs = json::array();
    for (const auto& [k, c] : x.coeffs()) {
        json entry;
        entry["k"] = k;
        entry["re"] = c.real();
        entry["im"] = c.imag();
        coeffs.push_back(std::move(entry));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

FourierElement element_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    ThetaMatrix theta = theta_from_json(j.at("theta"));
    if (theta.dim() != n) throw std::invalid_argument("element: n does not match theta dimension");
    FourierElement x(theta);
    for (const auto& entry : j.at("coeffs")) {
        LatticeVector k = entry.at("k").get<LatticeVector>();
        if (static_cast<int>(k.size()) != n) throw std::invalid_argument("element: coefficient index dimension mismatch");
        x.add_coeff(k, cplx(entry.at("re").get<double>(), entry.at("im").get<double>()));
    }
    return x;
}

}  // namespace nct
