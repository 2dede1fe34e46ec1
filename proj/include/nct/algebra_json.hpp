#pragma once

#include "json.hpp"
#include "nct/algebra.hpp"

namespace nct {

/**
 * Canonical instance format:
 *   {"n": int, "theta": [[..]], "coeffs": [{"k": [int,...], "re": f, "im": f}, ...]}
 * coeffs are emitted in the element's deterministic (lexicographic) order.
 */
nlohmann::json to_json(const FourierElement& x);
FourierElement element_from_json(const nlohmann::json& j);

nlohmann::json theta_to_json(const ThetaMatrix& theta);
ThetaMatrix theta_from_json(const nlohmann::json& j);

}  // namespace nct
