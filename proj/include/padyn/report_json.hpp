#pragma once

// JSON forms of the report types. Norms are strings "p^k" (or "0"), balls carry
// their center and radius exponent.

#include <json.hpp>

#include "padyn/fixed_points.hpp"
#include "padyn/gibbs.hpp"
#include "padyn/literal.hpp"
#include "padyn/symbolic.hpp"

namespace padyn {

nlohmann::json to_json(const PNorm& norm);
nlohmann::json to_json(const Ball& ball);
nlohmann::json to_json(const FixedPointLemma& lemma);
nlohmann::json to_json(const FixedPointReport& report);
nlohmann::json to_json(const BasinStatus& status);
nlohmann::json to_json(const RepellerGeometry& geometry);
nlohmann::json to_json(const HVector& h);
nlohmann::json to_json(const SystemResidual& residual);
nlohmann::json to_json(const CompatibilityReport& report, bool with_entries = true);

} // namespace padyn
