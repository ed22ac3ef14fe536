#pragma once

#include <json.hpp>

#include "wavelife/lifespan.hpp"
#include "wavelife/model.hpp"
#include "wavelife/norms.hpp"
#include "wavelife/sweep.hpp"
#include "wavelife/theory.hpp"

namespace wavelife {

// JSON views of result records. NaN values serialize as null.

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const NormReport& report);
nlohmann::json to_json(const LifespanRecord& record);
nlohmann::json to_json(const LifespanPrediction& prediction);
nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const NonlinearitySpec& spec);

/// UTC time in ISO-8601, the only non-deterministic field of any output.
std::string utc_timestamp();

}  // namespace wavelife
