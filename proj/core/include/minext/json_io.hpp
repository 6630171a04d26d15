#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "minext/measure.hpp"

namespace minext {

using Json = nlohmann::json;

// {"d": int, "atoms": [{"x": [real,...], "re": real, "im": real}]}
Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

// {"d": int, "data": [{"m": [int,...], "re": real, "im": real}]}
Json spectral_to_json(const SpectralData& data);
SpectralData spectral_from_json(const Json& j);

// {"d": int, "coefficients": [{"m": [int,...], "re": real, "im": real}]}
Json trig_to_json(const TrigPolynomial& f);
TrigPolynomial trig_from_json(const Json& j);

// [[x1, ..., xd], ...]
Json points_to_json(const std::vector<TorusPoint>& points);
std::vector<TorusPoint> points_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace minext
