#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "capra/capra_l0.hpp"
#include "capra/vec.hpp"
#include "capra/xreal.hpp"

namespace capra::io {

using json = nlohmann::ordered_json;

/// Reads a vector from a file. ".json" holds a JSON array of numbers;
/// anything else is whitespace/newline-separated text.
Vec read_vector_file(const std::string& path);
void write_vector_file(const std::string& path, const Vec& x);

/// Extended reals encode finite values as JSON numbers and the infinities
/// as the strings "+inf" / "-inf".
json xreal_to_json(const XReal& v);
XReal xreal_from_json(const json& j);

/// Sample sets as a JSON list of vectors.
json sample_set_to_json(const std::vector<Vec>& pts);
std::vector<Vec> sample_set_from_json(const json& j);

json conjugate_report_to_json(const ConjugateReport& r);

/// Loads a config file: ".json" parsed as JSON; ".toml" parsed as the flat
/// subset key = value with strings, numbers and booleans ('#' comments,
/// "[section]" headers flattening to dotted keys).
json read_config_file(const std::string& path);

}  // namespace capra::io
