#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cohfreeze/freeze.hpp"
#include "cohfreeze/oracle.hpp"
#include "cohfreeze/xfreeze.hpp"

namespace cohfreeze {

using json = nlohmann::json;

/// Parses text as JSON. Malformed input raises ParseError naming `source`
/// and the 1-based line and column.
json parse_json(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a file; a missing file is a ParseError as well.
json load_json_file(const std::string& path);

/// {"dim": d, "entries": [[re, im], ...]}, row-major.
json to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

/// {"dim": d, "kraus": [{"perm": [f(1), ..., f(d)], "coeffs": [[re, im], ...]}, ...]}.
/// Readers also accept {"kraus_dense": [matrix, ...]} where each matrix is a
/// list of rows of [re, im] pairs.
json to_json(const SioChannel& phi);
SioChannel channel_from_json(const json& j);

json to_json(const FreezeReport& r);
json to_json(const XDecomposition& x);
json to_json(const BlockKrausForm& f);
json to_json(const SweepResult& r);

}  // namespace cohfreeze
