#pragma once

#include <string>

#include <json.hpp>

#include "mkit/algebra.hpp"
#include "mkit/congruence.hpp"
#include "mkit/relation.hpp"

namespace mkit {

using Json = nlohmann::ordered_json;

/// {"name": str, "size": int, "operations": [{"name", "arity", "table"}]}
/// with the row-major table index convention.
FiniteAlgebra algebra_from_json(const Json& doc);
Json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra load_algebra_file(const std::string& path);

/// Relations serialize as one '0'/'1' string per row.
Json relation_to_json(const BinaryRelation& r);
BinaryRelation relation_from_json(const Json& doc);

/// "0 1|2|3": blocks sorted by least element, elements ascending.
std::string partition_to_string(const Congruence& c);

}  // namespace mkit
