#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qell {

using Json = nlohmann::json;

struct SchemaReport {
  bool ok = true;
  std::vector<std::string> errors;  // "<json pointer>: message"
};

/// Strict validation against one of the shipped schemas ("group", "cocycle",
/// "gset", "class", "request"), followed by the range checks a schema cannot
/// express (table entries inside the table, action entries inside the set).
SchemaReport schema_validate(const Json& doc, std::string_view schema_name);

/// Names of the shipped schemas.
std::vector<std::string> schema_names();
const Json& schema_document(std::string_view schema_name);

/// "p/q" with q > 0 and gcd(p,q) = 1; qz additionally needs 0 <= p < q.
bool is_reduced_fraction(const std::string& s, bool qz);

}  // namespace qell
