#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qell/chern.hpp"
#include "qell/schema.hpp"

namespace qell {

struct GroupInput {
  GroupPtr group;
  /// Orders of the cyclic factors when the group is a builtin product of
  /// cyclic groups (mixed-radix indexing); empty otherwise.
  std::vector<int> cyclic_factors;
  Json spec;  // canonical JSON form
};

// Command-line shorthands to canonical JSON documents. Arguments starting
// with '{' are inline JSON, '@path' reads a file.
//   group:   builtin:NAME
//   cocycle: zero | cyclic:n:k | triple:i:j:k | explicit:i,j,k=p/q;...
//   space:   pt | regular | trivial:n
Json group_spec_from_arg(const std::string& arg);
Json cocycle_spec_from_arg(const std::string& arg);
Json space_spec_from_arg(const std::string& arg);
Json class_spec_from_arg(const std::string& arg);

/// All builders validate against the schema first and throw InputError with
/// the diagnostics.
GroupInput build_group(const Json& spec);
/// The cochain described by spec; it is not checked to be a cocycle here.
Cochain3 build_cocycle(const Json& spec, const GroupInput& g);
GSet build_gset(const Json& spec, const GroupPtr& g);
QEllClass build_class(const Json& spec, const QEllSpacePtr& s);

Json to_json(QZ x);
Json to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const Json& j);
Json to_json(const CharacterTable& t);
Json to_json(const Cochain2& c);  // nonzero entries, ambient indices
Json to_json(const QZCharacter& c);
Json to_json(const EllFunction& f);
EllFunction ell_function_from_json(const Json& j);
Json to_json(const EllClass& c);
Json to_json(const QEllClass& c);
Json to_json(const RankReport& r);
Json to_json(const InvariantRankReport& r);
Json to_json(const GradedRepModule& m);
Json to_json(const SL2Matrix& m);

std::string pair_key(CommutingPair p);

}  // namespace qell
