#pragma once

#include "omack/mackey.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace omack {

using Json = nlohmann::json; // object keys are kept sorted: canonical output

std::string canonical_dump(const Json& j);
uint64_t content_hash(const Json& j); // FNV-1a over the canonical dump

// {"order": n, "mul": [[...]], "names": [...]}; identity is reindexed to 0
// on load and the applied permutation is recorded on the group.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

// A group reference: a family name ("cyclic:6"), a path to a group file,
// or an inline group object.
FiniteGroup resolve_group(const Json& ref);
FiniteGroup resolve_group_spec(const std::string& name_or_path);

// {"group": <ref>, "pairs": [[k, h], ...]} with non-reflexive generators.
Json ts_to_json(const TransferSystem& ts);
struct TsLoadResult {
    TransferSystem ts;
    std::vector<std::pair<int, int>> given;
    std::vector<std::pair<int, int>> added; // pairs the closure added
};
TsLoadResult ts_from_json(const Json& j, LatticePtr lat = nullptr);

// {"level": id, "coeffs": {"id": "p/q"}}
Json element_to_json(const BurnsideElement& x);
BurnsideElement element_from_json(const Json& j);

// {"classes": [{"rep": id, "members": [...]}], "hull": {"id": id}}
Json partition_to_json(const InsepPartition& p);

Json qmatrix_to_json(const QMatrix& m);
QMatrix qmatrix_from_json(const Json& j);

// {"ts": <ts json>, "levels": {"id": dim}, "res": {"L>K": [[..]]},
//  "tr": {"K>L": [[..]]}, "conj": {"g,L": [[..]]}}
// Conjugation may be given on a generating set; it is extended by
// composition on load.
Json mackey_to_json(const MackeyFunctor& m);
MackeyFunctor mackey_from_json(const Json& j, LatticePtr lat = nullptr);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace omack
