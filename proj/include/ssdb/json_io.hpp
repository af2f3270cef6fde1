#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ssdb/functional.hpp"
#include "ssdb/relation.hpp"
#include "ssdb/subspace.hpp"

namespace ssdb::io {

using nlohmann::json;

json to_json(const Vec& v);
json to_json(const Mat& m);  // row-major: list of rows
Vec vec_from_json(const json& j);
Mat mat_from_json(const json& j);

/// Space document: {"dim": n, "pairing": [[...], ...]} or
/// {"builder": "hilbert"|"anti_hilbert"|"paper_r3"|"product", "n": k}.
Space space_from_json(const json& doc, const Tolerance& tol = {});

/// Subspace document: {"space": <space doc>, "generators": [[...], ...]}.
/// `fallback_space` is used when the document omits "space"; if both are
/// present they must agree.
Subspace subspace_from_json(const json& doc, const Tolerance& tol = {},
                            const std::optional<Space>& fallback_space = std::nullopt);

/// Point-set document: {"space": <space doc>, "points": [[...], ...]}.
PointSet pointset_from_json(const json& doc, const Tolerance& tol = {},
                            const std::optional<Space>& fallback_space = std::nullopt);

/// Functional document:
///   {"kind": "qA", "space"?: ..., "subspace": {...}}
///   {"kind": "quadratic", "space": ..., "H": [[...]], "l": [...],
///    "kappa": r, "dom": {"offset"?: [...], "generators": [[...]]}}
QuadraticFunctional functional_from_json(const json& doc, const Tolerance& tol = {},
                                         const std::optional<Space>& fallback_space = std::nullopt);

/// Relation document: {"n": k, "graph": [[...], ...]} or
/// {"n": k, "pairs": [[x..., xstar...], ...]}.
LinearRelation relation_from_json(const json& doc, const Tolerance& tol = {});

/// FNV-1a content hash of a canonical document dump, as fixed-width hex.
std::uint64_t fnv1a(const std::string& bytes);
std::string digest_hex(const json& doc);

}  // namespace ssdb::io
