#pragma once

#include <string>
#include <string_view>

#include "pluriminimal/family.hpp"
#include "pluriminimal/relations.hpp"
#include "pluriminimal/weierstrass.hpp"

namespace pluri {

/// {"arity": m, "basepoint": [[re, im], ...], "constant": [...],
///  "forms": [{"coeffs": ["<expr>", ...]}, ...], "primitives": [...] | null}
std::string to_json(const WeierstrassData& data);
/// Throws FormatError for schema problems and ParseError for bad expressions.
WeierstrassData data_from_json(std::string_view text);

/// {"f": "<expr in z1>", "g": "<expr in z1>"}
std::string to_json(const FamilyInput& input);
FamilyInput family_from_json(std::string_view text);

/// {"m": m, "n": n, "gamma": [[[re_num, re_den, im_num, im_den], ...], ...]}
std::string to_json(const QuadraticRelation& relation);
QuadraticRelation relation_from_json(std::string_view text);

}  // namespace pluri
