#pragma once

// JSON forms of the value types. Each to_json has a matching from_json so a
// JSON dump parses back to an equal value.

#include "qclust/labels.hpp"
#include "qclust/report.hpp"
#include "qclust/triangular.hpp"

#include <json.hpp>

namespace qclust {

using Json = nlohmann::ordered_json;

/// [{"e": half exponent, "c": decimal string}] sorted by e.
Json to_json(const QLaurent& f);
QLaurent qlaurent_from_json(const Json& j);

/// {"terms": [{"a", "b", "coef"}]} sorted lex by (a,b).
Json to_json(const TorusElement& x);
TorusElement torus_from_json(const Json& j);

/// {"text": "X[3]^2*X[4]", "kind": "cluster", "m", "a", "b"} or {"text", "kind": "F"|"S"|"delta", "n"} or {"text": "1", "kind": "one"}.
Json to_json(const BasisLabel& l);
BasisLabel label_from_json(const Json& j);

/// [{"label", "coef"}] in canonical label order.
Json to_json(const FormalCombination& c);
FormalCombination combination_from_json(const Json& j);

/// [{"a", "b", "coef"}] sorted lex.
Json to_json(const EExpansion& e);
EExpansion eexpansion_from_json(const Json& j);

/// [{"case", "m", "n", "frame", "status", "diff"[, "detail"]}].
Json to_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace qclust
