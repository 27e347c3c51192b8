#pragma once

// Element expressions for the command line and the Python module:
//   factor ('*' factor)*
//   factor := atom ('^' k)?     k >= 0
//   atom   := X[m] | F[n] | S[n] | delta | q | q^e | q^(e/2) | integer
// Products associate left to right and keep the written order.

#include "qclust/cluster.hpp"

#include <string_view>

namespace qclust {

/// Throws std::invalid_argument on malformed input.
TorusElement evaluate_expression(std::string_view text, Frame frame);

}  // namespace qclust
