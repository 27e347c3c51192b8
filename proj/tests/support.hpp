#pragma once

// Shared helpers for the unit tests: shorthand constructors and seeded
// random element generators.

#include "qclust/qlaurent.hpp"
#include "qclust/torus.hpp"

#include <random>

namespace qtest {

using qclust::ExponentPair;
using qclust::QLaurent;
using qclust::TorusElement;

inline QLaurent q(int half_exp, long long c = 1) { return QLaurent::monomial(half_exp, c); }
inline QLaurent Q(const char* text) { return qclust::parse_qlaurent(text); }
inline TorusElement T(const char* text) { return qclust::parse_torus(text); }
inline TorusElement mono(int a, int b, const QLaurent& c = QLaurent(1)) {
  return TorusElement::monomial(a, b, c);
}

inline QLaurent random_qlaurent(std::mt19937& rng, int max_terms = 4, int span = 6, int max_coef = 5) {
  std::uniform_int_distribution<int> nterms(0, max_terms), exp(-span, span), coef(-max_coef, max_coef);
  QLaurent f;
  for (int i = nterms(rng); i > 0; --i) f += QLaurent::monomial(exp(rng), coef(rng));
  return f;
}

inline TorusElement random_torus(std::mt19937& rng, int max_terms = 4, int span = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms), e(-span, span);
  TorusElement x;
  for (int i = nterms(rng); i > 0; --i) x += mono(e(rng), e(rng), random_qlaurent(rng, 3, 4, 3));
  return x;
}

}  // namespace qtest
