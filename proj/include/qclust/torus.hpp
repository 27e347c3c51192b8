#pragma once

// The based quantum torus on two generators: finite Z[q^{+-1/2}]-combinations
// of normalized monomials X^(a,b) = q^{-ab/2} X1^a X2^b, multiplied by
//   X^(a,b) X^(c,d) = q^{(ad-bc)/2} X^(a+c, b+d).

#include "qclust/qlaurent.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qclust {

struct ExponentPair {
  int a = 0;
  int b = 0;

  friend auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
  friend ExponentPair operator+(ExponentPair x, ExponentPair y) { return {x.a + y.a, x.b + y.b}; }
  friend ExponentPair operator-(ExponentPair x) { return {-x.a, -x.b}; }
};

/// Componentwise partial order: x <= y iff x.a <= y.a and x.b <= y.b.
inline bool componentwise_le(ExponentPair x, ExponentPair y) { return x.a <= y.a && x.b <= y.b; }

/// Half-exponent picked up by X^x X^y: the product equals q^{skew/2} X^(x+y).
inline int skew_half_exponent(ExponentPair x, ExponentPair y) { return x.a * y.b - x.b * y.a; }

std::string to_string(ExponentPair p);

/// A finite combination sum_u c_u X^u. Terms are kept sorted lexicographically
/// by exponent with no zero coefficients, so equality is structural.
class TorusElement {
 public:
  using Term = std::pair<ExponentPair, QLaurent>;

  TorusElement() = default;
  /// Scalar element c * X^(0,0).
  explicit TorusElement(const QLaurent& scalar);

  static TorusElement monomial(int a, int b, const QLaurent& coef = QLaurent(1));
  static TorusElement scalar(const QLaurent& c) { return TorusElement(c); }
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static TorusElement from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  QLaurent coeff(ExponentPair u) const;

  TorusElement& operator+=(const TorusElement& other);
  TorusElement& operator-=(const TorusElement& other);
  TorusElement operator-() const;
  /// Multiplies every coefficient by c (scalars are central).
  TorusElement scaled(const QLaurent& c) const;

  friend TorusElement operator+(TorusElement x, const TorusElement& y) { return x += y; }
  friend TorusElement operator-(TorusElement x, const TorusElement& y) { return x -= y; }
  friend TorusElement operator*(const TorusElement& x, const TorusElement& y);
  friend TorusElement operator*(const QLaurent& c, const TorusElement& x) { return x.scaled(c); }
  friend bool operator==(const TorusElement&, const TorusElement&) = default;

 private:
  std::vector<Term> terms_;
};

/// Product in the torus; the order of the factors matters.
TorusElement multiply(const TorusElement& x, const TorusElement& y);
/// x^k by left-associated repeated multiplication; x^0 = 1.
TorusElement power(const TorusElement& x, int k);
/// Inverse of a single-term element with a unit coefficient.
TorusElement monomial_inverse(const TorusElement& x);

/// Bar-involution: bars every coefficient, keeps exponents.
TorusElement bar(const TorusElement& x);
/// Support exponents minimal under the componentwise order. Throws DomainError on zero.
std::vector<ExponentPair> min_terms(const TorusElement& x);
/// Every coefficient lies in N[q^{+-1/2}].
bool is_positive(const TorusElement& x);
/// Total number of nonzero q-coefficients.
std::size_t coefficient_count(const TorusElement& x);

/// Text form: `coef*(a,b)` terms in descending lex order, e.g. `(-1,4) + (-1,0)`.
std::string to_string(const TorusElement& x);
TorusElement parse_torus(std::string_view text);

}  // namespace qclust
