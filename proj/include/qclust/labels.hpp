#pragma once

// Symbolic names for basis elements and exact linear combinations of them.

#include "qclust/qlaurent.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace qclust {

/// One of: 1, q^{-ab/2} X_m^a X_{m+1}^b, F_n(X_delta), S_n(X_delta), X_delta^n.
///
/// Constructors canonicalize: an empty cluster monomial and every index-0
/// family member become One, and X_m^0 X_{m+1}^b becomes X_{m+1}^b.
struct BasisLabel {
  enum class Kind { One, Cluster, F, S, DeltaPow };

  Kind kind = Kind::One;
  int m = 0, a = 0, b = 0;  // Cluster
  int n = 0;                // F, S, DeltaPow

  static BasisLabel one() { return {}; }
  static BasisLabel cluster(int m, int a, int b);
  static BasisLabel f(int n);
  static BasisLabel s(int n);
  static BasisLabel delta_pow(int n);
  /// X_m^k.
  static BasisLabel var(int m, int k = 1) { return cluster(m, k, 0); }

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

/// `1`, `X[m]^a*X[m+1]^b` (exponent 1 omitted), `F[n]`, `S[n]`, `delta^n`.
std::string to_string(const BasisLabel& label);
BasisLabel parse_label(std::string_view text);

/// A finite combination sum c_L * L with no zero coefficients, kept in
/// canonical label order.
class FormalCombination {
 public:
  FormalCombination() = default;

  void add(const BasisLabel& label, const QLaurent& coef);
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<BasisLabel, QLaurent>& terms() const { return terms_; }
  QLaurent coeff(const BasisLabel& label) const;

  FormalCombination& operator+=(const FormalCombination& other);
  FormalCombination& operator-=(const FormalCombination& other);
  friend FormalCombination operator+(FormalCombination x, const FormalCombination& y) { return x += y; }
  friend FormalCombination operator-(FormalCombination x, const FormalCombination& y) { return x -= y; }
  friend bool operator==(const FormalCombination&, const FormalCombination&) = default;

 private:
  std::map<BasisLabel, QLaurent> terms_;
};

/// Every coefficient lies in N[q^{+-1/2}].
bool is_positive(const FormalCombination& c);
/// Terms `coef*label` joined by ` + `, e.g. `q*X[4]^2 + q^(-1/2)*F[1]`.
std::string to_string(const FormalCombination& c);

}  // namespace qclust
