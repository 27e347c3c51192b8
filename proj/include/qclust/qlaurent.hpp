#pragma once

// Exact Laurent polynomials in q^{1/2} with arbitrary-precision integer
// coefficients: the coefficient ring Z[q^{+-1/2}].

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qclust {

using Integer = boost::multiprecision::cpp_int;

/// An element of Z[q^{+-1/2}].
///
/// Exponents are stored as integers `e` standing for q^{e/2}. Storage is
/// dense between the lowest and highest nonzero exponent; the two boundary
/// coefficients are always nonzero, and the zero polynomial has no storage.
class QLaurent {
 public:
  QLaurent() = default;
  explicit QLaurent(long long constant);
  explicit QLaurent(const Integer& constant);

  /// c * q^{half_exp/2}
  static QLaurent monomial(int half_exp, const Integer& c = 1);
  /// (q^{-1/2} + q^{1/2})
  static QLaurent quantum_two();

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest / highest half-exponent with a nonzero coefficient. Zero has neither.
  int min_exp() const { return lo_; }
  int max_exp() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  Integer coeff(int half_exp) const;
  /// Number of nonzero coefficients.
  std::size_t term_count() const;
  /// Nonzero terms in ascending exponent order.
  std::vector<std::pair<int, Integer>> terms() const;

  template <class F>
  void for_each_term(F&& f) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) f(lo_ + static_cast<int>(i), coeffs_[i]);
  }

  /// True for c * q^{e/2} with c = +-1.
  bool is_unit_monomial() const;
  bool is_one() const;

  QLaurent& operator+=(const QLaurent& other);
  QLaurent& operator-=(const QLaurent& other);
  QLaurent& operator*=(const QLaurent& other);
  QLaurent operator-() const;

  /// Multiplies by q^{half_exp/2}.
  QLaurent shifted(int half_exp) const;
  /// *this += q^{shift/2} * f * g, without temporaries.
  void add_shifted_product(const QLaurent& f, const QLaurent& g, int shift);
  /// *this += sign * q^{shift/2} * f.
  void add_shifted(const QLaurent& f, int shift, int sign = 1);

  /// Machine-word view for hot loops: copies the dense coefficients (from
  /// min_exp() upward) into `out` and returns the bit length of the largest
  /// magnitude, or -1 if some coefficient needs more than 62 bits.
  int small_coefficients(std::vector<std::int64_t>& out) const;
  /// Builds sum_i data[i] q^{(lo+i)/2} from 128-bit values.
  static QLaurent from_wide(int lo, const __int128* data, std::size_t n);
  /// Bit length of the largest coefficient magnitude; 0 for zero.
  int bit_length() const;
  /// Cuts every coefficient into `count` digits of `width` bits, each
  /// carrying the coefficient's sign: c = sum_i digits[i][k] * 2^{width*i}.
  void split_digits(int width, std::size_t count, std::vector<std::vector<std::int64_t>>& digits) const;
  /// *this += 2^{bit_shift} * sum_i data[i] q^{(lo+i)/2}.
  void add_wide(int lo, const __int128* data, std::size_t n, unsigned bit_shift);

  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  friend bool operator==(const QLaurent& a, const QLaurent& b);
  friend QLaurent bar(const QLaurent& f);

 private:
  void normalize();
  void reserve_range(int lo, int hi);

  int lo_ = 0;
  std::vector<Integer> coeffs_;
};

/// Negates every exponent.
QLaurent bar(const QLaurent& f);
/// Every coefficient is positive (so f lies in N[q^{+-1/2}]); zero counts as positive.
bool is_positive(const QLaurent& f);
/// Value at q^{1/2} = 1.
Integer at_one(const QLaurent& f);
/// Terms with negative exponent only.
QLaurent negative_part(const QLaurent& f);
/// f lies in q^{-1/2} Z[q^{-1/2}].
bool is_strictly_negative(const QLaurent& f);
/// f lies in Z[q^{-1/2}].
bool is_nonpositive(const QLaurent& f);
/// For a unit monomial u = +-q^{e/2}, returns u^{-1}.
QLaurent unit_inverse(const QLaurent& u);

/// Text form, e.g. `q^(-1/2) + q^(1/2)` or `q^-1 + 2 + q`.
std::string to_string(const QLaurent& f);
/// Parses the text form written by `to_string` (plus a few tolerant variants).
QLaurent parse_qlaurent(std::string_view text);

}  // namespace qclust
