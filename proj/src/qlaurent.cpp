#include "qclust/qlaurent.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace qclust {

QLaurent::QLaurent(long long constant) {
  if (constant != 0) coeffs_.emplace_back(constant);
}

QLaurent::QLaurent(const Integer& constant) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

QLaurent QLaurent::monomial(int half_exp, const Integer& c) {
  QLaurent r;
  if (!c.is_zero()) {
    r.lo_ = half_exp;
    r.coeffs_.push_back(c);
  }
  return r;
}

QLaurent QLaurent::quantum_two() { return monomial(-1) + monomial(1); }

Integer QLaurent::coeff(int half_exp) const {
  if (is_zero() || half_exp < lo_ || half_exp > max_exp()) return 0;
  return coeffs_[static_cast<std::size_t>(half_exp - lo_)];
}

std::size_t QLaurent::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return !c.is_zero(); }));
}

std::vector<std::pair<int, Integer>> QLaurent::terms() const {
  std::vector<std::pair<int, Integer>> out;
  for_each_term([&](int e, const Integer& c) { out.emplace_back(e, c); });
  return out;
}

bool QLaurent::is_unit_monomial() const {
  return coeffs_.size() == 1 && (coeffs_[0] == 1 || coeffs_[0] == -1);
}

bool QLaurent::is_one() const { return coeffs_.size() == 1 && lo_ == 0 && coeffs_[0] == 1; }

void QLaurent::normalize() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1].is_zero()) --last;
  if (first > 0 || last < coeffs_.size()) {
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    lo_ += static_cast<int>(first);
  }
}

// Grows storage so that [lo, hi] is addressable.
void QLaurent::reserve_range(int lo, int hi) {
  if (coeffs_.empty()) {
    lo_ = lo;
    coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
    return;
  }
  int cur_hi = max_exp();
  if (lo < lo_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(lo_ - lo), Integer(0));
    lo_ = lo;
  }
  if (hi > cur_hi) coeffs_.resize(coeffs_.size() + static_cast<std::size_t>(hi - cur_hi), Integer(0));
}

void QLaurent::add_shifted(const QLaurent& f, int shift, int sign) {
  if (f.is_zero()) return;
  int lo = f.lo_ + shift;
  reserve_range(lo, f.max_exp() + shift);
  std::size_t off = static_cast<std::size_t>(lo - lo_);
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
    if (sign > 0)
      coeffs_[off + i] += f.coeffs_[i];
    else
      coeffs_[off + i] -= f.coeffs_[i];
  }
  normalize();
}

QLaurent& QLaurent::operator+=(const QLaurent& other) {
  add_shifted(other, 0, 1);
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& other) {
  add_shifted(other, 0, -1);
  return *this;
}

namespace {

// Copies the coefficients into int64 when every one fits; returns the bit
// length of the largest magnitude, or -1 if some coefficient is too wide.
int to_small(const std::vector<Integer>& src, std::vector<std::int64_t>& out) {
  out.resize(src.size());
  int bits = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Integer& c = src[i];
    if (c.is_zero()) {
      out[i] = 0;
      continue;
    }
    unsigned b = boost::multiprecision::msb(c < 0 ? Integer(-c) : c) + 1;
    if (b > 62) return -1;
    bits = std::max(bits, static_cast<int>(b));
    out[i] = c.convert_to<std::int64_t>();
  }
  return bits;
}

Integer wide_to_integer(__int128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return Integer(static_cast<std::int64_t>(v));
  bool neg = v < 0;
  unsigned __int128 m = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer r = Integer(static_cast<std::uint64_t>(m >> 64));
  r <<= 64;
  r += Integer(static_cast<std::uint64_t>(m));
  return neg ? Integer(-r) : r;
}

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

int QLaurent::small_coefficients(std::vector<std::int64_t>& out) const { return to_small(coeffs_, out); }

QLaurent QLaurent::from_wide(int lo, const __int128* data, std::size_t n) {
  QLaurent r;
  r.lo_ = lo;
  r.coeffs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.coeffs_.push_back(data[i] == 0 ? Integer(0) : wide_to_integer(data[i]));
  r.normalize();
  return r;
}

int QLaurent::bit_length() const {
  unsigned bits = 0;
  for (const Integer& c : coeffs_)
    if (!c.is_zero()) bits = std::max(bits, boost::multiprecision::msb(abs(c)) + 1);
  return static_cast<int>(bits);
}

void QLaurent::split_digits(int width, std::size_t count, std::vector<std::vector<std::int64_t>>& digits) const {
  digits.resize(count);
  for (auto& d : digits) d.assign(coeffs_.size(), 0);
  const Integer mask = (Integer(1) << width) - 1;
  Integer mag;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const std::int64_t sign = coeffs_[k] < 0 ? -1 : 1;
    mag = abs(coeffs_[k]);
    for (std::size_t i = 0; i < count && !mag.is_zero(); ++i) {
      digits[i][k] = sign * static_cast<std::int64_t>(Integer(mag & mask).convert_to<std::int64_t>());
      mag >>= width;
    }
  }
}

void QLaurent::add_wide(int lo, const __int128* data, std::size_t n, unsigned bit_shift) {
  if (n == 0) return;
  reserve_range(lo, lo + static_cast<int>(n) - 1);
  const std::size_t off = static_cast<std::size_t>(lo - lo_);
  for (std::size_t i = 0; i < n; ++i) {
    if (data[i] == 0) continue;
    Integer v = wide_to_integer(data[i]);
    v <<= bit_shift;
    coeffs_[off + i] += v;
  }
  normalize();
}

void QLaurent::add_shifted_product(const QLaurent& f, const QLaurent& g, int shift) {
  if (f.is_zero() || g.is_zero()) return;
  int lo = f.lo_ + g.lo_ + shift;
  reserve_range(lo, f.max_exp() + g.max_exp() + shift);
  std::size_t off = static_cast<std::size_t>(lo - lo_);

  thread_local std::vector<std::int64_t> fs, gs;
  thread_local std::vector<__int128> acc;
  int fb = to_small(f.coeffs_, fs);
  int gb = fb < 0 ? -1 : to_small(g.coeffs_, gs);
  if (fb >= 0 && gb >= 0 &&
      fb + gb + ceil_log2(std::min(f.coeffs_.size(), g.coeffs_.size())) <= 126) {
    acc.assign(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const __int128 fi = fs[i];
      if (fi == 0) continue;
      for (std::size_t j = 0; j < gs.size(); ++j) acc[i + j] += fi * gs[j];
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (acc[k] != 0) coeffs_[off + k] += wide_to_integer(acc[k]);
    normalize();
    return;
  }

  Integer tmp;
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
    const Integer& fi = f.coeffs_[i];
    if (fi.is_zero()) continue;
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) {
      const Integer& gj = g.coeffs_[j];
      if (gj.is_zero()) continue;
      boost::multiprecision::multiply(tmp, fi, gj);
      coeffs_[off + i + j] += tmp;
    }
  }
  normalize();
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent r;
  r.add_shifted_product(a, b, 0);
  return r;
}

QLaurent& QLaurent::operator*=(const QLaurent& other) {
  *this = *this * other;
  return *this;
}

QLaurent QLaurent::operator-() const {
  QLaurent r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QLaurent QLaurent::shifted(int half_exp) const {
  QLaurent r = *this;
  if (!r.is_zero()) r.lo_ += half_exp;
  return r;
}

bool operator==(const QLaurent& a, const QLaurent& b) {
  return a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.lo_ == b.lo_);
}

QLaurent bar(const QLaurent& f) {
  QLaurent r;
  if (f.is_zero()) return r;
  r.lo_ = -f.max_exp();
  r.coeffs_.assign(f.coeffs_.rbegin(), f.coeffs_.rend());
  return r;
}

bool is_positive(const QLaurent& f) {
  bool ok = true;
  f.for_each_term([&](int, const Integer& c) { ok = ok && c > 0; });
  return ok;
}

Integer at_one(const QLaurent& f) {
  Integer s = 0;
  f.for_each_term([&](int, const Integer& c) { s += c; });
  return s;
}

QLaurent negative_part(const QLaurent& f) {
  QLaurent r;
  f.for_each_term([&](int e, const Integer& c) {
    if (e < 0) r += QLaurent::monomial(e, c);
  });
  return r;
}

bool is_strictly_negative(const QLaurent& f) { return f.is_zero() || f.max_exp() < 0; }

bool is_nonpositive(const QLaurent& f) { return f.is_zero() || f.max_exp() <= 0; }

QLaurent unit_inverse(const QLaurent& u) {
  if (!u.is_unit_monomial()) throw std::domain_error("unit_inverse: not a unit monomial");
  return QLaurent::monomial(-u.min_exp(), u.coeff(u.min_exp()));
}

namespace {

std::string q_power_text(int e) {
  if (e % 2 != 0) return "q^(" + std::to_string(e) + "/2)";
  int k = e / 2;
  if (k == 1) return "q";
  return "q^" + std::to_string(k);
}

}  // namespace

std::string to_string(const QLaurent& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  f.for_each_term([&](int e, const Integer& c) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << q_power_text(e);
    }
  });
  return os.str();
}

namespace {

class TextCursor {
 public:
  explicit TextCursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }
  long signed_int() {
    bool neg = accept('-');
    if (!neg) accept('+');
    long v = std::stol(digits());
    return neg ? -v : v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse coefficient '" + std::string(s_) + "': " + what +
                                " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// q, q^k, q^(k), q^(e/2), q^(-e/2)
int parse_q_power(TextCursor& cur) {
  if (!cur.accept('^')) return 2;
  if (cur.accept('(')) {
    long num = cur.signed_int();
    int e;
    if (cur.accept('/')) {
      if (cur.digits() != "2") cur.fail("only /2 denominators are allowed");
      e = static_cast<int>(num);
    } else {
      e = static_cast<int>(2 * num);
    }
    cur.expect(')');
    return e;
  }
  return static_cast<int>(2 * cur.signed_int());
}

}  // namespace

QLaurent parse_qlaurent(std::string_view text) {
  TextCursor cur(text);
  QLaurent out;
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.accept('-'))
      sign = -1;
    else if (!cur.accept('+') && !first)
      cur.fail("expected '+' or '-'");
    first = false;
    Integer c = 1;
    bool have_number = false;
    if (cur.peek_digit()) {
      c = Integer(cur.digits());
      have_number = true;
    }
    int e = 0;
    if (have_number) {
      if (cur.accept('*')) {
        cur.expect('q');
        e = parse_q_power(cur);
      }
    } else {
      cur.expect('q');
      e = parse_q_power(cur);
    }
    out += QLaurent::monomial(e, sign * c);
  }
  if (first) cur.fail("empty input");
  return out;
}

}  // namespace qclust
