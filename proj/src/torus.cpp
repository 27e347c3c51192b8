#include "qclust/torus.hpp"

#include "qclust/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qclust {

std::string to_string(ExponentPair p) {
  return "(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

namespace {

std::uint64_t pack(ExponentPair p) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.a)) << 32) |
         static_cast<std::uint32_t>(p.b);
}

ExponentPair unpack(std::uint64_t k) {
  return {static_cast<int>(static_cast<std::int32_t>(k >> 32)),
          static_cast<int>(static_cast<std::int32_t>(k & 0xffffffffu))};
}

bool term_less(const TorusElement::Term& x, const TorusElement::Term& y) { return x.first < y.first; }

}  // namespace

TorusElement::TorusElement(const QLaurent& scalar) {
  if (!scalar.is_zero()) terms_.emplace_back(ExponentPair{0, 0}, scalar);
}

TorusElement TorusElement::monomial(int a, int b, const QLaurent& coef) {
  TorusElement x;
  if (!coef.is_zero()) x.terms_.emplace_back(ExponentPair{a, b}, coef);
  return x;
}

TorusElement TorusElement::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), term_less);
  TorusElement x;
  for (auto& t : terms) {
    if (!x.terms_.empty() && x.terms_.back().first == t.first)
      x.terms_.back().second += t.second;
    else
      x.terms_.push_back(std::move(t));
    // Drop a finished zero before moving on.
    if (x.terms_.size() >= 2 && x.terms_[x.terms_.size() - 2].second.is_zero())
      x.terms_.erase(x.terms_.end() - 2);
  }
  if (!x.terms_.empty() && x.terms_.back().second.is_zero()) x.terms_.pop_back();
  return x;
}

QLaurent TorusElement::coeff(ExponentPair u) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{u, QLaurent()}, term_less);
  if (it != terms_.end() && it->first == u) return it->second;
  return QLaurent();
}

namespace {

// Merge of two sorted term lists with sign on the second.
std::vector<TorusElement::Term> merge_terms(const std::vector<TorusElement::Term>& x,
                                            const std::vector<TorusElement::Term>& y, int sign) {
  std::vector<TorusElement::Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, sign > 0 ? y[j].second : -y[j].second);
      ++j;
    } else {
      QLaurent c = x[i].second;
      c.add_shifted(y[j].second, 0, sign);
      if (!c.is_zero()) out.emplace_back(x[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

TorusElement& TorusElement::operator+=(const TorusElement& other) {
  terms_ = merge_terms(terms_, other.terms_, 1);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& other) {
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

TorusElement TorusElement::operator-() const {
  TorusElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

TorusElement TorusElement::scaled(const QLaurent& c) const {
  TorusElement r;
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [u, f] : terms_) r.terms_.emplace_back(u, f * c);
  return r;
}

namespace {

struct SmallTerm {
  ExponentPair u;
  int lo;
  std::vector<std::int64_t> c;
};

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Converts every coefficient to int64; returns the widest bit length, the
// longest coefficient and false when some coefficient is too wide.
bool to_small_terms(const std::vector<TorusElement::Term>& terms, std::vector<SmallTerm>& out, int& bits,
                    std::size_t& len) {
  out.resize(terms.size());
  bits = 0;
  len = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    int b = terms[i].second.small_coefficients(out[i].c);
    if (b < 0) return false;
    out[i].u = terms[i].first;
    out[i].lo = terms[i].second.min_exp();
    bits = std::max(bits, b);
    len = std::max(len, out[i].c.size());
  }
  return true;
}

template <class Acc>
struct WideCoeff {
  int lo = 0, hi = -1;
  std::vector<Acc> c;
};

template <class Acc>
using WideMap = std::unordered_map<std::uint64_t, WideCoeff<Acc>>;

template <class Acc>
void accumulate_wide(const std::vector<SmallTerm>& xs, const std::vector<SmallTerm>& ys, WideMap<Acc>& acc) {
  acc.clear();
  acc.reserve(xs.size() * ys.size());
  for (const auto& f : xs)
    for (const auto& g : ys) {
      int lo = f.lo + g.lo + skew_half_exponent(f.u, g.u);
      int hi = lo + static_cast<int>(f.c.size() + g.c.size()) - 2;
      auto [it, fresh] = acc.try_emplace(pack(f.u + g.u));
      auto& w = it->second;
      if (fresh) {
        w.lo = lo;
        w.hi = hi;
      } else {
        w.lo = std::min(w.lo, lo);
        w.hi = std::max(w.hi, hi);
      }
    }
  for (auto& [k, w] : acc) w.c.assign(static_cast<std::size_t>(w.hi - w.lo + 1), 0);
  for (const auto& f : xs)
    for (const auto& g : ys) {
      auto& w = acc.find(pack(f.u + g.u))->second;
      Acc* dst = w.c.data() + (f.lo + g.lo + skew_half_exponent(f.u, g.u) - w.lo);
      const std::int64_t* gc = g.c.data();
      const std::size_t gn = g.c.size();
      for (std::size_t i = 0; i < f.c.size(); ++i) {
        const Acc fi = f.c[i];
        if (fi == 0) continue;
        Acc* d = dst + i;
        for (std::size_t j = 0; j < gn; ++j) d[j] += fi * static_cast<Acc>(gc[j]);
      }
    }
}

template <class Acc>
void accumulate(const std::vector<SmallTerm>& xs, const std::vector<SmallTerm>& ys,
                std::vector<TorusElement::Term>& out) {
  WideMap<Acc> acc;
  accumulate_wide(xs, ys, acc);
  out.clear();
  out.reserve(acc.size());
  std::vector<__int128> wide;
  for (auto& [k, w] : acc) {
    wide.assign(w.c.begin(), w.c.end());
    QLaurent c = QLaurent::from_wide(w.lo, wide.data(), wide.size());
    if (!c.is_zero()) out.emplace_back(unpack(k), std::move(c));
  }
}

// Every output coefficient sums at most min(|x|,|y|) * min(len) products,
// which bounds the accumulator width.
bool small_product(const TorusElement& x, const TorusElement& y, std::vector<TorusElement::Term>& out) {
  std::vector<SmallTerm> xs, ys;
  int xb, yb;
  std::size_t xl, yl;
  if (!to_small_terms(x.terms(), xs, xb, xl) || !to_small_terms(y.terms(), ys, yb, yl)) return false;
  int need = xb + yb + ceil_log2(std::min(x.size(), y.size()) * std::min(xl, yl));
  if (need <= 62) {
    accumulate<std::int64_t>(xs, ys, out);
    return true;
  }
  if (need <= 126) {
    accumulate<__int128>(xs, ys, out);
    return true;
  }
  return false;
}

struct Digits {
  int width = 0;
  std::vector<std::vector<SmallTerm>> limbs;  // limbs[i]: digit i of every coefficient
};

Digits split(const std::vector<TorusElement::Term>& terms, int bits, int width) {
  Digits d;
  d.width = width;
  const std::size_t count = static_cast<std::size_t>((bits + width - 1) / width);
  d.limbs.assign(count, std::vector<SmallTerm>(terms.size()));
  std::vector<std::vector<std::int64_t>> digits;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    terms[t].second.split_digits(width, count, digits);
    for (std::size_t i = 0; i < count; ++i) {
      SmallTerm& st = d.limbs[i][t];
      st.u = terms[t].first;
      st.lo = terms[t].second.min_exp();
      st.c = std::move(digits[i]);
    }
  }
  return d;
}

// Wide coefficients: cut both operands into digits narrow enough for the
// 128-bit kernel, run one pass per digit pair and add the shifted partial
// products. Returns false when the digits would be too narrow to pay off.
bool limb_product(const TorusElement& x, const TorusElement& y, std::vector<TorusElement::Term>& out) {
  int xb = 1, yb = 1;
  std::size_t xl = 0, yl = 0;
  for (const auto& [u, f] : x.terms()) {
    xb = std::max(xb, f.bit_length());
    xl = std::max(xl, f.max_exp() - f.min_exp() + std::size_t{1});
  }
  for (const auto& [u, f] : y.terms()) {
    yb = std::max(yb, f.bit_length());
    yl = std::max(yl, f.max_exp() - f.min_exp() + std::size_t{1});
  }
  const int budget = 126 - ceil_log2(std::min(x.size(), y.size()) * std::min(xl, yl));
  int wx, wy;
  if (yb <= 62 && yb <= budget / 2) {
    wy = yb;
    wx = std::min(62, budget - wy);
  } else if (xb <= 62 && xb <= budget / 2) {
    wx = xb;
    wy = std::min(62, budget - wx);
  } else {
    wx = std::min(62, budget / 2);
    wy = std::min(62, budget - wx);
  }
  if (wx < 16 || wy < 16) return false;
  Digits dx = split(x.terms(), xb, wx), dy = split(y.terms(), yb, wy);
  std::unordered_map<std::uint64_t, QLaurent> total;
  WideMap<__int128> acc;
  for (std::size_t i = 0; i < dx.limbs.size(); ++i)
    for (std::size_t j = 0; j < dy.limbs.size(); ++j) {
      accumulate_wide(dx.limbs[i], dy.limbs[j], acc);
      const unsigned shift = static_cast<unsigned>(wx * i + wy * j);
      for (auto& [k, w] : acc) total[k].add_wide(w.lo, w.c.data(), w.c.size(), shift);
    }
  out.clear();
  out.reserve(total.size());
  for (auto& [k, c] : total)
    if (!c.is_zero()) out.emplace_back(unpack(k), std::move(c));
  return true;
}

}  // namespace

TorusElement operator*(const TorusElement& x, const TorusElement& y) {
  TorusElement r;
  if (x.is_zero() || y.is_zero()) return r;
  if (!small_product(x, y, r.terms_) && !limb_product(x, y, r.terms_)) {
    std::unordered_map<std::uint64_t, QLaurent> acc;
    acc.reserve(x.size() * y.size());
    for (const auto& [u, f] : x.terms_)
      for (const auto& [v, g] : y.terms_) acc[pack(u + v)].add_shifted_product(f, g, skew_half_exponent(u, v));
    r.terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
      if (!c.is_zero()) r.terms_.emplace_back(unpack(k), std::move(c));
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_less);
  return r;
}

TorusElement multiply(const TorusElement& x, const TorusElement& y) { return x * y; }

TorusElement power(const TorusElement& x, int k) {
  if (k < 0) throw DomainError("power: negative exponent");
  TorusElement r(QLaurent(1));
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

TorusElement monomial_inverse(const TorusElement& x) {
  if (x.size() != 1 || !x.terms().front().second.is_unit_monomial())
    throw DomainError("monomial_inverse: element is not an invertible monomial");
  const auto& [u, c] = x.terms().front();
  // X^u X^{-u} = q^0, so only the scalar needs inverting.
  return TorusElement::monomial(-u.a, -u.b, unit_inverse(c));
}

TorusElement bar(const TorusElement& x) {
  std::vector<TorusElement::Term> terms;
  terms.reserve(x.size());
  for (const auto& [u, f] : x.terms()) terms.emplace_back(u, bar(f));
  return TorusElement::from_terms(std::move(terms));
}

std::vector<ExponentPair> min_terms(const TorusElement& x) {
  if (x.is_zero()) throw DomainError("min_terms: zero element has no terms");
  std::vector<ExponentPair> mins;
  // Terms are lex-sorted, so a dominating term always comes earlier.
  for (const auto& [u, f] : x.terms()) {
    bool dominated = std::any_of(mins.begin(), mins.end(),
                                 [&](ExponentPair m) { return componentwise_le(m, u); });
    if (!dominated) mins.push_back(u);
  }
  return mins;
}

bool is_positive(const TorusElement& x) {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [](const auto& t) { return is_positive(t.second); });
}

std::size_t coefficient_count(const TorusElement& x) {
  std::size_t n = 0;
  for (const auto& t : x.terms()) n += t.second.term_count();
  return n;
}

std::string to_string(const TorusElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& [u, c] = *it;
    const std::string pair = to_string(u);
    if (c.term_count() == 1) {
      int e = c.min_exp();
      Integer k = c.coeff(e);
      bool neg = k < 0;
      QLaurent mag = neg ? -c : c;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (!mag.is_one()) os << to_string(mag) << "*";
      os << pair;
    } else {
      os << (first ? "" : " + ") << "(" << to_string(c) << ")*" << pair;
    }
    first = false;
  }
  return os.str();
}

namespace {

[[noreturn]] void torus_parse_fail(std::string_view text, std::size_t pos, const std::string& what) {
  throw std::invalid_argument("cannot parse torus element '" + std::string(text) + "': " + what +
                              " at offset " + std::to_string(pos));
}

// Index of the ')' matching the '(' at `open`.
std::size_t matching_paren(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  torus_parse_fail(s, open, "unbalanced parenthesis");
}

bool looks_like_pair(std::string_view inner) { return inner.find(',') != std::string_view::npos; }

ExponentPair parse_pair(std::string_view text, std::string_view inner, std::size_t pos) {
  auto comma = inner.find(',');
  try {
    return {std::stoi(std::string(inner.substr(0, comma))), std::stoi(std::string(inner.substr(comma + 1)))};
  } catch (const std::exception&) {
    torus_parse_fail(text, pos, "bad exponent pair");
  }
}

}  // namespace

TorusElement parse_torus(std::string_view text) {
  std::vector<TorusElement::Term> terms;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (text.substr(pos) == "0") return {};
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      torus_parse_fail(text, pos, "expected '+' or '-'");
    }
    first = false;
    QLaurent coef(1);
    if (pos < text.size() && text[pos] == '(') {
      std::size_t close = matching_paren(text, pos);
      std::string_view inner = text.substr(pos + 1, close - pos - 1);
      if (looks_like_pair(inner)) {
        terms.emplace_back(parse_pair(text, inner, pos), sign > 0 ? coef : -coef);
        pos = close + 1;
        continue;
      }
      coef = parse_qlaurent(inner);
      pos = close + 1;
    } else {
      // Monomial coefficient up to the '*' that precedes the exponent pair.
      std::size_t star = text.find("*(", pos);
      if (star == std::string_view::npos) torus_parse_fail(text, pos, "expected '*(a,b)'");
      coef = parse_qlaurent(text.substr(pos, star - pos));
      pos = star;
    }
    skip_ws();
    if (pos >= text.size() || text[pos] != '*') torus_parse_fail(text, pos, "expected '*'");
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') torus_parse_fail(text, pos, "expected '('");
    std::size_t close = matching_paren(text, pos);
    terms.emplace_back(parse_pair(text, text.substr(pos + 1, close - pos - 1), pos), sign > 0 ? coef : -coef);
    pos = close + 1;
  }
  if (first) torus_parse_fail(text, 0, "empty input");
  return TorusElement::from_terms(std::move(terms));
}

}  // namespace qclust
