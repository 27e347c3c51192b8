#include "qclust/triangular.hpp"

#include "qclust/bases.hpp"
#include "qclust/multiplication.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <sstream>

namespace qclust {

std::string to_string(StandardIndex u) { return "(" + std::to_string(u.a) + "," + std::to_string(u.b) + ")"; }

bool order_prec(StandardIndex lower, StandardIndex upper) {
  return plus_part(-lower.a) < plus_part(-upper.a) && plus_part(-lower.b) < plus_part(-upper.b);
}

bool order_preceq(StandardIndex lower, StandardIndex upper) {
  return plus_part(-lower.a) <= plus_part(-upper.a) && plus_part(-lower.b) <= plus_part(-upper.b);
}

StandardIndex phi(StandardIndex u) { return {u.a, -4 * plus_part(-u.a) - u.b}; }

StandardIndex psi(StandardIndex u) { return {-u.a - plus_part(-u.b), u.b}; }

StandardIndex alpha(int n) {
  StandardIndex scaled = n >= 2 ? StandardIndex{2 - n, 2 * (3 - n)} : StandardIndex{n, 2 * (n - 1)};
  const int k = parity_bracket(n);
  if (scaled.a % k != 0 || scaled.b % k != 0)
    throw StructuralViolation("alpha(" + std::to_string(n) + ") is not integral");
  return {scaled.a / k, scaled.b / k};
}

namespace {

TorusElement qhalf(int e) { return TorusElement(QLaurent::monomial(e)); }

// Ordered product q^{-ab/2} x^i y^j z^k w^l of cluster variables.
TorusElement ordered(int ab, std::initializer_list<std::pair<int, int>> factors, Frame frame) {
  TorusElement r = qhalf(-ab);
  for (auto [m, k] : factors)
    if (k > 0) r = r * power(cluster_var(m, frame), k);
  return r;
}

}  // namespace

TorusElement standard_monomial(int a, int b, Frame frame) { return shifted_standard_monomial(a, b, 0, frame); }

TorusElement shifted_standard_monomial(int a, int b, int shift, Frame frame) {
  const int k = shift;
  return ordered(a * b, {{3 + k, plus_part(-a)}, {1 + k, plus_part(a)}, {2 + k, plus_part(b)}, {k, plus_part(-b)}},
                 frame);
}

TorusElement e_prime(int a, int b, Frame frame) {
  return ordered(a * b, {{2, plus_part(-b)}, {0, plus_part(b)}, {1, plus_part(a)}, {-1, plus_part(-a)}}, frame);
}

TorusElement mu1_e(int a, int b, Frame frame) {
  return ordered(a * b, {{4, plus_part(-b)}, {2, plus_part(b)}, {3, plus_part(a)}, {1, plus_part(-a)}}, frame);
}

// ---- EExpansion

void EExpansion::add(StandardIndex u, const QLaurent& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(u, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QLaurent EExpansion::coeff(StandardIndex u) const {
  auto it = terms_.find(u);
  return it == terms_.end() ? QLaurent() : it->second;
}

EExpansion& EExpansion::operator+=(const EExpansion& other) {
  for (const auto& [u, c] : other.terms_) add(u, c);
  return *this;
}

EExpansion& EExpansion::operator-=(const EExpansion& other) {
  for (const auto& [u, c] : other.terms_) add(u, -c);
  return *this;
}

std::string to_string(const EExpansion& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [u, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")*E" << to_string(u);
  }
  return os.str();
}

bool in_small_lattice(const EExpansion& e) {
  return std::all_of(e.terms().begin(), e.terms().end(), [](const auto& t) { return is_strictly_negative(t.second); });
}

bool supported_preceq(const EExpansion& e, StandardIndex bound) {
  return std::all_of(e.terms().begin(), e.terms().end(), [&](const auto& t) { return order_preceq(t.first, bound); });
}

bool supported_prec(const EExpansion& e, StandardIndex bound) {
  return std::all_of(e.terms().begin(), e.terms().end(), [&](const auto& t) { return order_prec(t.first, bound); });
}

TorusElement shifted(const EExpansion& e, int shift, Frame frame) {
  if (shift % 2 != 0) throw DomainError("shifted: only even shifts are automorphisms");
  TorusElement r;
  for (const auto& [u, c] : e.terms()) r += shifted_standard_monomial(u.a, u.b, shift, frame).scaled(c);
  return r;
}

TorusElement realize(const EExpansion& e, Frame frame) {
  auto& table = TriangularTable::global(frame);
  TorusElement r;
  for (const auto& [u, c] : e.terms()) r += table.standard(u).scaled(c);
  return r;
}

// ---- leads

namespace {

struct LeadBasis {
  ExponentPair l0, l1, l2, l3;  // minimal exponents of X0..X3
};

LeadBasis lead_basis(Frame frame) {
  return {-variable_denominator(0, frame), -variable_denominator(1, frame), -variable_denominator(2, frame),
          -variable_denominator(3, frame)};
}

ExponentPair scale(int k, ExponentPair p) { return {k * p.a, k * p.b}; }

ExponentPair lead_of(StandardIndex u, const LeadBasis& L) {
  return scale(plus_part(-u.a), L.l3) + scale(plus_part(u.a), L.l1) + scale(plus_part(u.b), L.l2) +
         scale(plus_part(-u.b), L.l0);
}

// All indices whose lead is t. On each sign quadrant the lead map is linear:
// t = a A + b B with A = l1 (a >= 0) or -l3, B = l2 (b >= 0) or -l0.
std::vector<StandardIndex> lead_preimages(ExponentPair t, const LeadBasis& L) {
  std::vector<StandardIndex> out;
  for (int sa : {0, 1})
    for (int sb : {0, 1}) {
      ExponentPair A = sa ? L.l1 : -L.l3, B = sb ? L.l2 : -L.l0;
      long long det = static_cast<long long>(A.a) * B.b - static_cast<long long>(A.b) * B.a;
      if (det == 0) continue;
      long long an = static_cast<long long>(t.a) * B.b - static_cast<long long>(t.b) * B.a;
      long long bn = static_cast<long long>(A.a) * t.b - static_cast<long long>(A.b) * t.a;
      if (an % det != 0 || bn % det != 0) continue;
      StandardIndex u{static_cast<int>(an / det), static_cast<int>(bn / det)};
      if ((u.a >= 0) != (sa == 1) && u.a != 0) continue;
      if ((u.b >= 0) != (sb == 1) && u.b != 0) continue;
      if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
  return out;
}

bool lead_less(ExponentPair x, ExponentPair y) {
  const int dx = x.a + x.b, dy = y.a + y.b;
  return dx != dy ? dx < dy : x.a < y.a;
}

void check_injective(const StandardWindow& w, const LeadBasis& L) {
  std::map<ExponentPair, StandardIndex> seen;
  for (int a = w.a_lo; a <= w.a_hi; ++a)
    for (int b = w.b_lo; b <= w.b_hi; ++b) {
      auto [it, fresh] = seen.emplace(lead_of({a, b}, L), StandardIndex{a, b});
      if (!fresh)
        throw StructuralViolation("E" + to_string(StandardIndex{a, b}) + " and E" + to_string(it->second) +
                                  " share the lead " + to_string(it->first));
    }
}

}  // namespace

ExponentPair standard_lead(StandardIndex u, Frame frame) { return lead_of(u, lead_basis(frame)); }

StandardWindow window_for(const TorusElement& x, Frame frame, int margin) {
  const LeadBasis L = lead_basis(frame);
  std::optional<StandardWindow> w;
  for (const auto& [e, c] : x.terms())
    for (StandardIndex u : lead_preimages(e, L)) {
      if (!w) w = StandardWindow{u.a, u.a, u.b, u.b};
      w->a_lo = std::min(w->a_lo, u.a);
      w->a_hi = std::max(w->a_hi, u.a);
      w->b_lo = std::min(w->b_lo, u.b);
      w->b_hi = std::max(w->b_hi, u.b);
    }
  if (!w) return StandardWindow{0, 0, 0, 0};
  w->a_lo -= margin;
  w->a_hi += margin;
  w->b_lo -= margin;
  w->b_hi += margin;
  return *w;
}

namespace {

EExpansion expand_with(TriangularTable& table, const TorusElement& x, const StandardWindow& w) {
  const Frame frame = table.frame();
  const LeadBasis L = lead_basis(frame);
  check_injective(w, L);
  const std::size_t cap = 4 * static_cast<std::size_t>(w.a_hi - w.a_lo + 1) * static_cast<std::size_t>(w.b_hi - w.b_lo + 1);
  EExpansion out;
  TorusElement residue = x;
  for (std::size_t iter = 0; !residue.is_zero(); ++iter) {
    if (iter >= cap) throw StandardExpansionFailure("standard expansion hit the iteration cap", residue, out);
    ExponentPair t = residue.terms().front().first;
    for (const auto& [e, c] : residue.terms())
      if (lead_less(e, t)) t = e;
    std::optional<StandardIndex> found;
    for (StandardIndex u : lead_preimages(t, L))
      if (w.contains(u)) found = u;
    if (!found)
      throw StandardExpansionFailure("no window standard monomial has lead " + to_string(t), residue, out);
    const TorusElement& e = table.standard(*found);
    QLaurent lead = e.coeff(t);
    if (!lead.is_unit_monomial())
      throw StructuralViolation("E" + to_string(*found) + " has coefficient " + to_string(lead) + " at its lead");
    QLaurent c = residue.coeff(t) * unit_inverse(lead);
    out.add(*found, c);
    residue -= e.scaled(c);
  }
  return out;
}

}  // namespace

EExpansion expand_in_standard(const TorusElement& x, Frame frame, const StandardWindow& window) {
  return expand_with(TriangularTable::global(frame), x, window);
}

// ---- triangular table

struct TriangularTable::Impl {
  Frame frame;
  std::mutex mu;
  std::map<StandardIndex, TorusElement> standard;
  std::map<StandardIndex, TriangularElement> c;
};

TriangularTable::TriangularTable(Frame frame) : impl_(std::make_unique<Impl>()) { impl_->frame = frame; }
TriangularTable::~TriangularTable() = default;

Frame TriangularTable::frame() const { return impl_->frame; }

TriangularTable& TriangularTable::global(Frame frame) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TriangularTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& t = tables[frame.s];
  if (!t) t = std::make_unique<TriangularTable>(frame);
  return *t;
}

const TorusElement& TriangularTable::standard(StandardIndex u) {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->standard.find(u);
    if (it != impl_->standard.end()) return it->second;
  }
  TorusElement e = standard_monomial(u, impl_->frame);
  // pointedness at the predicted lead
  const ExponentPair lead = standard_lead(u, impl_->frame);
  auto mins = min_terms(e);
  if (mins.size() != 1 || mins.front() != lead)
    throw StructuralViolation("E" + to_string(u) + " is not pointed at " + to_string(lead));
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->standard.emplace(u, std::move(e)).first->second;
}

void TriangularTable::override_standard(StandardIndex u, TorusElement e) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->standard[u] = std::move(e);
  impl_->c.clear();
}

EExpansion TriangularTable::expand(const TorusElement& x) { return expand_with(*this, x, window_for(x, impl_->frame)); }

EExpansion TriangularTable::to_c_basis(EExpansion e) {
  EExpansion out;
  while (!e.is_zero()) {
    // highest first: C_u - E_u only involves indices of smaller height
    auto top = std::max_element(e.terms().begin(), e.terms().end(), [](const auto& x, const auto& y) {
      return prec_height(x.first) != prec_height(y.first) ? prec_height(x.first) < prec_height(y.first)
                                                          : x.first < y.first;
    });
    const StandardIndex u = top->first;
    const QLaurent coef = top->second;
    out.add(u, coef);
    for (const auto& [v, c] : this->c(u).expansion.terms()) e.add(v, -(coef * c));
  }
  return out;
}

const TriangularElement& TriangularTable::c(StandardIndex u) {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->c.find(u);
    if (it != impl_->c.end()) return it->second;
  }
  TriangularElement r;
  const TorusElement& e = standard(u);
  r.value = e;
  r.expansion.add(u, QLaurent(1));
  if (u.a < 0 && u.b < 0) {
    EExpansion defect = expand(bar(e) - e);
    if (!supported_prec(defect, u))
      throw StructuralViolation("bar(E" + to_string(u) + ") - E" + to_string(u) + " = " + to_string(defect) +
                                " is not supported strictly below " + to_string(u));
    // bar(E_u) - E_u = sum (p - bar p) C_{u'} with p in q^{-1/2} Z[q^{-1/2}]
    const EExpansion in_c = to_c_basis(std::move(defect));
    for (const auto& [v, rc] : in_c.terms()) {
      QLaurent p = negative_part(rc);
      if (p - bar(p) != rc)
        throw StructuralViolation("correction of C" + to_string(u) + " at " + to_string(v) + " is unsolvable: " +
                                  to_string(rc));
      const TriangularElement& cv = c(v);
      r.value += cv.value.scaled(p);
      for (const auto& [w, cw] : cv.expansion.terms()) r.expansion.add(w, p * cw);
    }
    if (bar(r.value) != r.value) throw StructuralViolation("C" + to_string(u) + " is not bar-invariant");
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->c.emplace(u, std::move(r)).first->second;
}

const TriangularElement& lusztig_c(int a, int b, Frame frame) { return TriangularTable::global(frame).c({a, b}); }

// ---- closed S_n formula

TorusElement sn_closed_form(int n, Frame frame) {
  if (n < 1) throw DomainError("sn_closed_form: n must be positive");
  const TorusElement q2(QLaurent::quantum_two());
  auto X = [&](int m, int k) { return power(cluster_var(m, frame), k); };
  TorusElement r = qhalf(-2 * n) * X(n + 2, parity_bracket(n)) * X(0, 2);
  r -= qhalf(-2 * (n + 2)) * X(n + 1, parity_bracket(n + 1)) * X(1, 1);
  TorusElement sum;
  for (int k = 1; k <= n / 2 + 1; ++k) sum += X(n + 3 - 2 * k, parity_bracket(n + 1));
  r -= qhalf(-2 * (n + 1)) * q2 * sum;
  for (int k = 1; n - 2 * k >= 0; ++k)
    r -= chebyshev(ChebyshevKind::S, n - 2 * k, frame).scaled(QLaurent(k) * QLaurent::monomial(-4 * k) *
                                                              QLaurent::quantum_two() * QLaurent::quantum_two());
  return r;
}

// ---- verification

namespace {

StandardIndex operator+(StandardIndex x, StandardIndex y) { return {x.a + y.a, x.b + y.b}; }
StandardIndex operator*(int k, StandardIndex x) { return {k * x.a, k * x.b}; }

ReportEntry entry(std::string check, StandardIndex u, bool pass, TorusElement diff, std::string detail) {
  ReportEntry e = ReportEntry::make(std::move(check), u.a, u.b, 1);
  e.pass = pass;
  e.diff = std::move(diff);
  e.detail = std::move(detail);
  return e;
}

ReportEntry equality(std::string check, StandardIndex u, const TorusElement& lhs, const TorusElement& rhs,
                     std::string detail) {
  TorusElement d = lhs - rhs;
  const bool ok = d.is_zero();
  return entry(std::move(check), u, ok, std::move(d), std::move(detail));
}

// x expands with coefficients in q^{-1/2}Z[q^{-1/2}] on indices below bound
ReportEntry membership(std::string check, StandardIndex u, const TorusElement& x, std::optional<StandardIndex> bound,
                       bool strict) {
  auto& t = TriangularTable::global(Frame{1});
  try {
    EExpansion e = t.expand(x);
    bool ok = in_small_lattice(e);
    if (bound) ok = ok && (strict ? supported_prec(e, *bound) : supported_preceq(e, *bound));
    return entry(std::move(check), u, ok, ok ? TorusElement() : x, to_string(e));
  } catch (const StandardExpansionFailure& f) {
    return entry(std::move(check), u, false, f.residue(), f.what());
  }
}

}  // namespace

Report verify_section4(const Section4Window& w) {
  const Frame f1{1};
  auto& t = TriangularTable::global(f1);
  auto E = [&](StandardIndex u) -> const TorusElement& { return t.standard(u); };
  auto X = [&](int m) -> const TorusElement& { return cluster_var(m, f1); };
  Report r;

  for (int n = w.alpha_lo; n <= w.alpha_hi; ++n)
    for (int a1 = 0; a1 <= w.alpha_mult; ++a1)
      for (int a2 = 0; a2 <= w.alpha_mult; ++a2) {
        if (a1 + a2 == 0) continue;
        StandardIndex u = a1 * alpha(n) + a2 * alpha(n + 1);
        std::ostringstream d;
        d << "n=" << n << " a1=" << a1 << " a2=" << a2;
        r.add(equality("alpha", u, t.c(u).value, cluster_monomial(n, a1, a2, f1), d.str()));
      }

  for (int n = 0; n <= w.n_max; ++n) {
    StandardIndex u{-n, -2 * n};
    r.add(equality("sn", u, t.c(u).value, chebyshev(ChebyshevKind::S, n, f1), "n=" + std::to_string(n)));
  }
  for (int n = 1; n <= w.sn_formula_max; ++n)
    r.add(equality("sn-formula", {n, 0}, sn_closed_form(n, f1), chebyshev(ChebyshevKind::S, n, f1),
                   "n=" + std::to_string(n)));

  for (int a = -w.ab; a <= w.ab; ++a)
    for (int b = -w.ab; b <= w.ab; ++b) {
      const StandardIndex u{a, b};
      r.add(membership("phi", u, e_prime(a, b, f1) - E(phi(u)), std::nullopt, false));
      r.add(membership("psi", u, mu1_e(a, b, f1) - E(psi(u)), std::nullopt, false));
      // coefficients of bar(E_u) - E_u are unrestricted; only the support matters
      try {
        EExpansion e = t.expand(bar(E(u)) - E(u));
        const bool ok = supported_prec(e, u);
        r.add(entry("bar-support", u, ok, ok ? TorusElement() : bar(E(u)) - E(u), to_string(e)));
      } catch (const StandardExpansionFailure& fail) {
        r.add(entry("bar-support", u, false, fail.residue(), fail.what()));
      }
    }

  // sigma_{+-2} applied to the E-expansion of C_u, compared with C at the conjugated index
  const int shift_ab = std::min(w.ab, 2);
  for (int a = -shift_ab; a <= shift_ab; ++a)
    for (int b = -shift_ab; b <= shift_ab; ++b) {
      const StandardIndex u{a, b};
      const EExpansion& cu = t.c(u).expansion;
      StandardIndex up = psi(phi(u)), down = phi(psi(u));
      r.add(equality("shift+2", u, shifted(cu, 2, f1), t.c(up).value, "to " + to_string(up)));
      r.add(equality("shift-2", u, shifted(cu, -2, f1), t.c(down).value, "to " + to_string(down)));
    }

  const int lem = std::min(w.ab, 3);
  for (int a = -lem; a <= lem; ++a)
    for (int b = -lem; b <= lem; ++b) {
      const StandardIndex u{a, b};
      auto scaled = [](int half, const TorusElement& x) { return x.scaled(QLaurent::monomial(half)); };
      r.add(membership("lem-1", u, scaled(a, E(u) * X(0)) - E({a, b - 1}), StandardIndex{a + 1, b - 1}, false));
      r.add(membership("lem-2", u, scaled(b, X(3) * E(u)) - E({a - 1, b}), StandardIndex{a - 1, b + 4}, false));
      r.add(membership("lem-3", u, scaled(b, E(u) * X(1)) - E({a + 1, b}), StandardIndex{a + 1, b + 4}, false));
      if (b > 0)
        r.add(membership("lem-4", u, scaled(-a, X(4) * E(u)) - E({a, b - 1}), StandardIndex{a - 1, b - 1}, false));
      if (a > 0 && b <= 0)
        r.add(membership("lem-5", u, scaled(b - a, X(4) * E(u)) - E({a - 1, b - 1}), StandardIndex{a - 1, b + 3},
                         false));
      if (a <= 0 && b <= 0)
        r.add(membership("lem-6", u, scaled(b - a, X(4) * E(u)) - E({a - 1, b - 1}), u, false));
    }
  return r;
}

}  // namespace qclust
