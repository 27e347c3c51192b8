#include "qclust/bases.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>

namespace qclust {

std::string to_string(Family f) {
  switch (f) {
    case Family::B:
      return "B";
    case Family::S:
      return "S";
    case Family::D:
      return "D";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "B") return Family::B;
  if (text == "S") return Family::S;
  if (text == "D") return Family::D;
  throw std::invalid_argument("unknown basis family '" + std::string(text) + "' (expected B, S or D)");
}

bool in_family(const BasisLabel& label, Family family) {
  switch (label.kind) {
    case BasisLabel::Kind::One:
    case BasisLabel::Kind::Cluster:
      return true;
    case BasisLabel::Kind::F:
      return family == Family::B;
    case BasisLabel::Kind::S:
      return family == Family::S;
    case BasisLabel::Kind::DeltaPow:
      return family == Family::D;
  }
  return false;
}

namespace {

BasisLabel family_label(Family family, int n) {
  switch (family) {
    case Family::B:
      return BasisLabel::f(n);
    case Family::S:
      return BasisLabel::s(n);
    case Family::D:
      return BasisLabel::delta_pow(n);
  }
  return BasisLabel::one();
}

const TorusElement& delta_power(int n, Frame frame) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, TorusElement> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({frame.s, n});
    if (it != memo.end()) return it->second;
  }
  TorusElement v = n == 0 ? TorusElement(QLaurent(1)) : delta_power(n - 1, frame) * x_delta(frame);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::make_pair(frame.s, n), std::move(v)).first->second;
}

}  // namespace

std::vector<BasisLabel> window_labels(Family family, const BasisWindow& w) {
  std::vector<BasisLabel> out{BasisLabel::one()};
  for (int m = w.m_lo; m <= w.m_hi; ++m)
    for (int a = 1; a <= w.max_degree; ++a)
      for (int b = 0; a + b <= w.max_degree; ++b) out.push_back(BasisLabel::cluster(m, a, b));
  // X_{m_hi+1}^b arises as the a = 0 edge of the last cluster.
  for (int b = 1; b <= w.max_degree; ++b) out.push_back(BasisLabel::var(w.m_hi + 1, b));
  for (int n = 1; n <= w.max_n; ++n) out.push_back(family_label(family, n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TorusElement basis_element(const BasisLabel& label, Frame frame) {
  switch (label.kind) {
    case BasisLabel::Kind::One:
      return TorusElement(QLaurent(1));
    case BasisLabel::Kind::Cluster:
      return cluster_monomial(label.m, label.a, label.b, frame);
    case BasisLabel::Kind::F:
      return chebyshev(ChebyshevKind::F, label.n, frame);
    case BasisLabel::Kind::S:
      return chebyshev(ChebyshevKind::S, label.n, frame);
    case BasisLabel::Kind::DeltaPow:
      return delta_power(label.n, frame);
  }
  return {};
}

namespace {

ExponentPair unique_min(const TorusElement& x, const std::string& what) {
  auto mins = min_terms(x);
  if (mins.size() != 1) throw StructuralViolation(what + " has " + std::to_string(mins.size()) + " minimal terms");
  return mins.front();
}

ExponentPair plus_part(ExponentPair d) { return {std::max(d.a, 0), std::max(d.b, 0)}; }

int exchange_exponent(int k) { return (k & 1) ? 1 : 4; }

}  // namespace

ExponentPair variable_denominator(int m, Frame frame) {
  ExponentPair lo{-1, 0}, hi{0, -1};  // d_k, d_{k+1}
  int k = frame.s;
  while (k < m) {
    ExponentPair p = plus_part(hi);
    const int e = exchange_exponent(k + 1);
    ExponentPair next{e * p.a - lo.a, e * p.b - lo.b};
    lo = hi;
    hi = next;
    ++k;
  }
  while (k > m) {
    ExponentPair p = plus_part(lo);
    const int e = exchange_exponent(k);
    ExponentPair prev{e * p.a - hi.a, e * p.b - hi.b};
    hi = lo;
    lo = prev;
    --k;
  }
  return lo;
}

namespace {

// Denominator vectors are additive: d(X_m^a X_{m+1}^b) = a d(X_m) + b d(X_{m+1}),
// d(F_n) = d(S_n) = d(X_delta^n) = n d(X_delta).
class LabelLocator {
 public:
  LabelLocator(Family family, Frame frame, const BasisWindow& w) : family_(family), frame_(frame), w_(w) {
    for (int m = w.m_lo; m <= w.m_hi + 1; ++m) dvar_[m] = variable_denominator(m, frame);
    ddelta_ = -unique_min(x_delta(frame), "X_delta");
  }

  // The window label with denominator vector d, if any.
  std::optional<BasisLabel> find(ExponentPair d) const {
    std::optional<BasisLabel> found;
    auto offer = [&](const BasisLabel& l) {
      if (found && *found != l)
        throw StructuralViolation("denominator vector " + to_string(d) + " is shared by " + to_string(*found) +
                                  " and " + to_string(l));
      found = l;
    };
    if (d == ExponentPair{0, 0}) offer(BasisLabel::one());
    for (int m = w_.m_lo; m <= w_.m_hi; ++m) {
      ExponentPair u = dvar_.at(m), v = dvar_.at(m + 1);
      long long det = static_cast<long long>(u.a) * v.b - static_cast<long long>(u.b) * v.a;
      if (det == 0) continue;
      long long an = static_cast<long long>(d.a) * v.b - static_cast<long long>(d.b) * v.a;
      long long bn = static_cast<long long>(u.a) * d.b - static_cast<long long>(u.b) * d.a;
      if (an % det != 0 || bn % det != 0) continue;
      long long a = an / det, b = bn / det;
      if (a < 0 || b < 0 || a + b == 0 || a + b > w_.max_degree) continue;
      offer(BasisLabel::cluster(m, static_cast<int>(a), static_cast<int>(b)));
    }
    // n d(X_delta) = d
    if (ddelta_.a != 0 && d.a % ddelta_.a == 0) {
      int n = d.a / ddelta_.a;
      if (n >= 1 && n <= w_.max_n && ExponentPair{n * ddelta_.a, n * ddelta_.b} == d) offer(family_label(family_, n));
    }
    return found;
  }

 private:
  Family family_;
  Frame frame_;
  BasisWindow w_;
  std::map<int, ExponentPair> dvar_;
  ExponentPair ddelta_;
};

}  // namespace

ExponentPair denominator_vector(const BasisLabel& label, Frame frame) {
  return -unique_min(basis_element(label, frame), to_string(label));
}

FormalCombination expand_in_basis(const TorusElement& x, Family family, Frame frame, const BasisWindow& window) {
  LabelLocator locate(family, frame, window);
  const std::size_t cap = 4 * window_labels(family, window).size();
  FormalCombination out;
  TorusElement residue = x;
  for (std::size_t iter = 0; !residue.is_zero(); ++iter) {
    if (iter >= cap) throw ExpansionFailure("expansion hit the iteration cap", residue, out);
    std::vector<ExponentPair> ds;
    for (ExponentPair e : min_terms(residue)) ds.push_back(-e);
    std::sort(ds.begin(), ds.end());
    const ExponentPair d = ds.front();
    auto label = locate.find(d);
    if (!label)
      throw ExpansionFailure("no window label has denominator vector " + to_string(d), residue, out);
    TorusElement element = basis_element(*label, frame);
    QLaurent lead = element.coeff(-d);
    if (!lead.is_unit_monomial())
      throw StructuralViolation(to_string(*label) + " has non-unit leading coefficient " + to_string(lead));
    QLaurent coef = residue.coeff(-d) * unit_inverse(lead);
    out.add(*label, coef);
    residue -= element.scaled(coef);
  }
  return out;
}

LabelCheck check_element(const TorusElement& x1, const TorusElement& x2) {
  LabelCheck r;
  r.bar_invariant = bar(x1) == x1 && bar(x2) == x2;
  r.positive = is_positive(x1) && is_positive(x2);
  return r;
}

LabelCheck check_label(const BasisLabel& label) {
  return check_element(basis_element(label, Frame{1}), basis_element(label, Frame{2}));
}

namespace {

bool good(const TorusElement& x) { return is_positive(x) && bar(x) == x; }

double cost(const TorusElement& x, const TorusElement& y) {
  return static_cast<double>(coefficient_count(x)) * static_cast<double>(coefficient_count(y));
}

}  // namespace

LabelSweep sweep_labels(const std::vector<Family>& families, const BasisWindow& w, double work_cap) {
  // status per label: 0 unseen, 1 pass, 2 skipped; failures are recorded directly
  std::map<BasisLabel, int> frames_ok;
  std::set<BasisLabel> skipped;
  LabelSweep out;
  for (Family f : families)
    for (const BasisLabel& l : window_labels(f, w)) frames_ok.emplace(l, 0);
  out.total = frames_ok.size();

  auto record = [&](const BasisLabel& l, int s, bool pass) {
    if (pass)
      ++frames_ok[l];
    else
      out.failures.emplace_back(l, s);
  };

  for (int s : {1, 2}) {
    const Frame frame{s};
    record(BasisLabel::one(), s, true);
    for (int m = w.m_lo; m <= w.m_hi; ++m) {
      const TorusElement& xm = cluster_var(m, frame);
      const TorusElement& xn = cluster_var(m + 1, frame);
      // X_{m+1}^b rows belong to m + 1 unless m + 1 is past the window
      const int a0 = m == w.m_hi ? 0 : 1;
      TorusElement row = power(xm, a0);
      bool row_ok = true;
      for (int a = a0; a <= w.max_degree; ++a) {
        if (a > a0) {
          if (!row_ok || cost(row, xm) > work_cap) {
            row_ok = false;
          } else {
            row = row * xm;
          }
        }
        TorusElement cur = row;
        bool cur_ok = row_ok;
        for (int b = 0; a + b <= w.max_degree; ++b) {
          if (b > 0) {
            if (!cur_ok || cost(cur, xn) > work_cap)
              cur_ok = false;
            else
              cur = (cur * xn).scaled(QLaurent::monomial(-a));
          }
          if (a + b == 0) continue;
          const BasisLabel l = BasisLabel::cluster(m, a, b);
          if (cur_ok)
            record(l, s, good(cur));
          else
            skipped.insert(l);
        }
      }
    }
    for (int n = 1; n <= w.max_n; ++n)
      for (Family f : families) {
        const BasisLabel l = family_label(f, n);
        record(l, s, good(basis_element(l, frame)));
      }
  }
  for (const auto& [l, k] : frames_ok)
    if (k >= 2) ++out.checked;
  out.skipped.assign(skipped.begin(), skipped.end());
  return out;
}

Report sweep_report(const LabelSweep& sweep) {
  Report r;
  ReportEntry head = ReportEntry::make("sweep", 0, 0, 0);
  head.pass = true;
  head.detail = std::to_string(sweep.checked) + " of " + std::to_string(sweep.total) + " labels checked, " +
                std::to_string(sweep.skipped.size()) + " skipped";
  r.add(std::move(head));
  for (const auto& [l, s] : sweep.failures) {
    ReportEntry e = ReportEntry::make("label", 0, 0, s);
    e.detail = to_string(l) + " is not bar-invariant and positive";
    r.add(std::move(e));
  }
  for (const auto& l : sweep.skipped) {
    ReportEntry e = ReportEntry::make("label", 0, 0, 0);
    e.detail = to_string(l) + " skipped (over the work cap)";
    r.add(std::move(e));
  }
  return r;
}

Report verify_product_positivity(Family family, const BasisWindow& labels, const BasisWindow& expansion,
                                 const std::vector<int>& frames) {
  const std::vector<BasisLabel> ls = window_labels(family, labels);
  Report r;
  for (int s : frames) {
    const Frame frame{s};
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const TorusElement x = basis_element(ls[i], frame);
      for (std::size_t j = 0; j < ls.size(); ++j) {
        ReportEntry e = ReportEntry::make("product", static_cast<int>(i), static_cast<int>(j), s);
        e.detail = to_string(ls[i]) + " * " + to_string(ls[j]);
        try {
          FormalCombination c = expand_in_basis(x * basis_element(ls[j], frame), family, frame, expansion);
          e.pass = is_positive(c);
          if (!e.pass) e.detail += " = " + to_string(c);
        } catch (const ExpansionFailure& f) {
          e.diff = f.residue();
          e.detail += ": " + std::string(f.what());
        }
        r.add(std::move(e));
      }
    }
  }
  return r;
}

}  // namespace qclust
