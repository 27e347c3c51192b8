#include "qclust/multiplication.hpp"

#include "qclust/bases.hpp"
#include "qclust/errors.hpp"

#include <algorithm>

namespace qclust {

int parity_bracket(int n) { return (n & 1) ? 1 : 2; }

std::string to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::C1a:
      return "1a";
    case TheoremCase::C1b:
      return "1b";
    case TheoremCase::C2:
      return "2";
    case TheoremCase::C3a:
      return "3a";
    case TheoremCase::C3b:
      return "3b";
    case TheoremCase::C4:
      return "4";
  }
  return "?";
}

TheoremCase parse_case(std::string_view text) {
  for (TheoremCase c : kAllCases)
    if (to_string(c) == text) return c;
  throw std::invalid_argument("unknown case '" + std::string(text) + "' (expected 1a, 1b, 2, 3a, 3b or 4)");
}

bool admissible(TheoremCase c, int m, int n) {
  if (n < 1) return false;
  const bool m_even = (m & 1) == 0;
  switch (c) {
    case TheoremCase::C1a:
    case TheoremCase::C2:
      return m_even;
    case TheoremCase::C1b:
    case TheoremCase::C4:
      return !m_even;
    case TheoremCase::C3a:
    case TheoremCase::C3b:
      return m_even && (n & 1);
  }
  return false;
}

std::pair<long long, long long> coef_ab(int j) {
  if (j <= 0) throw DomainError("coef_ab: j must be positive");
  long long a = static_cast<long long>(j) * (j - 1) / 2;
  return {a, a + (j + 1) / 2};
}

namespace {

// c * q^{e} for an integer power e of q.
QLaurent qpow(int e, long long c = 1) { return QLaurent::monomial(2 * e, Integer(c)); }
// q^{h/2}
QLaurent qhalf(int h) { return QLaurent::monomial(h); }

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

QLaurent coef_c(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("coef_c: need 1 <= k <= n");
  QLaurent c;
  for (int i = 1; i <= k; ++i) {
    long long ai = coef_ab(i).first;
    c += qpow(-2 * (n - i) - 1, ai) + qpow(4 * k - 2 * (n + i) + 1, ai);
  }
  for (int i = 1; i < k; ++i) {
    long long bi = coef_ab(i).second;
    c += qpow(-2 * (n - i), bi) + qpow(4 * k - 2 * (n + i), bi);
  }
  c += qpow(-2 * (n - k), coef_ab(k).second);
  return c;
}

FormalCombination theorem2_rhs(TheoremCase c, int m, int n, const RhsOptions& opts) {
  if (!admissible(c, m, n))
    throw PreconditionError("case " + to_string(c) + " does not apply to m=" + std::to_string(m) +
                            ", n=" + std::to_string(n));
  FormalCombination r;
  switch (c) {
    case TheoremCase::C1a:
      r.add(BasisLabel::var(m - 2 * n), qhalf(-n));
      r.add(BasisLabel::var(m + 2 * n), qhalf(n));
      break;

    case TheoremCase::C1b:
      r.add(BasisLabel::var(m - n, parity_bracket(m - n)), qpow(-n));
      r.add(BasisLabel::var(m + n, parity_bracket(m + n)), qpow(n));
      for (int k = 1; n - 2 * k >= 0; ++k) {
        QLaurent inner;
        for (int l = 1; l <= k; ++l)
          inner += qhalf(-(4 * l - 1)) + qhalf(-(4 * l - 3)) + qhalf(4 * l - 3) + qhalf(4 * l - 1);
        r.add(BasisLabel::f(n - 2 * k), inner);
      }
      break;

    case TheoremCase::C2:
      r.add(BasisLabel::var(m + n, parity_bracket(m + n)), qhalf(n));
      for (int k = 1; n - 2 * k + 1 >= 0; ++k) {
        QLaurent inner;
        for (int l = 1; l <= 2 * k - 1; ++l) inner += qhalf(-(n + 1) + 2 * l);
        r.add(BasisLabel::f(n - 2 * k + 1), inner);
      }
      break;

    case TheoremCase::C3a:
    case TheoremCase::C3b: {
      const bool below = c == TheoremCase::C3a;
      const int sign = below ? -1 : 1;
      // 1 < 2k < n
      for (int k = 1; 2 * k < n; ++k) {
        const int bound = std::min(4 * k, opts.narrow_min_bound ? n - 4 * k : n - 2 * k);
        QLaurent inner;
        for (int l = 1; l <= bound; ++l) inner += below ? qhalf(-1 - 2 * k + 2 * l) : qhalf(1 + 2 * k - 2 * l);
        r.add(BasisLabel::var(m + sign * 4 * k), inner);
      }
      if (n % 3 == 0) {
        r.add(BasisLabel::var(m + sign * 2 * n / 3, 3), qhalf(-sign * n));
      } else {
        // X_j X_{j+1} = q^{1/2} (q^{-1/2} X_j X_{j+1})
        const int num = 3 * m + sign * 2 * n;
        const int lo = floor_div(num, 3);
        if (ceil_div(num, 3) != lo + 1) throw StructuralViolation("tail indices are not consecutive");
        QLaurent scalar = below ? qhalf(n - 1) : qhalf(-(n + 1));
        r.add(BasisLabel::cluster(lo, 1, 1), scalar * qhalf(1));
      }
      break;
    }

    case TheoremCase::C4: {
      r.add(BasisLabel::var(m + n, 2 * parity_bracket(m + n)), qpow(2 * n));
      for (int k = 1; k <= n - 1; ++k) {
        QLaurent inner;
        for (int l = 1; l <= 4 * std::min(k, n - k); ++l) inner += qhalf(-1 + 2 * l);
        r.add(BasisLabel::var(m + 2 * n - 2 * k), inner);
      }
      const int k_max = opts.case4_stop_early ? n - 1 : n;
      for (int k = 1; k <= k_max; ++k) r.add(BasisLabel::f(2 * n - 2 * k), coef_c(n, k));
      break;
    }
  }
  return r;
}

TorusElement theorem2_lhs(TheoremCase c, int m, int n, Frame frame) {
  switch (c) {
    case TheoremCase::C1a:
    case TheoremCase::C1b:
      return cluster_var(m, frame) * chebyshev(ChebyshevKind::F, n, frame);
    case TheoremCase::C2:
    case TheoremCase::C4:
      return cluster_var(m, frame) * cluster_var(m + 2 * n, frame);
    case TheoremCase::C3a:
      return cluster_var(m - n, frame) * cluster_var(m, frame);
    case TheoremCase::C3b:
      return cluster_var(m + n, frame) * cluster_var(m, frame);
  }
  return {};
}

TorusElement realize(const FormalCombination& c, Frame frame) {
  TorusElement out;
  for (const auto& [label, coef] : c.terms()) out += basis_element(label, frame).scaled(coef);
  return out;
}

Report verify_chebyshev_products(int max_index, Frame frame) {
  Report rep;
  auto F = [&](int k) -> const TorusElement& { return chebyshev(ChebyshevKind::F, k, frame); };
  for (int m = 2; m <= max_index; ++m)
    for (int n = 1; n < m; ++n) {
      ReportEntry e = ReportEntry::make("F-product", m, n, frame.s);
      e.diff = F(n) * F(m) - (F(m + n) + F(m - n));
      e.pass = e.diff.is_zero();
      rep.add(std::move(e));
    }
  for (int n = 1; n <= max_index; ++n) {
    ReportEntry e = ReportEntry::make("F-square", n, n, frame.s);
    e.diff = F(n) * F(n) - (F(2 * n) + TorusElement(QLaurent(2)));
    e.pass = e.diff.is_zero();
    rep.add(std::move(e));
  }
  return rep;
}

Report verify_delta_formulas(Frame frame) {
  Report rep;
  for (int w = frame.s - 1; w <= frame.s; ++w) {
    auto formula = (w & 1) ? DeltaFormula::OddWindow : DeltaFormula::EvenWindow;
    ReportEntry e = ReportEntry::make((w & 1) ? "delta-odd-window" : "delta-even-window", w, 0, frame.s);
    e.diff = x_delta_from_window(frame, formula, w) - x_delta(frame);
    e.pass = e.diff.is_zero();
    rep.add(std::move(e));
  }
  return rep;
}

Report verify_theorem2(int m_lo, int m_hi, int n_lo, int n_hi, const VerifyOptions& opts) {
  Report rep;
  for (int s : opts.frames) {
    const Frame frame{s};
    for (TheoremCase c : kAllCases)
      for (int m = m_lo; m <= m_hi; ++m)
        for (int n = std::max(n_lo, 1); n <= n_hi; ++n) {
          if (!admissible(c, m, n)) continue;
          FormalCombination rhs = theorem2_rhs(c, m, n);
          if (opts.perturb && opts.perturb->c == c && opts.perturb->m == m && opts.perturb->n == n) {
            FormalCombination bump;
            bump.add(opts.perturb->label, opts.perturb->delta);
            rhs += bump;
          }
          ReportEntry e = ReportEntry::make(to_string(c), m, n, s);
          e.diff = theorem2_lhs(c, m, n, frame) - realize(rhs, frame);
          e.pass = e.diff.is_zero();
          rep.add(std::move(e));
        }
    if (opts.identities) {
      rep.append(verify_delta_formulas(frame));
      rep.append(verify_chebyshev_products(std::min(std::max(n_hi, 2), 6), frame));
    }
  }
  return rep;
}

QLaurent coef_p(int n) {
  QLaurent p;
  for (int k = 1; k <= n - 1; ++k)
    for (int l = 1; l <= 4 * std::min(k, n - k); ++l) p += qpow(-4 + l) + qpow(-3 + l) + qpow(-2 + l) + qpow(-1 + l);
  return p;
}

QLaurent c_recursion_lhs(int n) {
  if (n < 2) throw DomainError("c_recursion_lhs: n must be at least 2");
  return qpow(2 * n - 4) + qpow(2 * n) + coef_p(n) + coef_c(n + 1, n - 1);
}

Report verify_coefficient_identities(int n_lo, int n_hi) {
  Report rep;
  auto check = [&](std::string name, int n, const QLaurent& lhs, const QLaurent& rhs) {
    ReportEntry e = ReportEntry::make(std::move(name), 0, n, 0);
    e.diff = TorusElement(lhs - rhs);
    e.pass = e.diff.is_zero();
    rep.add(std::move(e));
  };
  check("c21", 2, coef_c(2, 1), qpow(-2));
  check("c22", 2, coef_c(2, 2), qpow(-2) + qpow(-1) + QLaurent(2) + qpow(1) + qpow(2));
  for (int n = std::max(n_lo, 2); n <= n_hi; ++n) check("c-recursion", n, coef_c(n + 1, n + 1), c_recursion_lhs(n));
  return rep;
}

}  // namespace qclust
