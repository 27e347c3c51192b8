#pragma once

// Closed-form products of cluster variables and Chebyshev elements, the
// coefficients a_j, b_j, c_{n,k}, and a verifier that compares each formula
// with the direct torus product.

#include "qclust/cluster.hpp"
#include "qclust/labels.hpp"
#include "qclust/report.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qclust {

/// <n>: 1 for odd n, 2 for even n.
int parity_bracket(int n);

/// 1a: X_m F_n, m even.          1b: X_m F_n, m odd.
/// 2:  X_m X_{m+2n}, m even.      3a: X_{m-n} X_m, m even, n odd.
/// 3b: X_{m+n} X_m, m even, n odd. 4:  X_m X_{m+2n}, m odd.
enum class TheoremCase { C1a, C1b, C2, C3a, C3b, C4 };

inline constexpr TheoremCase kAllCases[] = {TheoremCase::C1a, TheoremCase::C1b, TheoremCase::C2,
                                            TheoremCase::C3a, TheoremCase::C3b, TheoremCase::C4};

std::string to_string(TheoremCase c);
TheoremCase parse_case(std::string_view text);

/// Whether (m, n) satisfies the parity hypotheses of the case (n >= 1 always).
bool admissible(TheoremCase c, int m, int n);

/// (a_j, b_j) = (j(j-1)/2, j(j-1)/2 + ceil(j/2)). Throws DomainError for j <= 0.
std::pair<long long, long long> coef_ab(int j);
/// c_{n,k} for 1 <= k <= n. Throws DomainError otherwise.
QLaurent coef_c(int n, int k);

/// Knobs for probing alternative readings of the formulas. The defaults are
/// the normative ones; the others exist so tests can show they fail.
struct RhsOptions {
  bool narrow_min_bound = false;  // case 3: min(4k, n-4k) instead of min(4k, n-2k)
  bool case4_stop_early = false;  // case 4: c_{n,k} sum over k <= n-1 only
};

/// Right-hand side as a combination of basis labels. Throws PreconditionError
/// when the parity hypotheses fail.
FormalCombination theorem2_rhs(TheoremCase c, int m, int n, const RhsOptions& opts = {});
/// Left-hand side as a direct product in the frame, operands in printed order.
TorusElement theorem2_lhs(TheoremCase c, int m, int n, Frame frame);

/// sum c_L * (torus expansion of L).
TorusElement realize(const FormalCombination& c, Frame frame);

/// A coefficient change injected into one instance; used as a negative control.
struct Perturbation {
  TheoremCase c = TheoremCase::C1a;
  int m = 0, n = 0;
  BasisLabel label;
  QLaurent delta = QLaurent(1);
};

struct VerifyOptions {
  std::vector<int> frames{1, 2};
  bool identities = true;  // delta window formulas and F-product identities
  std::optional<Perturbation> perturb;
};

/// Checks every admissible (case, m, n) in the ranges in each frame.
Report verify_theorem2(int m_lo, int m_hi, int n_lo, int n_hi, const VerifyOptions& opts = {});

/// F_n F_m = F_{m+n} + F_{m-n} (m > n >= 1) and F_n^2 = F_{2n} + 2, for m, n <= max_index.
Report verify_chebyshev_products(int max_index, Frame frame);
/// Both window formulas for X_delta against the generated X_delta.
Report verify_delta_formulas(Frame frame);

/// P_n = sum_{k=1}^{n-1} sum_{l=1}^{4 min(k,n-k)} (q^{-4+l} + q^{-3+l} + q^{-2+l} + q^{-1+l}).
QLaurent coef_p(int n);
/// Left side q^{2n-4} + q^{2n} + P_n + c_{n+1,n-1} of the c_{n+1,n+1} recursion.
QLaurent c_recursion_lhs(int n);

/// c_{2,1} = q^-2, c_{2,2} = q^-2 + q^-1 + 2 + q + q^2, and c_{n+1,n+1} against
/// c_recursion_lhs(n) for n in [n_lo, n_hi]. Diffs are scalars.
Report verify_coefficient_identities(int n_lo, int n_hi);

}  // namespace qclust
