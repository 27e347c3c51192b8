#pragma once

// The bar-invariant bases B, S, D: cluster monomials together with
// F_n(X_delta), S_n(X_delta) or X_delta^n respectively.

#include "qclust/cluster.hpp"
#include "qclust/errors.hpp"
#include "qclust/labels.hpp"
#include "qclust/report.hpp"

#include <vector>

namespace qclust {

enum class Family { B, S, D };

std::string to_string(Family f);
Family parse_family(std::string_view text);

/// Bounds on the candidate labels used by expansion.
struct BasisWindow {
  int m_lo = -10;
  int m_hi = 12;
  int max_degree = 8;  // a + b for cluster monomials
  int max_n = 10;      // Chebyshev / power index
};

/// Whether the label belongs to the family (cluster monomials and 1 belong to all).
bool in_family(const BasisLabel& label, Family family);

/// Every label of the family inside the window, in canonical order.
std::vector<BasisLabel> window_labels(Family family, const BasisWindow& window);

/// Torus expansion of the basis element.
TorusElement basis_element(const BasisLabel& label, Frame frame);

/// Negated unique minimal exponent. Throws StructuralViolation if the
/// element has several minimal terms.
ExponentPair denominator_vector(const BasisLabel& label, Frame frame);

/// d(X_m) from the tropical exchange recursion
/// d_{k-1} + d_{k+1} = e_k [d_k]_+ (e_k = 1 for odd k, 4 for even k),
/// started at d_s = (-1,0), d_{s+1} = (0,-1). Needs no expansion.
ExponentPair variable_denominator(int m, Frame frame);

/// Expansion did not terminate inside the window; carries what was left.
class ExpansionFailure : public StructuralViolation {
 public:
  ExpansionFailure(const std::string& what, TorusElement residue, FormalCombination partial)
      : StructuralViolation(what), residue_(std::move(residue)), partial_(std::move(partial)) {}
  const TorusElement& residue() const { return residue_; }
  const FormalCombination& partial() const { return partial_; }

 private:
  TorusElement residue_;
  FormalCombination partial_;
};

/// Writes x as a combination of family labels by repeatedly peeling the
/// label whose denominator vector matches a minimal term of the residue.
/// Throws ExpansionFailure if a minimal term has no label in the window or
/// the iteration cap (4 x window label count) is reached.
FormalCombination expand_in_basis(const TorusElement& x, Family family, Frame frame,
                                  const BasisWindow& window = {});

struct LabelCheck {
  bool bar_invariant = true;
  bool positive = true;
};

/// Result of checking every label of a window.
struct LabelSweep {
  std::size_t total = 0;    // distinct labels in the window (all families requested)
  std::size_t checked = 0;  // labels checked in both frames
  std::vector<BasisLabel> skipped;                   // over the work cap in some frame
  std::vector<std::pair<BasisLabel, int>> failures;  // label, frame
  bool complete() const { return skipped.empty(); }
  bool all_pass() const { return failures.empty() && complete(); }
};

/// Bar-invariance and positivity of every label of the families in the window,
/// in frames 1 and 2. Cluster monomials are built row by row, one
/// multiplication per label. A product whose cost estimate (coefficient count
/// of the two factors multiplied) exceeds `work_cap` is not computed; it and
/// the rest of its row are reported as skipped.
LabelSweep sweep_labels(const std::vector<Family>& families, const BasisWindow& window, double work_cap);

/// One entry per failing or skipped label (check "label"), plus one passing
/// "sweep" entry carrying the counts in its detail.
Report sweep_report(const LabelSweep& sweep);

/// Expands x*y in the family for every ordered pair of labels of the window,
/// in each frame, and checks the coefficients lie in N[q^{+-1/2}]. Entries
/// have check "product", m and n the positions of x and y in window_labels.
Report verify_product_positivity(Family family, const BasisWindow& labels, const BasisWindow& expansion,
                                 const std::vector<int>& frames = {1, 2});

/// Bar-invariance and positivity of an element in frames 1 and 2.
LabelCheck check_element(const TorusElement& frame1, const TorusElement& frame2);
LabelCheck check_label(const BasisLabel& label);

}  // namespace qclust
