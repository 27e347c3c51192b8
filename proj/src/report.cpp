#include "qclust/report.hpp"

#include <algorithm>
#include <sstream>

namespace qclust {

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const ReportEntry& e) { return !e.pass; }));
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    if (e.pass) continue;
    os << "FAIL " << e.check << " m=" << e.m << " n=" << e.n << " frame=" << e.frame;
    if (!e.diff.is_zero()) {
      const auto& [u, c] = e.diff.terms().front();
      os << " first differing term " << to_string(c) << " at " << to_string(u);
    }
    if (!e.detail.empty()) os << " (" << e.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace qclust
