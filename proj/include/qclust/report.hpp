#pragma once

// Pass/fail records produced by the verifiers.

#include "qclust/torus.hpp"

#include <string>
#include <vector>

namespace qclust {

struct ReportEntry {
  std::string check;   // case tag or identity name
  int m = 0;
  int n = 0;
  int frame = 0;
  bool pass = false;
  TorusElement diff;   // lhs - rhs; zero on pass
  std::string detail;  // optional free-form note

  static ReportEntry make(std::string check, int m, int n, int frame) {
    ReportEntry e;
    e.check = std::move(check);
    e.m = m;
    e.n = n;
    e.frame = frame;
    return e;
  }
};

struct Report {
  std::vector<ReportEntry> entries;

  void add(ReportEntry e) { entries.push_back(std::move(e)); }
  void append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
  /// One line per failing entry, with the first differing term.
  std::string summary() const;
};

}  // namespace qclust
