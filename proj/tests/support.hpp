#pragma once

// Shared helpers for the unit tests.

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "unfree/core.hpp"
#include "unfree/print.hpp"
#include "unfree/session.hpp"

namespace test {

inline std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

/// Printed output of every non-define form of `src`.
inline std::string run(unfree::Session& s, std::string_view src) {
  std::ostringstream out;
  s.run(src, out);
  return trim(out.str());
}

inline std::string run(std::string_view src) {
  unfree::Session s;
  return run(s, src);
}

/// Value of the last form of `src`.
inline unfree::Value value_of(unfree::Session& s, std::string_view src) {
  std::optional<unfree::Value> last;
  for (const auto& form : unfree::syntax::read_program(src)) last = s.eval_form(*form);
  return last.value();
}

/// Printed elements of a finite collection, sorted.
inline std::vector<std::string> sorted_elements(const unfree::Value& c) {
  std::vector<std::string> out;
  for (const auto& t : unfree::force_collection(c)) out.push_back(unfree::to_display(t->force()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Collapses runs of blanks so multi-line renderings compare equal to
/// single-line ones.
inline std::string squeeze(std::string_view s) {
  std::string out;
  bool blank = false;
  for (char c : s) {
    if (c == ' ' || c == '\n' || c == '\t') {
      blank = true;
      continue;
    }
    if (blank && !out.empty()) out += ' ';
    blank = false;
    out += c;
  }
  return out;
}

} // namespace test
