#pragma once

// Golden transcripts: programs with their expected printed output.
//
// File format. A case starts with `=== name`. Optional header lines
// `;; load: file.egi` (relative to the corpus directory, may repeat) and
// `;; order: multiset` follow. Each `> form` line starts an input form,
// which may continue on following lines until it is complete; the lines
// after it, up to the next `>` or `===`, are its expected output.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace unfree::corpus {

struct Step {
  std::string input;
  std::string expected;  // lines joined with '\n', no trailing newline
};

struct GoldenCase {
  std::string name;
  std::string file;  // where it was read from
  std::vector<std::string> loads;
  /// Compare the collection printed by the last step as a multiset.
  bool order_insensitive = false;
  std::vector<Step> steps;
};

std::vector<GoldenCase> parse_corpus(std::string_view text, const std::string& file = {});
/// Every `*.golden` file of `dir`, in file name order.
std::vector<GoldenCase> load_corpus_dir(const std::filesystem::path& dir);

struct CaseResult {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
  std::string error;
  double seconds = 0;
};

struct Report {
  std::vector<CaseResult> results;
  double seconds = 0;

  [[nodiscard]] std::size_t passed() const;
  [[nodiscard]] std::size_t failed() const { return results.size() - passed(); }
};

/// Runs one case in a fresh session with the prelude and its loads.
CaseResult run_case(const GoldenCase& c, const std::filesystem::path& dir);
Report run_corpus(const std::vector<GoldenCase>& cases, const std::filesystem::path& dir);

/// Two printed collections with the same elements, ignoring order.
bool same_elements(std::string_view a, std::string_view b);

} // namespace unfree::corpus
