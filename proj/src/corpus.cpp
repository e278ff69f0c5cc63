#include "unfree/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "unfree/core.hpp"
#include "unfree/error.hpp"
#include "unfree/print.hpp"
#include "unfree/session.hpp"

namespace unfree::corpus {
namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ' || s.back() == '\r')) s.pop_back();
  return s;
}

/// True when `text` holds complete forms only.
bool complete(const std::string& text) {
  try {
    syntax::read_program(text);
    return true;
  } catch (const SyntaxError& e) {
    return !e.incomplete();
  }
}

std::vector<std::string> elements_of(std::string_view printed) {
  Session s(false);
  Value v = s.eval_form(*syntax::read_expr(printed)).value();
  std::vector<std::string> out;
  for (const auto& t : force_collection(v)) out.push_back(to_display(t->force()));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<GoldenCase> parse_corpus(std::string_view text, const std::string& file) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }

  std::vector<GoldenCase> cases;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& l = lines[i];
    if (!starts_with(l, "=== ")) {
      if (!l.empty() && !starts_with(l, ";"))
        throw Error(file + ":" + std::to_string(i + 1) + ": expected `=== name'");
      ++i;
      continue;
    }
    GoldenCase c;
    c.name = l.substr(4);
    c.file = file;
    ++i;
    for (; i < lines.size() && starts_with(lines[i], ";; "); ++i) {
      std::string_view h = std::string_view(lines[i]).substr(3);
      if (starts_with(h, "load: ")) c.loads.emplace_back(h.substr(6));
      else if (h == "order: multiset") c.order_insensitive = true;
    }
    while (i < lines.size() && !starts_with(lines[i], "=== ")) {
      if (!starts_with(lines[i], "> ")) {
        if (lines[i].find_first_not_of(' ') != std::string::npos)
          throw Error(file + ":" + std::to_string(i + 1) + ": output without an input form");
        ++i;
        continue;
      }
      Step step;
      step.input = lines[i].substr(2);
      ++i;
      while (!complete(step.input) && i < lines.size()) step.input += "\n" + lines[i++];
      std::string expected;
      for (; i < lines.size() && !starts_with(lines[i], "> ") && !starts_with(lines[i], "=== "); ++i)
        expected += lines[i] + "\n";
      step.expected = trim_right(expected);
      c.steps.push_back(std::move(step));
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<GoldenCase> load_corpus_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".golden") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<GoldenCase> out;
  for (const auto& f : files) {
    auto cs = parse_corpus(read_file(f), f.filename().string());
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; }));
}

bool same_elements(std::string_view a, std::string_view b) {
  try {
    return elements_of(a) == elements_of(b);
  } catch (const Error&) {
    return false;
  }
}

CaseResult run_case(const GoldenCase& c, const std::filesystem::path& dir) {
  CaseResult r;
  r.name = c.name;
  auto start = std::chrono::steady_clock::now();
  std::string expected;
  std::string actual;
  try {
    Session session;
    for (const auto& f : c.loads) session.load(read_file(dir / f));
    for (std::size_t k = 0; k < c.steps.size(); ++k) {
      std::ostringstream out;
      session.run(c.steps[k].input, out);
      std::string got = trim_right(out.str());
      if (!expected.empty() && !c.steps[k].expected.empty()) expected += "\n";
      expected += c.steps[k].expected;
      if (!actual.empty() && !got.empty()) actual += "\n";
      actual += got;
      const bool last = k + 1 == c.steps.size();
      bool ok = got == c.steps[k].expected;
      if (!ok && last && c.order_insensitive) ok = same_elements(got, c.steps[k].expected);
      if (!ok && r.error.empty()) r.error = "mismatch at input: " + c.steps[k].input;
    }
    r.passed = r.error.empty();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.expected = expected;
  r.actual = actual;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_corpus(const std::vector<GoldenCase>& cases, const std::filesystem::path& dir) {
  Report rep;
  auto start = std::chrono::steady_clock::now();
  for (const auto& c : cases) rep.results.push_back(run_case(c, dir));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace unfree::corpus
