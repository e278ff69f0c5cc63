#pragma once

// Recording the states machines reduce, and checking single steps.

#include <string>
#include <vector>

#include "support.hpp"
#include "unfree/engine.hpp"

namespace test {

struct Traced {
  int depth;
  unfree::engine::MatchingState state;
  std::string rendered;
};

/// Every state that machines take from their queues while `src` runs.
inline std::vector<Traced> trace_of(unfree::Session& s, const std::string& src) {
  using namespace unfree::engine;
  std::vector<Traced> out;
  set_trace_hook([&](const MatchingState& st, int depth) { out.push_back({depth, st, render_state(st)}); });
  try {
    run(s, src);
  } catch (...) {
    set_trace_hook(nullptr);
    throw;
  }
  set_trace_hook(nullptr);
  return out;
}

inline const Traced* find(const std::vector<Traced>& trace, const std::string& rendering) {
  for (const auto& t : trace)
    if (t.rendered == squeeze(rendering)) return &t;
  return nullptr;
}

inline std::vector<std::string> successors(const unfree::engine::MatchingState& s) {
  std::vector<std::string> out;
  for (const auto& n : unfree::engine::reduce_state_all(s)) out.push_back(unfree::engine::render_state(n));
  return out;
}

inline std::vector<std::string> squeezed(std::vector<std::string> v) {
  for (auto& s : v) s = squeeze(s);
  return v;
}

} // namespace test
