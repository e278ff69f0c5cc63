#pragma once

#include <cstddef>
#include <limits>
#include <ostream>
#include <string>

#include "unfree/value.hpp"

namespace unfree {

struct PrintOptions {
  /// Elements shown per collection before `...`.
  std::size_t max_elements = std::numeric_limits<std::size_t>::max();
  /// Flush after each collection element (incremental REPL output).
  bool flush = false;
};

/// Writes `v` in surface notation, forcing it as it goes. Polls for
/// interrupts between collection elements.
void print_value(std::ostream& out, const Value& v, const PrintOptions& opts = {});
std::string to_display(const Value& v, std::size_t max_elements = std::numeric_limits<std::size_t>::max());

} // namespace unfree
