#pragma once

// REPL and file runner.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace unfree::cli {

struct Options {
  bool trace = false;
  /// Print only this many elements of the last form's collection result.
  std::optional<std::size_t> take;
  bool prelude = true;
};

/// Runs every form of `source`, printing non-define results. Stops at the
/// first error, reported on `err` with its position. Returns the exit code.
int run_source(std::string_view source, const Options& opts, std::ostream& out, std::ostream& err);
int run_file(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err);

/// Reads forms from `in` until end of input; errors are reported and the
/// session goes on. With `interactive`, prompts are written to `out`.
int repl(std::istream& in, std::ostream& out, std::ostream& err, const Options& opts, bool interactive);

} // namespace unfree::cli
