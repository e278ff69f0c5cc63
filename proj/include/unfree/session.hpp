#pragma once

// A top-level environment with the standard prelude loaded.

#include <optional>
#include <ostream>
#include <string_view>

#include "unfree/syntax.hpp"
#include "unfree/value.hpp"

namespace unfree {

/// Source text of the standard prelude.
std::string_view prelude_source();

class Session {
public:
  explicit Session(bool load_prelude = true);

  [[nodiscard]] const EnvPtr& env() const { return env_; }

  /// Evaluates one top-level form. A `define` yields nullopt.
  std::optional<Value> eval_form(const syntax::Expr& form);

  /// Evaluates every form, discarding results.
  void load(std::string_view source);

  /// Evaluates every form and prints each non-define result on its own line.
  void run(std::string_view source, std::ostream& out);

private:
  EnvPtr env_;
};

} // namespace unfree
