#pragma once

// Breadth-first reduction of matching-states.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "unfree/state.hpp"

namespace unfree::engine {

/// Lazily produced successors of one state; nullopt when exhausted.
using Successors = std::function<std::optional<MatchingState>()>;

/// One reduction step on the innermost top atom of `s`.
Successors reduce_state(const MatchingState& s);
std::vector<MatchingState> reduce_state_all(const MatchingState& s);

/// Evaluates the expression of a value-pattern in `context`, the
/// environment of the atom's level extended with that level's bindings.
Value eval_value_pattern(const syntax::Expr& e, const EnvPtr& context);

/// Work queue of successor generators. Each step takes one state from the
/// front generator and re-queues the generator behind the state's own
/// successors, which makes the traversal fair on infinitely wide trees.
class Machine {
public:
  explicit Machine(MatchingState initial);

  /// Bindings of the next successful state, or nullopt when the search
  /// space is exhausted.
  std::optional<BindingList> next();

  [[nodiscard]] std::size_t steps() const { return steps_; }

private:
  Successors pop();

  /// Pending generators from `head_` on.
  std::vector<Successors> queue_;
  std::size_t head_ = 0;
  std::size_t steps_ = 0;
  int depth_;
};

/// Lazy collection of the clause body evaluated under every result.
Value match_all(ThunkPtr target, const Value& matcher, const syntax::MatchClause& clause,
                const EnvPtr& env);

/// Body of the first clause that has a result, under its first result.
Value match_first(ThunkPtr target, const Value& matcher, const std::vector<syntax::MatchClause>& clauses,
                  const EnvPtr& env);

/// Called with each state a machine takes from its queue, along with the
/// machine's nesting depth: 0 unless the machine was started while another
/// one was stepping (e.g. the `match-all` inside the multiset matcher).
using TraceHook = std::function<void(const MatchingState&, int depth)>;
void set_trace_hook(TraceHook hook);

} // namespace unfree::engine
