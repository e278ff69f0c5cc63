#pragma once

// Data of the matching machine: atoms, nodes, stacks and states.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "unfree/syntax.hpp"
#include "unfree/value.hpp"

namespace unfree::engine {

struct MatchingAtom {
  syntax::PatternPtr pattern;
  ThunkPtr target;
  Value matcher;
};

struct MatchingTree;
using TreePtr = std::shared_ptr<const MatchingTree>;

struct StackCell {
  TreePtr top;
  std::shared_ptr<const StackCell> next;
};
/// Persistent stack of matching-trees; null is empty.
using Stack = std::shared_ptr<const StackCell>;

Stack push(Stack s, TreePtr t);
Stack push(Stack s, MatchingAtom a);
std::vector<TreePtr> to_vector(const Stack& s);

/// Variable-pattern name to argument pattern.
using PatternEnv = std::shared_ptr<const std::vector<std::pair<Symbol, syntax::PatternPtr>>>;

/// Scope opened by applying a pattern-function.
struct MatchingNode {
  Stack stack;
  EnvPtr env;
  BindingList bindings;
  PatternEnv pattern_env;
};

struct MatchingTree {
  std::variant<MatchingAtom, MatchingNode> node;
};

TreePtr make_tree(MatchingAtom a);
TreePtr make_tree(MatchingNode n);

struct MatchingState {
  Stack stack;
  EnvPtr env;
  BindingList bindings;

  [[nodiscard]] bool succeeded() const { return !stack; }
};

MatchingState initial_state(syntax::PatternPtr pattern, ThunkPtr target, Value matcher, EnvPtr env);

/// `MState {[pat tgt matcher] ...} env {[x v] ...}`. Node environments print
/// as env1, env2, ... by depth. Collections longer than `max_elements`
/// are cut off with `...`.
std::string render_state(const MatchingState& s, std::size_t max_elements = 12);
std::string render_atom(const MatchingAtom& a, std::size_t max_elements = 12);

} // namespace unfree::engine
