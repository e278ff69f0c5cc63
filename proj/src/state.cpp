#include "unfree/state.hpp"

#include <sstream>

#include "unfree/print.hpp"

namespace unfree::engine {

Stack push(Stack s, TreePtr t) { return std::make_shared<const StackCell>(StackCell{std::move(t), std::move(s)}); }

Stack push(Stack s, MatchingAtom a) { return push(std::move(s), make_tree(std::move(a))); }

std::vector<TreePtr> to_vector(const Stack& s) {
  std::vector<TreePtr> out;
  for (const StackCell* c = s.get(); c; c = c->next.get()) out.push_back(c->top);
  return out;
}

TreePtr make_tree(MatchingAtom a) { return std::make_shared<const MatchingTree>(MatchingTree{std::move(a)}); }

TreePtr make_tree(MatchingNode n) { return std::make_shared<const MatchingTree>(MatchingTree{std::move(n)}); }

MatchingState initial_state(syntax::PatternPtr pattern, ThunkPtr target, Value matcher, EnvPtr env) {
  return {push(nullptr, MatchingAtom{std::move(pattern), std::move(target), std::move(matcher)}), std::move(env),
          nullptr};
}

namespace {

void render_bindings(std::ostream& out, const BindingList& b, std::size_t max) {
  out << '{';
  bool first = true;
  for (const BindingCell* c : ordered(b)) {
    if (!first) out << ' ';
    first = false;
    out << '[' << c->name.name() << ' ' << to_display(c->value->force(), max) << ']';
  }
  out << '}';
}

void render_stack(std::ostream& out, const Stack& s, int depth, std::size_t max);

void render_tree(std::ostream& out, const MatchingTree& t, int depth, std::size_t max) {
  if (const auto* a = std::get_if<MatchingAtom>(&t.node)) {
    out << render_atom(*a, max);
    return;
  }
  const auto& n = std::get<MatchingNode>(t.node);
  out << "(MNode ";
  render_stack(out, n.stack, depth + 1, max);
  out << " env" << depth + 1 << ' ';
  render_bindings(out, n.bindings, max);
  out << " {";
  if (n.pattern_env) {
    for (std::size_t i = 0; i < n.pattern_env->size(); ++i) {
      if (i) out << ' ';
      out << '[' << (*n.pattern_env)[i].first.name() << ' ' << syntax::to_string(*(*n.pattern_env)[i].second)
          << ']';
    }
  }
  out << "})";
}

void render_stack(std::ostream& out, const Stack& s, int depth, std::size_t max) {
  out << '{';
  bool first = true;
  for (const StackCell* c = s.get(); c; c = c->next.get()) {
    if (!first) out << ' ';
    first = false;
    render_tree(out, *c->top, depth, max);
  }
  out << '}';
}

} // namespace

std::string render_atom(const MatchingAtom& a, std::size_t max_elements) {
  return "[" + syntax::to_string(*a.pattern) + " " + to_display(a.target->force(), max_elements) + " " +
         to_display(a.matcher, max_elements) + "]";
}

std::string render_state(const MatchingState& s, std::size_t max_elements) {
  std::ostringstream out;
  out << "MState ";
  render_stack(out, s.stack, 0, max_elements);
  out << " env ";
  render_bindings(out, s.bindings, max_elements);
  return out.str();
}

} // namespace unfree::engine
