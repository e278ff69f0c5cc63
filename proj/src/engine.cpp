#include "unfree/engine.hpp"

#include <memory>

#include "unfree/core.hpp"
#include "unfree/error.hpp"
#include "unfree/matchers.hpp"

namespace unfree::engine {
namespace {

using namespace syntax;

TraceHook g_trace;
int g_active_machines = 0;

/// One level of the path from the state down to the innermost node whose
/// top is the atom being reduced. Level 0 is the state itself.
struct Level {
  Stack stack;
  EnvPtr env;
  BindingList bindings;
  PatternEnv pattern_env;
};

using Path = std::vector<Level>;

std::shared_ptr<const Path> descend(const MatchingState& s) {
  auto shared = std::make_shared<Path>();
  Path& path = *shared;
  path.reserve(4);
  path.push_back({s.stack, s.env, s.bindings, nullptr});
  for (;;) {
    const Stack& top = path.back().stack;
    if (!top) throw RuntimeError("reduce_state: the state has already succeeded");
    const auto* node = std::get_if<MatchingNode>(&top->top->node);
    if (!node) return shared;
    path.push_back({node->stack, node->env, node->bindings, node->pattern_env});
  }
}

/// Rebuilds a state from `path` where the innermost level now has
/// `stack`/`bindings`, optionally pushing `hoisted` onto the level above.
/// Nodes left with an empty stack are dropped.
MatchingState rebuild(const Path& path, Stack stack, BindingList bindings,
                      const std::optional<MatchingAtom>& hoisted = std::nullopt) {
  std::size_t i = path.size() - 1;
  std::optional<MatchingNode> child;
  if (i > 0) {
    if (stack) child = MatchingNode{std::move(stack), path[i].env, std::move(bindings), path[i].pattern_env};
    --i;
    for (;; --i) {
      Stack s = path[i].stack->next;
      if (child) s = push(std::move(s), make_tree(std::move(*child)));
      if (hoisted && i == path.size() - 2) s = push(std::move(s), *hoisted);
      if (i == 0) return {std::move(s), path[0].env, path[0].bindings};
      child.reset();
      if (s) child = MatchingNode{std::move(s), path[i].env, path[i].bindings, path[i].pattern_env};
    }
  }
  return {std::move(stack), path[0].env, std::move(bindings)};
}

EnvPtr context_of(const Level& l) { return Env::extend(l.env, l.bindings); }

Successors single(MatchingState s) {
  return [cell = std::optional<MatchingState>(std::move(s))]() mutable {
    std::optional<MatchingState> out;
    out.swap(cell);
    return out;
  };
}

Successors none() {
  return []() -> std::optional<MatchingState> { return std::nullopt; };
}

Successors from_vector(std::vector<MatchingState> states) {
  auto v = std::make_shared<std::vector<MatchingState>>(std::move(states));
  auto i = std::make_shared<std::size_t>(0);
  return [v, i]() -> std::optional<MatchingState> {
    if (*i == v->size()) return std::nullopt;
    return std::move((*v)[(*i)++]);
  };
}

Stack push_all(Stack s, const std::vector<MatchingAtom>& atoms) {
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) s = push(std::move(s), *it);
  return s;
}

/// The state reduced to the single atom `a` at the innermost level, with
/// every stack otherwise emptied: the context a not-pattern is checked in.
MatchingState isolate(const Path& path, const MatchingAtom& a) {
  Stack s = push(nullptr, a);
  for (std::size_t i = path.size() - 1; i > 0; --i)
    s = push(nullptr, make_tree(MatchingNode{std::move(s), path[i].env, path[i].bindings,
                                             path[i].pattern_env}));
  return {std::move(s), path[0].env, path[0].bindings};
}

[[noreturn]] void fail(const std::string& msg, const Pattern& p) { throw RuntimeError(msg, p.pos); }

Successors reduce_atom(const std::shared_ptr<const Path>& shared_path, const MatchingAtom& a) {
  const Path& path = *shared_path;
  const Level& level = path.back();
  const Stack rest = level.stack->next;
  const Pattern& p = *a.pattern;
  const Value& m = a.matcher;

  if (std::holds_alternative<WildcardPattern>(p.node)) return single(rebuild(path, rest, level.bindings));

  if (const auto* pv = std::get_if<PatternVariable>(&p.node)) {
    if (m.is<SomethingMatcher>() || m.is<Tuple>()) {
      if (find_binding(level.bindings, pv->name))
        fail("pattern variable `$" + pv->name.name() + "' is bound twice", p);
      return single(rebuild(path, rest, add_binding(level.bindings, pv->name, a.target)));
    }
  }

  if (const auto* vp = std::get_if<VariablePattern>(&p.node)) {
    if (path.size() < 2 || !level.pattern_env)
      fail("variable-pattern `" + vp->name.name() + "' outside a pattern-function", p);
    for (const auto& [name, arg] : *level.pattern_env)
      if (name == vp->name) return single(rebuild(path, rest, level.bindings, MatchingAtom{arg, a.target, m}));
    fail("`" + vp->name.name() + "' is not a parameter of the pattern-function", p);
  }

  if (const auto* op = std::get_if<OrPattern>(&p.node)) {
    std::vector<MatchingState> out;
    for (const auto& alt : op->alternatives)
      out.push_back(rebuild(path, push(rest, MatchingAtom{alt, a.target, m}), level.bindings));
    return from_vector(std::move(out));
  }

  if (const auto* ap = std::get_if<AndPattern>(&p.node)) {
    std::vector<MatchingAtom> atoms;
    for (const auto& c : ap->conjuncts) atoms.push_back({c, a.target, m});
    return single(rebuild(path, push_all(rest, atoms), level.bindings));
  }

  if (const auto* np = std::get_if<NotPattern>(&p.node)) {
    Machine probe(isolate(path, MatchingAtom{np->pattern, a.target, m}));
    if (probe.next()) return none();
    return single(rebuild(path, rest, level.bindings));
  }

  if (const auto* tp = std::get_if<TuplePattern>(&p.node)) {
    const std::size_t n = tp->elements.size();
    if (n == 1) return single(rebuild(path, push(rest, MatchingAtom{tp->elements[0], a.target, m}), level.bindings));
    const Value& tv = a.target->force();
    const auto* targets = tv.get<Tuple>();
    const auto* matchers = m.get<Tuple>();
    if (!targets || targets->elements.size() != n)
      fail("tuple-pattern of " + std::to_string(n) + " elements against a " + kind_name(tv), p);
    if (!matchers || matchers->elements.size() != n)
      fail("tuple-pattern of " + std::to_string(n) + " elements needs a tuple of " + std::to_string(n) +
               " matchers",
           p);
    std::vector<MatchingAtom> atoms;
    for (std::size_t i = 0; i < n; ++i)
      atoms.push_back({tp->elements[i], targets->elements[i], matchers->elements[i]->force()});
    return single(rebuild(path, push_all(rest, atoms), level.bindings));
  }

  if (const auto* app = std::get_if<ApplicationPattern>(&p.node)) {
    Value f = eval(*app->function, context_of(level));
    const auto* pf = f.get<PatternFunction>();
    if (!pf) fail(std::string("cannot apply a ") + kind_name(f) + " as a pattern-function", p);
    if (pf->params.size() != app->args.size())
      fail("pattern-function expects " + std::to_string(pf->params.size()) + " patterns, got " +
               std::to_string(app->args.size()),
           p);
    auto penv = std::make_shared<std::vector<std::pair<Symbol, PatternPtr>>>();
    for (std::size_t i = 0; i < pf->params.size(); ++i) penv->emplace_back(pf->params[i], app->args[i]);
    MatchingNode node{push(nullptr, MatchingAtom{pf->body, a.target, m}), pf->env, nullptr, std::move(penv)};
    return single(rebuild(path, push(rest, make_tree(std::move(node))), level.bindings));
  }

  // Pattern-variables, value-patterns and inductive patterns go to the matcher.
  if (m.is<SomethingMatcher>()) fail("`something' can only match a wildcard or a pattern variable, not " + to_string(p), p);
  if (!m.is<UserMatcher>()) fail("pattern " + to_string(p) + " needs a matcher, got a " + kind_name(m), p);

  matchers::Alternatives alts = matchers::run_matcher(m, a.pattern, a.target, context_of(level));
  return [alts = std::move(alts), shared_path, rest]() -> std::optional<MatchingState> {
    auto atoms = alts();
    if (!atoms) return std::nullopt;
    return rebuild(*shared_path, push_all(rest, *atoms), shared_path->back().bindings);
  };
}

} // namespace

Successors reduce_state(const MatchingState& s) {
  auto path = descend(s);
  const auto& atom = std::get<MatchingAtom>(path->back().stack->top->node);
  return reduce_atom(path, atom);
}

std::vector<MatchingState> reduce_state_all(const MatchingState& s) {
  std::vector<MatchingState> out;
  Successors next = reduce_state(s);
  while (auto st = next()) out.push_back(std::move(*st));
  return out;
}

Value eval_value_pattern(const syntax::Expr& e, const EnvPtr& context) { return eval(e, context); }

Machine::Machine(MatchingState initial) : depth_(g_active_machines) {
  queue_.push_back(single(std::move(initial)));
}

Successors Machine::pop() {
  Successors g = std::move(queue_[head_++]);
  if (head_ == queue_.size()) {
    queue_.clear();
    head_ = 0;
  } else if (head_ >= 64 && head_ * 2 >= queue_.size()) {
    queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
  return g;
}

std::optional<BindingList> Machine::next() {
  struct Active {
    Active() { ++g_active_machines; }
    ~Active() { --g_active_machines; }
  } active;

  while (head_ < queue_.size()) {
    check_interrupt();
    Successors gen = pop();
    std::optional<MatchingState> s = gen();
    if (!s) continue;
    ++steps_;
    if (g_trace) g_trace(*s, depth_);
    if (s->succeeded()) {
      queue_.push_back(std::move(gen));
      return s->bindings;
    }
    queue_.push_back(reduce_state(*s));
    queue_.push_back(std::move(gen));
  }
  return std::nullopt;
}

Value match_all(ThunkPtr target, const Value& matcher, const syntax::MatchClause& clause, const EnvPtr& env) {
  auto machine = std::make_shared<Machine>(initial_state(clause.pattern, std::move(target), matcher, env));
  ExprPtr body = clause.body;
  struct Results {
    static StreamPtr from(std::shared_ptr<Machine> m, ExprPtr body, EnvPtr env) {
      return Stream::lazy([m, body, env]() -> Stream::Cell {
        auto b = m->next();
        if (!b) return {};
        return {delay(body, Env::extend(env, *b)), from(m, body, env)};
      });
    }
  };
  return make_collection(Results::from(std::move(machine), std::move(body), env));
}

Value match_first(ThunkPtr target, const Value& matcher, const std::vector<syntax::MatchClause>& clauses,
                  const EnvPtr& env) {
  for (const auto& clause : clauses) {
    Machine machine(initial_state(clause.pattern, target, matcher, env));
    if (auto b = machine.next()) return eval(*clause.body, Env::extend(env, *b));
  }
  throw RuntimeError("no matching clause");
}

void set_trace_hook(TraceHook hook) { g_trace = std::move(hook); }

} // namespace unfree::engine
