#include "unfree/core.hpp"

#include <string>

#include "unfree/engine.hpp"
#include "unfree/error.hpp"
#include "unfree/matchers.hpp"

namespace unfree {
namespace {

using namespace syntax;

std::atomic<bool> g_interrupt{false};

constexpr std::size_t kVariadic = static_cast<std::size_t>(-1);

[[noreturn]] void fail(const std::string& msg, const Expr& at) { throw RuntimeError(msg, at.pos); }

StreamPtr collection_stream(std::shared_ptr<const std::vector<CollectionElement>> elems, std::size_t i,
                            const EnvPtr& env);

StreamPtr collection_tail(std::shared_ptr<const std::vector<CollectionElement>> elems, std::size_t i,
                          const EnvPtr& env) {
  if (i == elems->size()) return Stream::nil();
  return Stream::lazy([elems, i, env] { return collection_stream(elems, i, env)->force(); });
}

StreamPtr collection_stream(std::shared_ptr<const std::vector<CollectionElement>> elems, std::size_t i,
                            const EnvPtr& env) {
  if (i == elems->size()) return Stream::nil();
  const auto& el = (*elems)[i];
  if (!el.splice) return Stream::cons(delay(el.expr, env), collection_tail(elems, i + 1, env));
  Value v = eval(*el.expr, env);
  const auto* c = v.get<Collection>();
  if (!c) fail(std::string("`@' expects a collection, got ") + kind_name(v), *el.expr);
  // A trailing splice is the rest of the collection as is; appending it to
  // an empty tail would nest one more level per recursive call.
  if (i + 1 == elems->size()) return c->stream;
  return append(c->stream, [elems, i, env] { return collection_stream(elems, i + 1, env); });
}

Value eval_let(const LetExpr& let, const EnvPtr& env) {
  BindingList frame;
  if (!let.recursive) {
    for (const auto& b : let.bindings) frame = add_binding(frame, b.name, delay(b.value, env));
    return eval(*let.body, Env::extend(env, frame));
  }
  std::vector<ThunkPtr> cells;
  for (const auto& b : let.bindings) {
    cells.push_back(Thunk::placeholder());
    frame = add_binding(frame, b.name, cells.back());
  }
  EnvPtr inner = Env::extend(env, frame);
  for (std::size_t i = 0; i < let.bindings.size(); ++i) cells[i]->fill(let.bindings[i].value, inner);
  return eval(*let.body, inner);
}

Value eval_node(const Expr& e, const EnvPtr& env) {
  struct Visitor {
    const Expr& e;
    const EnvPtr& env;

    Value operator()(const IntegerLiteral& x) const { return make_integer(x.value); }
    Value operator()(const BooleanLiteral& x) const { return make_boolean(x.value); }
    Value operator()(const Variable& x) const {
      ThunkPtr t = env->lookup(x.name);
      if (!t) fail("unbound variable `" + x.name.name() + "'", e);
      return t->force();
    }
    Value operator()(const InductiveExpr& x) const {
      std::vector<ThunkPtr> args;
      args.reserve(x.args.size());
      for (const auto& a : x.args) args.push_back(delay(a, env));
      return Value::of(Inductive{x.ctor, std::move(args)});
    }
    Value operator()(const TupleExpr& x) const {
      if (x.elements.size() == 1) return eval(*x.elements.front(), env);
      std::vector<ThunkPtr> els;
      els.reserve(x.elements.size());
      for (const auto& a : x.elements) els.push_back(delay(a, env));
      return Value::of(Tuple{std::move(els)});
    }
    Value operator()(const CollectionExpr& x) const {
      std::shared_ptr<const std::vector<CollectionElement>> owner(e.shared_from_this(), &x.elements);
      return make_collection(Stream::lazy([owner, env = env] { return collection_stream(owner, 0, env)->force(); }));
    }
    Value operator()(const LambdaExpr& x) const { return Value::of(Closure{x.params, x.body, env, {}}); }
    Value operator()(const ApplicationExpr& x) const {
      Value f = eval(*x.function, env);
      std::vector<ThunkPtr> args;
      args.reserve(x.args.size());
      for (const auto& a : x.args) args.push_back(delay(a, env));
      try {
        return unfree::apply(f, std::move(args));
      } catch (RuntimeError& err) {
        if (err.pos()) throw;
        throw RuntimeError(err.message(), e.pos);
      }
    }
    Value operator()(const IfExpr& x) const {
      const Value c = eval(*x.condition, env);
      const auto* b = c.get<Boolean>();
      if (!b) fail(std::string("`if' condition must be a boolean, got ") + kind_name(c), *x.condition);
      return eval(b->value ? *x.then_branch : *x.else_branch, env);
    }
    Value operator()(const LetExpr& x) const { return eval_let(x, env); }
    Value operator()(const DefineExpr& x) const {
      if (!env->is_top_level()) fail("`define' is only allowed at the top level", e);
      env->define(x.name, Thunk::ready(with_name(eval(*x.value, env), x.name.name())));
      return Value::of(Tuple{});
    }
    Value operator()(const MatchAllExpr& x) const {
      return engine::match_all(delay(x.target, env), eval(*x.matcher, env), x.clause, env);
    }
    Value operator()(const MatchExpr& x) const {
      return engine::match_first(delay(x.target, env), eval(*x.matcher, env), x.clauses, env);
    }
    Value operator()(const MatchLambdaExpr& x) const {
      return Value::of(Closure{{x.param}, x.body, env, {}});
    }
    Value operator()(const MatcherExpr& x) const { 
      return Value::of(UserMatcher{x.def, env, {}, nullptr, std::make_shared<MatcherCache>()});
    }
    Value operator()(const PatternFunctionExpr& x) const {
      return Value::of(PatternFunction{x.params, x.body, env, {}});
    }
    Value operator()(const AlgebraicDataMatcherExpr& x) const {
      return eval(*matchers::desugar_adm(x, e.pos), env);
    }
  };
  return std::visit(Visitor{e, env}, e.node);
}

// ---------------------------------------------------------------------------
// Builtins

BigInt int_arg(const ThunkPtr& t, const char* who) { return expect_integer(t->force(), who); }

Value builtin_take(std::span<const ThunkPtr> args) {
  BigInt n = int_arg(args[0], "take");
  if (n < 0) throw RuntimeError("take: negative count");
  const Collection& c = expect_collection(args[1]->force(), "take");
  struct Take {
    static StreamPtr run(StreamPtr s, std::size_t k) {
      if (k == 0) return Stream::nil();
      return Stream::lazy([s, k]() -> Stream::Cell {
        const auto& cell = s->force();
        if (cell.empty()) throw RuntimeError("take: collection has fewer elements than requested");
        return {cell.head, run(cell.tail, k - 1)};
      });
    }
  };
  return make_collection(Take::run(c.stream, static_cast<std::size_t>(n)));
}

StreamPtr nats_from(BigInt n) {
  return Stream::lazy([n]() -> Stream::Cell {
    return {Thunk::ready(make_integer(n)), nats_from(n + 1)};
  });
}

struct PrimeTable {
  std::vector<std::uint64_t> found;

  std::uint64_t after(std::uint64_t p) {
    for (std::uint64_t c = p + 1;; ++c) {
      bool prime = c >= 2;
      for (std::uint64_t q : found) {
        if (q * q > c) break;
        if (c % q == 0) {
          prime = false;
          break;
        }
      }
      if (prime) return c;
    }
  }
};

StreamPtr primes_after(std::shared_ptr<PrimeTable> table, std::uint64_t p) {
  return Stream::lazy([table, p]() -> Stream::Cell {
    check_interrupt();
    std::uint64_t q = table->after(p);
    if (table->found.empty() || table->found.back() < q) table->found.push_back(q);
    return {Thunk::ready(make_integer(q)), primes_after(table, q)};
  });
}

void add_builtin(const EnvPtr& env, const std::string& name, std::size_t arity,
                 std::function<Value(std::span<const ThunkPtr>)> fn) {
  env->define(Symbol::intern(name), Thunk::ready(Value::of(Builtin{name, arity, std::move(fn)})));
}

} // namespace

ThunkPtr delay(const ExprPtr& e, const EnvPtr& env) {
  if (const auto* i = e->as<IntegerLiteral>()) return Thunk::ready(make_integer(i->value));
  if (const auto* b = e->as<BooleanLiteral>()) return Thunk::ready(make_boolean(b->value));
  if (const auto* v = e->as<Variable>()) {
    if (ThunkPtr t = env->lookup(v->name)) return t;
    return Thunk::delayed(e, env);  // reports the unbound name when forced
  }
  if (e->as<LambdaExpr>() || e->as<MatcherExpr>() || e->as<PatternFunctionExpr>())
    return Thunk::ready(eval(*e, env));
  return Thunk::delayed(e, env);
}

Value eval(const Expr& e, const EnvPtr& env) { return eval_node(e, env); }

Value apply(const Value& f, std::vector<ThunkPtr> args) {
  auto spread = [&args](std::size_t arity, const std::string& who) {
    if (arity == kVariadic || args.size() == arity) return;
    if (args.size() == 1) {
      const Value& a = args.front()->force();
      if (const auto* t = a.get<Tuple>(); t && t->elements.size() == arity) {
        args = t->elements;
        return;
      }
    }
    throw RuntimeError(who + ": expected " + std::to_string(arity) + " argument" + (arity == 1 ? "" : "s") +
                       ", got " + std::to_string(args.size()));
  };

  if (const auto* c = f.get<Closure>()) {
    spread(c->params.size(), c->name.empty() ? "function" : c->name);
    BindingList frame;
    for (std::size_t i = 0; i < args.size(); ++i) frame = add_binding(frame, c->params[i], args[i]);
    Value result = eval(*c->body, Env::extend(c->env, frame));
    if (const auto* m = result.get<UserMatcher>(); m && !c->name.empty() && m->name.empty() && !m->origin) {
      UserMatcher labeled = *m;
      labeled.origin = std::make_shared<const MatcherOrigin>(MatcherOrigin{f, std::move(args)});
      return Value::of(std::move(labeled));
    }
    return result;
  }
  if (const auto* b = f.get<Builtin>()) {
    spread(b->arity, b->name);
    return b->fn(std::span<const ThunkPtr>(args));
  }
  throw RuntimeError(std::string("cannot apply a ") + kind_name(f));
}

Value with_name(const Value& v, const std::string& name) {
  if (const auto* c = v.get<Closure>(); c && c->name.empty()) {
    Closure named = *c;
    named.name = name;
    return Value::of(std::move(named));
  }
  if (const auto* m = v.get<UserMatcher>(); m && m->name.empty()) {
    UserMatcher named = *m;
    named.name = name;
    return Value::of(std::move(named));
  }
  if (const auto* p = v.get<PatternFunction>(); p && p->name.empty()) {
    PatternFunction named = *p;
    named.name = name;
    return Value::of(std::move(named));
  }
  return v;
}

EnvPtr make_global_env() {
  EnvPtr env = Env::top_level();
  env->define(Symbol::intern("something"), Thunk::ready(Value::of(SomethingMatcher{})));

  add_builtin(env, "eq?", 2, [](std::span<const ThunkPtr> a) {
    return make_boolean(values_equal(a[0]->force(), a[1]->force()));
  });
  add_builtin(env, "modulo", 2, [](std::span<const ThunkPtr> a) {
    BigInt m = int_arg(a[1], "modulo");
    if (m == 0) throw RuntimeError("modulo: division by zero");
    return make_integer(floor_mod(int_arg(a[0], "modulo"), m));
  });
  add_builtin(env, "+", kVariadic, [](std::span<const ThunkPtr> a) {
    BigInt s = 0;
    for (const auto& t : a) s += int_arg(t, "+");
    return make_integer(std::move(s));
  });
  add_builtin(env, "*", kVariadic, [](std::span<const ThunkPtr> a) {
    BigInt s = 1;
    for (const auto& t : a) s *= int_arg(t, "*");
    return make_integer(std::move(s));
  });
  add_builtin(env, "-", kVariadic, [](std::span<const ThunkPtr> a) {
    if (a.empty()) throw RuntimeError("-: expected at least 1 argument");
    BigInt s = int_arg(a[0], "-");
    if (a.size() == 1) return make_integer(-s);
    for (std::size_t i = 1; i < a.size(); ++i) s -= int_arg(a[i], "-");
    return make_integer(std::move(s));
  });
  add_builtin(env, "not", 1, [](std::span<const ThunkPtr> a) {
    return make_boolean(!expect_boolean(a[0]->force(), "not"));
  });
  add_builtin(env, "take", 2, builtin_take);

  env->define(Symbol::intern("nats"), Thunk::ready(make_collection(nats_from(1))));
  env->define(Symbol::intern("primes"),
              Thunk::ready(make_collection(primes_after(std::make_shared<PrimeTable>(), 1))));
  return env;
}

std::vector<Value> force_collection_prefix(const Value& c, std::size_t n) {
  std::vector<Value> out;
  out.reserve(n);
  StreamPtr s = expect_collection(c, "prefix").stream;
  while (out.size() < n) {
    check_interrupt();
    const auto& cell = s->force();
    if (cell.empty())
      throw RuntimeError("collection has " + std::to_string(out.size()) + " elements, " + std::to_string(n) +
                         " requested");
    out.push_back(cell.head->force());
    s = cell.tail;
  }
  return out;
}

std::vector<ThunkPtr> force_collection(const Value& c) {
  std::vector<ThunkPtr> out;
  StreamPtr s = expect_collection(c, "collection").stream;
  for (;;) {
    check_interrupt();
    const auto& cell = s->force();
    if (cell.empty()) return out;
    out.push_back(cell.head);
    s = cell.tail;
  }
}

bool values_equal(const Value& a, const Value& b) {
  auto reject = [](const Value& v) {
    if (v.is<Closure>() || v.is<Builtin>() || v.is<PatternFunction>() || v.is<SomethingMatcher>() ||
        v.is<UserMatcher>())
      throw RuntimeError(std::string("eq?: cannot compare a ") + kind_name(v));
  };
  reject(a);
  reject(b);
  if (a.node().index() != b.node().index()) return false;
  if (const auto* x = a.get<Integer>()) return x->value == b.get<Integer>()->value;
  if (const auto* x = a.get<Boolean>()) return x->value == b.get<Boolean>()->value;
  if (const auto* x = a.get<Inductive>()) {
    const auto* y = b.get<Inductive>();
    if (x->ctor != y->ctor || x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!values_equal(x->args[i]->force(), y->args[i]->force())) return false;
    return true;
  }
  if (const auto* x = a.get<Tuple>()) {
    const auto* y = b.get<Tuple>();
    if (x->elements.size() != y->elements.size()) return false;
    for (std::size_t i = 0; i < x->elements.size(); ++i)
      if (!values_equal(x->elements[i]->force(), y->elements[i]->force())) return false;
    return true;
  }
  StreamPtr s = a.get<Collection>()->stream;
  StreamPtr t = b.get<Collection>()->stream;
  for (;;) {
    check_interrupt();
    const auto& cs = s->force();
    const auto& ct = t->force();
    if (cs.empty() || ct.empty()) return cs.empty() && ct.empty();
    if (!values_equal(cs.head->force(), ct.head->force())) return false;
    s = cs.tail;
    t = ct.tail;
  }
}

void request_interrupt() { g_interrupt.store(true); }
void clear_interrupt() { g_interrupt.store(false); }
bool interrupt_requested() { return g_interrupt.load(std::memory_order_relaxed); }
void check_interrupt() {
  if (interrupt_requested()) throw Interrupted();
}

} // namespace unfree
