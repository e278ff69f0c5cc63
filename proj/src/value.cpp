#include "unfree/value.hpp"

#include "unfree/core.hpp"
#include "unfree/error.hpp"

namespace unfree {

ThunkPtr Thunk::ready(Value v) {
  auto t = std::make_shared<Thunk>();
  t->state_ = State::Done;
  t->body_ = std::move(v);
  return t;
}

ThunkPtr Thunk::delayed(syntax::ExprPtr expr, EnvPtr env) {
  auto t = std::make_shared<Thunk>();
  t->body_ = Delayed{std::move(expr), std::move(env)};
  return t;
}

ThunkPtr Thunk::lazy(std::function<Value()> compute) {
  auto t = std::make_shared<Thunk>();
  t->body_ = std::move(compute);
  return t;
}

ThunkPtr Thunk::placeholder() { return std::make_shared<Thunk>(); }

void Thunk::fill(syntax::ExprPtr expr, EnvPtr env) { body_ = Delayed{std::move(expr), std::move(env)}; }

const Value& Thunk::force() {
  if (state_ == State::Done) return std::get<Value>(body_);
  if (state_ == State::Running) throw RuntimeError("infinite loop: value depends on itself");
  state_ = State::Running;
  Value v;
  try {
    if (auto* f = std::get_if<std::function<Value()>>(&body_)) {
      v = (*f)();
    } else {
      const auto& d = std::get<Delayed>(body_);
      if (!d.expr) throw RuntimeError("uninitialized binding");
      v = eval(*d.expr, d.env);
    }
  } catch (...) {
    state_ = State::Pending;
    throw;
  }
  body_ = std::move(v);
  state_ = State::Done;
  return std::get<Value>(body_);
}

StreamPtr Stream::nil() {
  auto s = std::make_shared<Stream>();
  s->state_ = State::Done;
  s->body_ = Cell{};
  return s;
}

StreamPtr Stream::cons(ThunkPtr head, StreamPtr tail) {
  auto s = std::make_shared<Stream>();
  s->state_ = State::Done;
  s->body_ = Cell{std::move(head), std::move(tail)};
  return s;
}

StreamPtr Stream::lazy(std::function<Cell()> compute) {
  auto s = std::make_shared<Stream>();
  s->body_ = std::move(compute);
  return s;
}

StreamPtr Stream::from(std::vector<ThunkPtr> items) {
  StreamPtr s = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) s = cons(std::move(*it), std::move(s));
  return s;
}

const Stream::Cell& Stream::force() {
  if (state_ == State::Done) return std::get<Cell>(body_);
  if (state_ == State::Running) throw RuntimeError("infinite loop: collection depends on itself");
  state_ = State::Running;
  Cell c;
  try {
    c = std::get<std::function<Cell()>>(body_)();
  } catch (...) {
    state_ = State::Pending;
    throw;
  }
  body_ = std::move(c);
  state_ = State::Done;
  return std::get<Cell>(body_);
}

StreamPtr append(StreamPtr front, std::function<StreamPtr()> rest) {
  return Stream::lazy([front = std::move(front), rest = std::move(rest)]() -> Stream::Cell {
    const auto& cell = front->force();
    if (cell.empty()) return rest()->force();
    return {cell.head, append(cell.tail, rest)};
  });
}

BindingList add_binding(const BindingList& list, Symbol name, ThunkPtr value) {
  return std::make_shared<const BindingCell>(BindingCell{name, std::move(value), list});
}

const BindingCell* find_binding(const BindingList& list, Symbol name) {
  for (const BindingCell* c = list.get(); c; c = c->next.get())
    if (c->name == name) return c;
  return nullptr;
}

std::vector<const BindingCell*> ordered(const BindingList& list) {
  std::vector<const BindingCell*> out;
  for (const BindingCell* c = list.get(); c; c = c->next.get()) out.push_back(c);
  return {out.rbegin(), out.rend()};
}

EnvPtr Env::top_level() {
  auto env = std::make_shared<Env>();
  env->top_ = std::make_unique<std::unordered_map<Symbol, ThunkPtr>>();
  return env;
}

EnvPtr Env::extend(EnvPtr parent, BindingList frame) {
  if (!frame) return parent;
  auto env = std::make_shared<Env>();
  env->frame_ = std::move(frame);
  env->parent_ = std::move(parent);
  return env;
}

ThunkPtr Env::lookup(Symbol name) const {
  for (const Env* e = this; e; e = e->parent_.get()) {
    if (e->top_) {
      auto it = e->top_->find(name);
      if (it != e->top_->end()) return it->second;
    } else if (const BindingCell* c = find_binding(e->frame_, name)) {
      return c->value;
    }
  }
  return nullptr;
}

void Env::define(Symbol name, ThunkPtr value) {
  if (!top_) throw RuntimeError("`define' outside the top level");
  (*top_)[name] = std::move(value);
}

Value make_integer(BigInt v) { return Value::of(Integer{std::move(v)}); }

Value make_boolean(bool b) {
  static const Value t = Value::of(Boolean{true});
  static const Value f = Value::of(Boolean{false});
  return b ? t : f;
}

Value make_tuple(std::vector<ThunkPtr> elements) {
  if (elements.size() == 1) return elements.front()->force();
  return Value::of(Tuple{std::move(elements)});
}

Value make_collection(StreamPtr s) { return Value::of(Collection{std::move(s)}); }

Value make_collection(const std::vector<Value>& items) {
  std::vector<ThunkPtr> thunks;
  thunks.reserve(items.size());
  for (const auto& v : items) thunks.push_back(Thunk::ready(v));
  return make_collection(Stream::from(std::move(thunks)));
}

const char* kind_name(const Value& v) {
  struct Visitor {
    const char* operator()(const Integer&) const { return "integer"; }
    const char* operator()(const Boolean&) const { return "boolean"; }
    const char* operator()(const Inductive&) const { return "inductive datum"; }
    const char* operator()(const Tuple&) const { return "tuple"; }
    const char* operator()(const Collection&) const { return "collection"; }
    const char* operator()(const Closure&) const { return "function"; }
    const char* operator()(const Builtin&) const { return "function"; }
    const char* operator()(const PatternFunction&) const { return "pattern-function"; }
    const char* operator()(const SomethingMatcher&) const { return "matcher"; }
    const char* operator()(const UserMatcher&) const { return "matcher"; }
  };
  return std::visit(Visitor{}, v.node());
}

const BigInt& expect_integer(const Value& v, const char* context) {
  if (const auto* i = v.get<Integer>()) return i->value;
  throw RuntimeError(std::string(context) + ": expected an integer, got " + kind_name(v));
}

bool expect_boolean(const Value& v, const char* context) {
  if (const auto* b = v.get<Boolean>()) return b->value;
  throw RuntimeError(std::string(context) + ": expected a boolean, got " + kind_name(v));
}

const Collection& expect_collection(const Value& v, const char* context) {
  if (const auto* c = v.get<Collection>()) return *c;
  throw RuntimeError(std::string(context) + ": expected a collection, got " + kind_name(v));
}

} // namespace unfree
