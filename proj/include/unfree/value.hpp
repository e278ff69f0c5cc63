#pragma once

// Runtime objects of the interpreter. Every value is immutable and shared;
// laziness lives in Thunk (a memoized suspended computation) and Stream
// (a memoized lazy cons cell backing collections).

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "unfree/bigint.hpp"
#include "unfree/symbol.hpp"
#include "unfree/syntax.hpp"

namespace unfree {

class Value;
class Thunk;
class Stream;
class Env;
struct MatcherOrigin;

using ThunkPtr = std::shared_ptr<Thunk>;
using StreamPtr = std::shared_ptr<Stream>;
using EnvPtr = std::shared_ptr<Env>;

struct Integer { BigInt value; };
struct Boolean { bool value; };
struct Inductive {
  Symbol ctor;
  std::vector<ThunkPtr> args;
};
/// Never of arity one: a 1-tuple is its element.
struct Tuple { std::vector<ThunkPtr> elements; };
struct Collection { StreamPtr stream; };
struct Closure {
  std::vector<Symbol> params;
  syntax::ExprPtr body;
  EnvPtr env;
  std::string name;
};
struct Builtin {
  std::string name;
  std::size_t arity;
  std::function<Value(std::span<const ThunkPtr>)> fn;
};
struct PatternFunction {
  std::vector<Symbol> params;
  syntax::PatternPtr body;
  EnvPtr env;
  std::string name;
};
/// The built-in matcher that only binds or skips, never inspecting its target.
struct SomethingMatcher {};
/// Next-matchers already evaluated, per clause. Only clauses whose pattern
/// binds no value-pattern-pattern are cached, since their next-matchers
/// depend on nothing but the matcher's environment.
struct MatcherCache {
  std::vector<std::optional<std::vector<Value>>> next_matchers;
};

struct UserMatcher {
  std::shared_ptr<const syntax::MatcherDef> def;
  EnvPtr env;
  std::string name;
  /// How the matcher was produced, e.g. `(multiset integer)`; used for display.
  std::shared_ptr<const MatcherOrigin> origin;
  std::shared_ptr<MatcherCache> cache;
};

/// Holds the larger alternatives out of line so every value stays small.
template <class T>
struct Boxed {
  std::shared_ptr<const T> ptr;
  operator const T&() const { return *ptr; }
};

template <class T>
struct BoxedIn {
  using type = T;
};
template <>
struct BoxedIn<Closure> {
  using type = Boxed<Closure>;
};
template <>
struct BoxedIn<Builtin> {
  using type = Boxed<Builtin>;
};
template <>
struct BoxedIn<PatternFunction> {
  using type = Boxed<PatternFunction>;
};
template <>
struct BoxedIn<UserMatcher> {
  using type = Boxed<UserMatcher>;
};

class Value {
public:
  using Node = std::variant<Integer, Boolean, Inductive, Tuple, Collection, Boxed<Closure>, Boxed<Builtin>,
                            Boxed<PatternFunction>, SomethingMatcher, Boxed<UserMatcher>>;

  Value() = default;

  template <class T>
  static Value of(T x) {
    using Stored = typename BoxedIn<T>::type;
    if constexpr (std::is_same_v<Stored, T>)
      return Value(std::make_shared<const Node>(std::move(x)));
    else
      return Value(std::make_shared<const Node>(Stored{std::make_shared<const T>(std::move(x))}));
  }

  [[nodiscard]] bool empty() const { return !node_; }
  /// Visitors see boxed alternatives through their conversion to `const T&`.
  [[nodiscard]] const Node& node() const { return *node_; }

  template <class T>
  [[nodiscard]] bool is() const { return std::holds_alternative<typename BoxedIn<T>::type>(*node_); }

  template <class T>
  [[nodiscard]] const T* get() const {
    using Stored = typename BoxedIn<T>::type;
    const auto* x = std::get_if<Stored>(node_.get());
    if constexpr (std::is_same_v<Stored, T>)
      return x;
    else
      return x ? x->ptr.get() : nullptr;
  }

  /// Identity of the underlying object.
  [[nodiscard]] const void* identity() const { return node_.get(); }

private:
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct MatcherOrigin {
  Value function;
  std::vector<ThunkPtr> args;
};

/// A suspended computation, forced at most once.
class Thunk {
public:
  static ThunkPtr ready(Value v);
  static ThunkPtr delayed(syntax::ExprPtr expr, EnvPtr env);
  static ThunkPtr lazy(std::function<Value()> compute);
  /// An unfilled thunk; `fill` must be called before forcing (letrec).
  static ThunkPtr placeholder();

  void fill(syntax::ExprPtr expr, EnvPtr env);

  /// Evaluates on first call and memoizes. Re-entrant forcing of the same
  /// thunk is reported as an infinite loop.
  const Value& force();

  [[nodiscard]] bool forced() const { return state_ == State::Done; }

private:
  enum class State { Pending, Running, Done };
  struct Delayed {
    syntax::ExprPtr expr;
    EnvPtr env;
  };

  State state_ = State::Pending;
  std::variant<Delayed, std::function<Value()>, Value> body_;
};

/// Memoized lazy cell of a possibly infinite sequence.
class Stream {
public:
  struct Cell {
    ThunkPtr head;  // null for the empty sequence
    StreamPtr tail;
    [[nodiscard]] bool empty() const { return !head; }
  };

  static StreamPtr nil();
  static StreamPtr cons(ThunkPtr head, StreamPtr tail);
  static StreamPtr lazy(std::function<Cell()> compute);
  static StreamPtr from(std::vector<ThunkPtr> items);

  const Cell& force();
  [[nodiscard]] bool forced() const { return state_ == State::Done; }

private:
  enum class State { Pending, Running, Done };

  State state_ = State::Pending;
  std::variant<std::function<Cell()>, Cell> body_;
};

/// Lazy concatenation; `rest` is only invoked once `front` is exhausted.
StreamPtr append(StreamPtr front, std::function<StreamPtr()> rest);

/// Persistent binding list, newest first.
struct BindingCell {
  Symbol name;
  ThunkPtr value;
  std::shared_ptr<const BindingCell> next;
};
using BindingList = std::shared_ptr<const BindingCell>;

BindingList add_binding(const BindingList& list, Symbol name, ThunkPtr value);
const BindingCell* find_binding(const BindingList& list, Symbol name);
/// Oldest first.
std::vector<const BindingCell*> ordered(const BindingList& list);

/// Lexical environment: a chain of frames, innermost first. Only the
/// top-level frame is mutable (by `define`).
class Env {
public:
  static EnvPtr top_level();
  static EnvPtr extend(EnvPtr parent, BindingList frame);

  [[nodiscard]] ThunkPtr lookup(Symbol name) const;
  void define(Symbol name, ThunkPtr value);
  [[nodiscard]] bool is_top_level() const { return top_ != nullptr; }

private:
  BindingList frame_;
  EnvPtr parent_;
  std::unique_ptr<std::unordered_map<Symbol, ThunkPtr>> top_;
};

// Construction helpers.
Value make_integer(BigInt v);
Value make_boolean(bool b);
/// Collapses a single element to the element itself.
Value make_tuple(std::vector<ThunkPtr> elements);
Value make_collection(StreamPtr s);
Value make_collection(const std::vector<Value>& items);

const char* kind_name(const Value& v);

// Checked accessors; each throws RuntimeError naming `context` on mismatch.
const BigInt& expect_integer(const Value& v, const char* context);
bool expect_boolean(const Value& v, const char* context);
const Collection& expect_collection(const Value& v, const char* context);

} // namespace unfree
