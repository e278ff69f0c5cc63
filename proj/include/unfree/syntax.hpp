#pragma once

// Abstract syntax and reader for the parenthesized surface language:
// expressions, patterns, and the clause-level patterns used inside
// `matcher` definitions.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unfree/bigint.hpp"
#include "unfree/error.hpp"
#include "unfree/symbol.hpp"

namespace unfree::syntax {

struct Expr;
struct Pattern;
struct PrimitivePatternPattern;
struct PrimitiveDataPattern;
struct MatcherDef;

using ExprPtr = std::shared_ptr<const Expr>;
using PatternPtr = std::shared_ptr<const Pattern>;
using PrimitivePatternPtr = std::shared_ptr<const PrimitivePatternPattern>;
using PrimitiveDataPtr = std::shared_ptr<const PrimitiveDataPattern>;

// ---------------------------------------------------------------------------
// Patterns

struct WildcardPattern {};
struct PatternVariable { Symbol name; };
struct ValuePattern { ExprPtr expr; };
struct InductivePattern {
  Symbol ctor;
  std::vector<PatternPtr> args;
};
/// `(f p...)`: `f` evaluates to a pattern-function.
struct ApplicationPattern {
  ExprPtr function;
  std::vector<PatternPtr> args;
};
struct OrPattern { std::vector<PatternPtr> alternatives; };
struct AndPattern { std::vector<PatternPtr> conjuncts; };
struct NotPattern { PatternPtr pattern; };
struct TuplePattern { std::vector<PatternPtr> elements; };
/// Bare identifier; legal only inside a pattern-function body.
struct VariablePattern { Symbol name; };

struct Pattern {
  using Node = std::variant<WildcardPattern, PatternVariable, ValuePattern, InductivePattern,
                            ApplicationPattern, OrPattern, AndPattern, NotPattern, TuplePattern,
                            VariablePattern>;
  SourcePos pos;
  Node node;
};

// ---------------------------------------------------------------------------
// Matcher clauses

struct PrimitivePatternVariable {};                  // `$`
struct ValuePatternPattern { Symbol name; };         // `,$n`
struct PrimitiveInductivePattern {                   // `<ctor pp...>`
  Symbol ctor;
  std::vector<PrimitivePatternPtr> args;
};

struct PrimitivePatternPattern {
  using Node = std::variant<PrimitivePatternVariable, ValuePatternPattern, PrimitiveInductivePattern>;
  Node node;
};

struct DataWildcard {};                 // `_`
struct DataVariable { Symbol name; };   // `$x`
struct DataInductive {                  // `<Ctor dp...>`
  Symbol ctor;
  std::vector<PrimitiveDataPtr> args;
};
struct DataEmptyCollection {};          // `{}`
struct DataCons {                       // `{dp @dp}`
  PrimitiveDataPtr head;
  PrimitiveDataPtr tail;
};
struct DataSnoc {                       // `{@dp dp}`
  PrimitiveDataPtr init;
  PrimitiveDataPtr last;
};

struct PrimitiveDataPattern {
  using Node = std::variant<DataWildcard, DataVariable, DataInductive, DataEmptyCollection, DataCons,
                            DataSnoc>;
  Node node;
};

struct DataMatchClause {
  PrimitiveDataPtr pattern;
  ExprPtr body;
};

struct PatternMatchClause {
  PrimitivePatternPtr pattern;
  ExprPtr next_matchers;
  std::vector<DataMatchClause> data_clauses;
};

struct MatcherDef {
  std::vector<PatternMatchClause> clauses;
};

// ---------------------------------------------------------------------------
// Expressions

struct IntegerLiteral { BigInt value; };
struct BooleanLiteral { bool value; };
struct Variable { Symbol name; };
struct InductiveExpr {
  Symbol ctor;
  std::vector<ExprPtr> args;
};
struct TupleExpr { std::vector<ExprPtr> elements; };
struct CollectionElement {
  ExprPtr expr;
  bool splice = false;  // `@e`
};
struct CollectionExpr { std::vector<CollectionElement> elements; };
struct LambdaExpr {
  std::vector<Symbol> params;
  ExprPtr body;
};
struct ApplicationExpr {
  ExprPtr function;
  std::vector<ExprPtr> args;
};
struct IfExpr {
  ExprPtr condition;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct LetBinding {
  Symbol name;
  ExprPtr value;
};
struct LetExpr {
  bool recursive = false;  // letrec
  std::vector<LetBinding> bindings;
  ExprPtr body;
};
struct DefineExpr {
  Symbol name;
  ExprPtr value;
};
struct MatchClause {
  PatternPtr pattern;
  ExprPtr body;
};
struct MatchAllExpr {
  ExprPtr target;
  ExprPtr matcher;
  MatchClause clause;
};
struct MatchExpr {
  ExprPtr target;
  ExprPtr matcher;
  std::vector<MatchClause> clauses;
};
/// `(match-lambda m {clause...})`; `body` is the equivalent one-argument
/// `match` over `param`, built by the reader.
struct MatchLambdaExpr {
  ExprPtr matcher;
  std::vector<MatchClause> clauses;
  Symbol param;
  ExprPtr body;
};
struct MatcherExpr { std::shared_ptr<const MatcherDef> def; };
struct PatternFunctionExpr {
  std::vector<Symbol> params;
  PatternPtr body;
};
struct ConstructorDef {
  Symbol name;
  std::vector<ExprPtr> matchers;
};
struct AlgebraicDataMatcherExpr { std::vector<ConstructorDef> constructors; };

struct Expr : std::enable_shared_from_this<Expr> {
  using Node = std::variant<IntegerLiteral, BooleanLiteral, Variable, InductiveExpr, TupleExpr,
                            CollectionExpr, LambdaExpr, ApplicationExpr, IfExpr, LetExpr, DefineExpr,
                            MatchAllExpr, MatchExpr, MatchLambdaExpr, MatcherExpr,
                            PatternFunctionExpr, AlgebraicDataMatcherExpr>;

  Expr(SourcePos p, Node n) : pos(p), node(std::move(n)) {}

  SourcePos pos;
  Node node;

  template <class T>
  [[nodiscard]] const T* as() const { return std::get_if<T>(&node); }
};

// ---------------------------------------------------------------------------
// Reading

/// Reads one form at a time from a source text. Comments run from `;` to
/// end of line.
class FormReader {
public:
  explicit FormReader(std::string_view text);
  ~FormReader();
  FormReader(FormReader&&) noexcept;
  FormReader& operator=(FormReader&&) noexcept;

  /// Next top-level form, or nullopt at end of input.
  std::optional<ExprPtr> next();

  /// Byte offset just past the last form returned (trailing blanks and
  /// comments are not consumed).
  [[nodiscard]] std::size_t offset() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exactly one form; trailing input other than blanks and comments is an error.
ExprPtr read_expr(std::string_view text);

/// A pattern; with `in_pattern_function_body` set, bare identifiers are
/// variable-patterns, otherwise they are rejected.
PatternPtr read_pattern(std::string_view text, bool in_pattern_function_body = false);

std::vector<ExprPtr> read_program(std::string_view text);

// ---------------------------------------------------------------------------
// Printing and comparison

std::string to_string(const Expr& e);
std::string to_string(const Pattern& p);
std::string to_string(const PrimitivePatternPattern& p);
std::string to_string(const PrimitiveDataPattern& p);
std::string to_string(const MatcherDef& m);

/// Equality of syntax trees ignoring source positions.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Pattern& a, const Pattern& b);

/// Convenience constructors, used by desugaring and tests.
ExprPtr make_expr(Expr::Node node, SourcePos pos = {});
PatternPtr make_pattern(Pattern::Node node, SourcePos pos = {});

} // namespace unfree::syntax
