#pragma once

// The match-function of user-defined matchers, and the
// `algebraic-data-matcher` sugar.

#include <functional>
#include <optional>
#include <vector>

#include "unfree/state.hpp"

namespace unfree::matchers {

/// Lazily produced alternatives; each is the list of atoms to push, the
/// first of which goes on top.
using Alternatives = std::function<std::optional<std::vector<engine::MatchingAtom>>()>;

/// Reduces the atom (p, target, m) with the user matcher `m`. `context` is
/// the environment in which value-patterns inside `p` are evaluated.
Alternatives run_matcher(const Value& m, const syntax::PatternPtr& p, const ThunkPtr& target,
                         const EnvPtr& context);

/// Matches a primitive-pattern-pattern against a pattern. On success appends
/// the next-patterns and binds `,$n` variables to value-pattern contents
/// suspended in `context`.
bool match_pp(const syntax::PrimitivePatternPattern& pp, const syntax::PatternPtr& p,
              const EnvPtr& context, std::vector<syntax::PatternPtr>& next_patterns,
              BindingList& bindings);

/// Matches a primitive-data-pattern against a target, forcing it only as
/// far as the pattern's shape requires.
bool match_dp(const syntax::PrimitiveDataPattern& dp, const ThunkPtr& target, BindingList& bindings);

/// Expands `(algebraic-data-matcher {...})` into a `matcher` expression.
syntax::ExprPtr desugar_adm(const syntax::AlgebraicDataMatcherExpr& adm, SourcePos pos = {});

/// Matchers are `something`, user matchers, and tuples of matchers.
bool is_matcher(const Value& v);

} // namespace unfree::matchers
