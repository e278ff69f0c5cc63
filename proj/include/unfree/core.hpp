#pragma once

// Call-by-need evaluator and the built-in function library.

#include <atomic>
#include <cstddef>
#include <vector>

#include "unfree/syntax.hpp"
#include "unfree/value.hpp"

namespace unfree {

Value eval(const syntax::Expr& e, const EnvPtr& env);

/// Suspends `e` in `env`; literals and lambdas are built immediately.
ThunkPtr delay(const syntax::ExprPtr& e, const EnvPtr& env);

/// Applies a closure or builtin. A single tuple argument is spread over a
/// function of several parameters.
Value apply(const Value& f, std::vector<ThunkPtr> args);

/// A fresh top-level environment holding the builtins and `something`.
EnvPtr make_global_env();

/// Forces exactly the first `n` elements; errors if there are fewer.
std::vector<Value> force_collection_prefix(const Value& c, std::size_t n);

/// Forces a whole (finite) collection.
std::vector<ThunkPtr> force_collection(const Value& c);

/// Structural equality behind `eq?`. Functions and matchers are rejected.
bool values_equal(const Value& a, const Value& b);

/// Gives closures, matchers and pattern-functions the name they were
/// defined under. Other values are returned unchanged.
Value with_name(const Value& v, const std::string& name);

// Cooperative interruption, polled by long-running loops.
void request_interrupt();
void clear_interrupt();
bool interrupt_requested();
/// Throws Interrupted if an interrupt is pending.
void check_interrupt();

} // namespace unfree
