#include <sstream>

#include "unfree/syntax.hpp"

namespace unfree::syntax {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

class Printer {
public:
  std::ostringstream out;

  template <class Ptr>
  void seq(const std::vector<Ptr>& items) {
    for (const auto& item : items) {
      out << ' ';
      print(*item);
    }
  }

  void binders(const std::vector<Symbol>& names) {
    out << '[';
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? " $" : "$") << names[i].name();
    out << ']';
  }

  void clause(const MatchClause& c) {
    out << '[';
    print(*c.pattern);
    out << ' ';
    print(*c.body);
    out << ']';
  }

  void clauses(const std::vector<MatchClause>& cs) {
    out << '{';
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) out << ' ';
      clause(cs[i]);
    }
    out << '}';
  }

  void print(const Expr& e) {
    std::visit(
        overloaded{
            [&](const IntegerLiteral& n) { out << n.value; },
            [&](const BooleanLiteral& b) { out << (b.value ? "#t" : "#f"); },
            [&](const Variable& v) { out << v.name.name(); },
            [&](const InductiveExpr& n) {
              out << '<' << n.ctor.name();
              seq(n.args);
              out << '>';
            },
            [&](const TupleExpr& n) {
              out << '[';
              for (std::size_t i = 0; i < n.elements.size(); ++i) {
                if (i) out << ' ';
                print(*n.elements[i]);
              }
              out << ']';
            },
            [&](const CollectionExpr& n) {
              out << '{';
              for (std::size_t i = 0; i < n.elements.size(); ++i) {
                if (i) out << ' ';
                if (n.elements[i].splice) out << '@';
                print(*n.elements[i].expr);
              }
              out << '}';
            },
            [&](const LambdaExpr& n) {
              out << "(lambda ";
              binders(n.params);
              out << ' ';
              print(*n.body);
              out << ')';
            },
            [&](const ApplicationExpr& n) {
              out << '(';
              print(*n.function);
              seq(n.args);
              out << ')';
            },
            [&](const IfExpr& n) {
              out << "(if ";
              print(*n.condition);
              out << ' ';
              print(*n.then_branch);
              out << ' ';
              print(*n.else_branch);
              out << ')';
            },
            [&](const LetExpr& n) {
              out << (n.recursive ? "(letrec {" : "(let {");
              for (std::size_t i = 0; i < n.bindings.size(); ++i) {
                if (i) out << ' ';
                out << "[$" << n.bindings[i].name.name() << ' ';
                print(*n.bindings[i].value);
                out << ']';
              }
              out << "} ";
              print(*n.body);
              out << ')';
            },
            [&](const DefineExpr& n) {
              out << "(define $" << n.name.name() << ' ';
              print(*n.value);
              out << ')';
            },
            [&](const MatchAllExpr& n) {
              out << "(match-all ";
              print(*n.target);
              out << ' ';
              print(*n.matcher);
              out << ' ';
              clause(n.clause);
              out << ')';
            },
            [&](const MatchExpr& n) {
              out << "(match ";
              print(*n.target);
              out << ' ';
              print(*n.matcher);
              out << ' ';
              clauses(n.clauses);
              out << ')';
            },
            [&](const MatchLambdaExpr& n) {
              out << "(match-lambda ";
              print(*n.matcher);
              out << ' ';
              clauses(n.clauses);
              out << ')';
            },
            [&](const MatcherExpr& n) { print(*n.def); },
            [&](const PatternFunctionExpr& n) {
              out << "(pattern-function ";
              binders(n.params);
              out << ' ';
              print(*n.body);
              out << ')';
            },
            [&](const AlgebraicDataMatcherExpr& n) {
              out << "(algebraic-data-matcher {";
              for (std::size_t i = 0; i < n.constructors.size(); ++i) {
                if (i) out << ' ';
                out << '<' << n.constructors[i].name.name();
                seq(n.constructors[i].matchers);
                out << '>';
              }
              out << "})";
            },
        },
        e.node);
  }

  void print(const MatcherDef& m) {
    out << "(matcher {";
    for (std::size_t i = 0; i < m.clauses.size(); ++i) {
      const auto& c = m.clauses[i];
      if (i) out << ' ';
      out << '[';
      print(*c.pattern);
      out << ' ';
      print(*c.next_matchers);
      out << " {";
      for (std::size_t j = 0; j < c.data_clauses.size(); ++j) {
        if (j) out << ' ';
        out << '[';
        print(*c.data_clauses[j].pattern);
        out << ' ';
        print(*c.data_clauses[j].body);
        out << ']';
      }
      out << "}]";
    }
    out << "})";
  }

  void print(const Pattern& p) {
    std::visit(
        overloaded{
            [&](const WildcardPattern&) { out << '_'; },
            [&](const PatternVariable& v) { out << '$' << v.name.name(); },
            [&](const ValuePattern& v) {
              out << ',';
              print(*v.expr);
            },
            [&](const InductivePattern& n) {
              out << '<' << n.ctor.name();
              seq(n.args);
              out << '>';
            },
            [&](const ApplicationPattern& n) {
              out << '(';
              print(*n.function);
              seq(n.args);
              out << ')';
            },
            [&](const OrPattern& n) {
              out << "(|";
              seq(n.alternatives);
              out << ')';
            },
            [&](const AndPattern& n) {
              out << "(&";
              seq(n.conjuncts);
              out << ')';
            },
            [&](const NotPattern& n) {
              out << '^';
              print(*n.pattern);
            },
            [&](const TuplePattern& n) {
              out << '[';
              for (std::size_t i = 0; i < n.elements.size(); ++i) {
                if (i) out << ' ';
                print(*n.elements[i]);
              }
              out << ']';
            },
            [&](const VariablePattern& v) { out << v.name.name(); },
        },
        p.node);
  }

  void print(const PrimitivePatternPattern& p) {
    std::visit(overloaded{
                   [&](const PrimitivePatternVariable&) { out << '$'; },
                   [&](const ValuePatternPattern& v) { out << ",$" << v.name.name(); },
                   [&](const PrimitiveInductivePattern& n) {
                     out << '<' << n.ctor.name();
                     seq(n.args);
                     out << '>';
                   },
               },
               p.node);
  }

  void print(const PrimitiveDataPattern& p) {
    std::visit(overloaded{
                   [&](const DataWildcard&) { out << '_'; },
                   [&](const DataVariable& v) { out << '$' << v.name.name(); },
                   [&](const DataInductive& n) {
                     out << '<' << n.ctor.name();
                     seq(n.args);
                     out << '>';
                   },
                   [&](const DataEmptyCollection&) { out << "{}"; },
                   [&](const DataCons& n) {
                     out << '{';
                     print(*n.head);
                     out << " @";
                     print(*n.tail);
                     out << '}';
                   },
                   [&](const DataSnoc& n) {
                     out << "{@";
                     print(*n.init);
                     out << ' ';
                     print(*n.last);
                     out << '}';
                   },
               },
               p.node);
  }
};

// -- structural equality ------------------------------------------------------

bool eq(const Expr& a, const Expr& b);
bool eq(const Pattern& a, const Pattern& b);
bool eq(const PrimitivePatternPattern& a, const PrimitivePatternPattern& b);
bool eq(const PrimitiveDataPattern& a, const PrimitiveDataPattern& b);

template <class Ptr>
bool eq(const std::vector<Ptr>& a, const std::vector<Ptr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(*a[i], *b[i])) return false;
  return true;
}

bool eq(const MatchClause& a, const MatchClause& b) {
  return eq(*a.pattern, *b.pattern) && eq(*a.body, *b.body);
}

bool eq(const std::vector<MatchClause>& a, const std::vector<MatchClause>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

bool eq(const MatcherDef& a, const MatcherDef& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    const auto& x = a.clauses[i];
    const auto& y = b.clauses[i];
    if (!eq(*x.pattern, *y.pattern) || !eq(*x.next_matchers, *y.next_matchers)) return false;
    if (x.data_clauses.size() != y.data_clauses.size()) return false;
    for (std::size_t j = 0; j < x.data_clauses.size(); ++j) {
      if (!eq(*x.data_clauses[j].pattern, *y.data_clauses[j].pattern) ||
          !eq(*x.data_clauses[j].body, *y.data_clauses[j].body))
        return false;
    }
  }
  return true;
}

bool eq(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntegerLiteral>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, BooleanLiteral>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, InductiveExpr>) {
          return x.ctor == y.ctor && eq(x.args, y.args);
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          return eq(x.elements, y.elements);
        } else if constexpr (std::is_same_v<T, CollectionExpr>) {
          if (x.elements.size() != y.elements.size()) return false;
          for (std::size_t i = 0; i < x.elements.size(); ++i)
            if (x.elements[i].splice != y.elements[i].splice ||
                !eq(*x.elements[i].expr, *y.elements[i].expr))
              return false;
          return true;
        } else if constexpr (std::is_same_v<T, LambdaExpr>) {
          return x.params == y.params && eq(*x.body, *y.body);
        } else if constexpr (std::is_same_v<T, ApplicationExpr>) {
          return eq(*x.function, *y.function) && eq(x.args, y.args);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return eq(*x.condition, *y.condition) && eq(*x.then_branch, *y.then_branch) &&
                 eq(*x.else_branch, *y.else_branch);
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          if (x.recursive != y.recursive || x.bindings.size() != y.bindings.size()) return false;
          for (std::size_t i = 0; i < x.bindings.size(); ++i)
            if (x.bindings[i].name != y.bindings[i].name ||
                !eq(*x.bindings[i].value, *y.bindings[i].value))
              return false;
          return eq(*x.body, *y.body);
        } else if constexpr (std::is_same_v<T, DefineExpr>) {
          return x.name == y.name && eq(*x.value, *y.value);
        } else if constexpr (std::is_same_v<T, MatchAllExpr>) {
          return eq(*x.target, *y.target) && eq(*x.matcher, *y.matcher) && eq(x.clause, y.clause);
        } else if constexpr (std::is_same_v<T, MatchExpr>) {
          return eq(*x.target, *y.target) && eq(*x.matcher, *y.matcher) &&
                 eq(x.clauses, y.clauses);
        } else if constexpr (std::is_same_v<T, MatchLambdaExpr>) {
          return eq(*x.matcher, *y.matcher) && eq(x.clauses, y.clauses);
        } else if constexpr (std::is_same_v<T, MatcherExpr>) {
          return eq(*x.def, *y.def);
        } else if constexpr (std::is_same_v<T, PatternFunctionExpr>) {
          return x.params == y.params && eq(*x.body, *y.body);
        } else {
          if (x.constructors.size() != y.constructors.size()) return false;
          for (std::size_t i = 0; i < x.constructors.size(); ++i)
            if (x.constructors[i].name != y.constructors[i].name ||
                !eq(x.constructors[i].matchers, y.constructors[i].matchers))
              return false;
          return true;
        }
      },
      a.node);
}

bool eq(const Pattern& a, const Pattern& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, WildcardPattern>) {
          return true;
        } else if constexpr (std::is_same_v<T, PatternVariable> ||
                             std::is_same_v<T, VariablePattern>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, ValuePattern>) {
          return eq(*x.expr, *y.expr);
        } else if constexpr (std::is_same_v<T, InductivePattern>) {
          return x.ctor == y.ctor && eq(x.args, y.args);
        } else if constexpr (std::is_same_v<T, ApplicationPattern>) {
          return eq(*x.function, *y.function) && eq(x.args, y.args);
        } else if constexpr (std::is_same_v<T, OrPattern>) {
          return eq(x.alternatives, y.alternatives);
        } else if constexpr (std::is_same_v<T, AndPattern>) {
          return eq(x.conjuncts, y.conjuncts);
        } else if constexpr (std::is_same_v<T, NotPattern>) {
          return eq(*x.pattern, *y.pattern);
        } else {
          return eq(x.elements, y.elements);
        }
      },
      a.node);
}

bool eq(const PrimitivePatternPattern& a, const PrimitivePatternPattern& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* v = std::get_if<ValuePatternPattern>(&a.node))
    return v->name == std::get<ValuePatternPattern>(b.node).name;
  if (const auto* n = std::get_if<PrimitiveInductivePattern>(&a.node)) {
    const auto& m = std::get<PrimitiveInductivePattern>(b.node);
    return n->ctor == m.ctor && eq(n->args, m.args);
  }
  return true;
}

bool eq(const PrimitiveDataPattern& a, const PrimitiveDataPattern& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, DataVariable>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, DataInductive>) {
          return x.ctor == y.ctor && eq(x.args, y.args);
        } else if constexpr (std::is_same_v<T, DataCons>) {
          return eq(*x.head, *y.head) && eq(*x.tail, *y.tail);
        } else if constexpr (std::is_same_v<T, DataSnoc>) {
          return eq(*x.init, *y.init) && eq(*x.last, *y.last);
        } else {
          return true;
        }
      },
      a.node);
}

template <class T>
std::string render(const T& x) {
  Printer p;
  p.print(x);
  return p.out.str();
}

} // namespace

std::string to_string(const Expr& e) { return render(e); }
std::string to_string(const Pattern& p) { return render(p); }
std::string to_string(const PrimitivePatternPattern& p) { return render(p); }
std::string to_string(const PrimitiveDataPattern& p) { return render(p); }
std::string to_string(const MatcherDef& m) { return render(m); }

bool structurally_equal(const Expr& a, const Expr& b) { return eq(a, b); }
bool structurally_equal(const Pattern& a, const Pattern& b) { return eq(a, b); }

} // namespace unfree::syntax
