#include "unfree/matchers.hpp"

#include <cctype>
#include <unordered_set>

#include "unfree/core.hpp"
#include "unfree/error.hpp"

namespace unfree::matchers {
namespace {

using namespace syntax;

std::string describe(const Value& m) {
  if (const auto* u = m.get<UserMatcher>(); u && !u->name.empty()) return "matcher `" + u->name + "'";
  return "matcher";
}

/// Next-target streams of the data clauses, concatenated top-down.
StreamPtr data_targets(std::shared_ptr<const std::vector<DataMatchClause>> clauses, std::size_t i,
                       ThunkPtr target, EnvPtr env) {
  return Stream::lazy([clauses, i, target, env]() -> Stream::Cell {
    for (std::size_t k = i; k < clauses->size(); ++k) {
      const auto& dc = (*clauses)[k];
      BindingList dp_bindings;
      if (!match_dp(*dc.pattern, target, dp_bindings)) continue;
      Value v = eval(*dc.body, Env::extend(env, dp_bindings));
      const auto* c = v.get<Collection>();
      if (!c)
        throw RuntimeError(std::string("primitive-data-match-clause must return a collection, got ") + kind_name(v),
                           dc.body->pos);
      if (k + 1 == clauses->size()) return c->stream->force();
      return append(c->stream, [clauses, k, target, env] { return data_targets(clauses, k + 1, target, env); })
          ->force();
    }
    return Stream::nil()->force();
  });
}

std::vector<Value> next_matchers(const Value& v, std::size_t n) {
  if (n == 1) return {v};
  const auto* t = v.get<Tuple>();
  if (!t || t->elements.size() != n)
    throw RuntimeError("next-matcher expression must return " + std::to_string(n) + " matchers, got " +
                       std::string(kind_name(v)));
  std::vector<Value> out;
  for (const auto& e : t->elements) out.push_back(e->force());
  return out;
}

PrimitivePatternPtr ppp(PrimitivePatternPattern::Node n) {
  return std::make_shared<const PrimitivePatternPattern>(PrimitivePatternPattern{std::move(n)});
}

PrimitiveDataPtr pdp(PrimitiveDataPattern::Node n) {
  return std::make_shared<const PrimitiveDataPattern>(PrimitiveDataPattern{std::move(n)});
}

ExprPtr var(const std::string& name, SourcePos pos) { return make_expr(Variable{Symbol::intern(name)}, pos); }

ExprPtr collection_of(std::vector<ExprPtr> items, SourcePos pos) {
  CollectionExpr c;
  for (auto& i : items) c.elements.push_back({std::move(i), false});
  return make_expr(std::move(c), pos);
}

ExprPtr unit_tuple(SourcePos pos) { return make_expr(TupleExpr{}, pos); }

/// A matcher clause chosen for an atom, with the next-targets still to come.
struct Pending {
  std::vector<PatternPtr> patterns;
  std::vector<Value> matchers;
  StreamPtr stream;
};

} // namespace

bool is_matcher(const Value& v) {
  if (v.is<SomethingMatcher>() || v.is<UserMatcher>()) return true;
  if (const auto* t = v.get<Tuple>()) {
    for (const auto& e : t->elements)
      if (!is_matcher(e->force())) return false;
    return true;
  }
  return false;
}

bool match_pp(const PrimitivePatternPattern& pp, const PatternPtr& p, const EnvPtr& context,
              std::vector<PatternPtr>& next_patterns, BindingList& bindings) {
  if (std::holds_alternative<PrimitivePatternVariable>(pp.node)) {
    next_patterns.push_back(p);
    return true;
  }
  if (const auto* vpp = std::get_if<ValuePatternPattern>(&pp.node)) {
    const auto* vp = std::get_if<ValuePattern>(&p->node);
    if (!vp) return false;
    bindings = add_binding(bindings, vpp->name, delay(vp->expr, context));
    return true;
  }
  const auto& ipp = std::get<PrimitiveInductivePattern>(pp.node);
  const auto* ip = std::get_if<InductivePattern>(&p->node);
  if (!ip || ip->ctor != ipp.ctor || ip->args.size() != ipp.args.size()) return false;
  for (std::size_t i = 0; i < ipp.args.size(); ++i)
    if (!match_pp(*ipp.args[i], ip->args[i], context, next_patterns, bindings)) return false;
  return true;
}

bool match_dp(const PrimitiveDataPattern& dp, const ThunkPtr& target, BindingList& bindings) {
  struct Visitor {
    const ThunkPtr& target;
    BindingList& bindings;

    bool operator()(const DataWildcard&) const { return true; }
    bool operator()(const DataVariable& x) const {
      bindings = add_binding(bindings, x.name, target);
      return true;
    }
    bool operator()(const DataInductive& x) const {
      const auto* d = target->force().get<Inductive>();
      if (!d || d->ctor != x.ctor || d->args.size() != x.args.size()) return false;
      for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!match_dp(*x.args[i], d->args[i], bindings)) return false;
      return true;
    }
    bool operator()(const DataEmptyCollection&) const {
      const auto* c = target->force().get<Collection>();
      return c && c->stream->force().empty();
    }
    bool operator()(const DataCons& x) const {
      const auto* c = target->force().get<Collection>();
      if (!c) return false;
      const auto& cell = c->stream->force();
      if (cell.empty()) return false;
      return match_dp(*x.head, cell.head, bindings) &&
             match_dp(*x.tail, Thunk::ready(make_collection(cell.tail)), bindings);
    }
    bool operator()(const DataSnoc& x) const {
      const Value& v = target->force();
      if (!v.is<Collection>()) return false;
      std::vector<ThunkPtr> items = force_collection(v);
      if (items.empty()) return false;
      ThunkPtr last = items.back();
      items.pop_back();
      return match_dp(*x.init, Thunk::ready(make_collection(Stream::from(std::move(items)))), bindings) &&
             match_dp(*x.last, last, bindings);
    }
  };
  return std::visit(Visitor{target, bindings}, dp.node);
}

Alternatives run_matcher(const Value& m, const PatternPtr& p, const ThunkPtr& target, const EnvPtr& context) {
  const auto* um = m.get<UserMatcher>();
  if (!um) throw RuntimeError("run_matcher: not a user matcher");
  const auto& clauses = um->def->clauses;
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    const auto& clause = clauses[k];
    std::vector<PatternPtr> patterns;
    BindingList pp_bindings;
    if (!match_pp(*clause.pattern, p, context, patterns, pp_bindings)) continue;
    auto pending = std::make_shared<Pending>();
    pending->patterns = std::move(patterns);

    EnvPtr menv = Env::extend(um->env, pp_bindings);
    std::optional<std::vector<Value>>* cached = nullptr;
    if (!pp_bindings && um->cache) {
      auto& slots = um->cache->next_matchers;
      if (slots.size() < clauses.size()) slots.resize(clauses.size());
      cached = &slots[k];
    }
    if (cached && *cached) {
      pending->matchers = **cached;
    } else {
      pending->matchers = next_matchers(eval(*clause.next_matchers, menv), pending->patterns.size());
      for (const auto& nm : pending->matchers)
        if (!is_matcher(nm))
          throw RuntimeError(std::string("next-matcher expression returned a ") + kind_name(nm),
                             clause.next_matchers->pos);
      if (cached) *cached = pending->matchers;
    }

    auto data = std::shared_ptr<const std::vector<DataMatchClause>>(um->def, &clause.data_clauses);
    pending->stream = data_targets(data, 0, target, menv);

    return [pending]() -> std::optional<std::vector<engine::MatchingAtom>> {
      const auto& cell = pending->stream->force();
      if (cell.empty()) return std::nullopt;
      ThunkPtr tuple = cell.head;
      pending->stream = cell.tail;

      const std::size_t n = pending->patterns.size();
      std::vector<engine::MatchingAtom> atoms;
      atoms.reserve(n);
      if (n == 1) {
        atoms.push_back({pending->patterns.front(), std::move(tuple), pending->matchers.front()});
        return atoms;
      }
      const Value& v = tuple->force();
      const auto* t = v.get<Tuple>();
      if (!t || t->elements.size() != n)
        throw RuntimeError("next-target must be a tuple of " + std::to_string(n) + " elements, got " +
                           std::string(kind_name(v)));
      for (std::size_t i = 0; i < n; ++i)
        atoms.push_back({pending->patterns[i], t->elements[i], pending->matchers[i]});
      return atoms;
    };
  }
  throw RuntimeError("pattern " + to_string(*p) + " is not supported by " + describe(m), p->pos);
}

ExprPtr desugar_adm(const AlgebraicDataMatcherExpr& adm, SourcePos pos) {
  auto def = std::make_shared<MatcherDef>();
  const Symbol val = Symbol::intern("val");
  const Symbol tgt = Symbol::intern("tgt");

  // [,$val [] {[$tgt (if (eq? val tgt) {[]} {})]}]
  {
    ApplicationExpr eq{var("eq?", pos), {var("val", pos), var("tgt", pos)}};
    IfExpr test{make_expr(std::move(eq), pos), collection_of({unit_tuple(pos)}, pos), collection_of({}, pos)};
    def->clauses.push_back({ppp(ValuePatternPattern{val}),
                            unit_tuple(pos),
                            {{pdp(DataVariable{tgt}), make_expr(std::move(test), pos)}}});
  }

  std::unordered_set<Symbol> seen;
  for (const auto& ctor : adm.constructors) {
    if (!seen.insert(ctor.name).second)
      throw RuntimeError("algebraic-data-matcher: duplicate constructor `" + ctor.name.name() + "'", pos);
    std::string data_name = ctor.name.name();
    data_name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(data_name[0])));

    PrimitiveInductivePattern pat{ctor.name, {}};
    DataInductive data{Symbol::intern(data_name), {}};
    TupleExpr next_targets;
    for (std::size_t i = 0; i < ctor.matchers.size(); ++i) {
      std::string x = "x" + std::to_string(i + 1);
      pat.args.push_back(ppp(PrimitivePatternVariable{}));
      data.args.push_back(pdp(DataVariable{Symbol::intern(x)}));
      next_targets.elements.push_back(var(x, pos));
    }
    TupleExpr next_matchers{ctor.matchers};
    std::vector<DataMatchClause> dcs;
    dcs.push_back({pdp(std::move(data)), collection_of({make_expr(std::move(next_targets), pos)}, pos)});
    dcs.push_back({pdp(DataWildcard{}), collection_of({}, pos)});
    def->clauses.push_back({ppp(std::move(pat)), make_expr(std::move(next_matchers), pos), std::move(dcs)});
  }

  // [$ [something] {[$tgt {tgt}]}]
  def->clauses.push_back({ppp(PrimitivePatternVariable{}),
                          make_expr(TupleExpr{{var("something", pos)}}, pos),
                          {{pdp(DataVariable{tgt}), collection_of({var("tgt", pos)}, pos)}}});
  return make_expr(MatcherExpr{std::move(def)}, pos);
}

} // namespace unfree::matchers
