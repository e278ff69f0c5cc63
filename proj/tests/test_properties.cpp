#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "unfree/error.hpp"
#include "unfree/syntax.hpp"

using namespace unfree;
using oracle::Coll;
using oracle::Kind;

namespace {

/// A random datum written the way the printer writes it.
std::string random_datum(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  std::uniform_int_distribution<int> small(-20, 20);
  auto many = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (pick(rng)) {
    case 0: return std::to_string(small(rng));
    case 1: return many(0, 1) ? "#t" : "#f";
    case 2: {
      std::string s = many(0, 1) ? "<Leaf" : "<Node";
      for (int i = many(0, 3); i > 0; --i) s += " " + random_datum(rng, depth - 1);
      return s + ">";
    }
    case 3: {
      std::string s = "[";
      for (int i = many(2, 3); i > 0; --i) s += (s.size() > 1 ? " " : "") + random_datum(rng, depth - 1);
      return s + "]";
    }
    default: {
      std::string s = "{";
      for (int i = many(0, 4); i > 0; --i) s += (s.size() > 1 ? " " : "") + random_datum(rng, depth - 1);
      return s + "}";
    }
  }
}

/// A random pattern over the collection matchers.
std::string random_pattern(std::mt19937& rng, int depth, std::vector<std::string>& bound) {
  auto many = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int choice = depth > 0 ? many(0, 7) : many(0, 2);
  switch (choice) {
    case 0: return "_";
    case 1: {
      std::string v = "v" + std::to_string(bound.size());
      bound.push_back(v);
      return "$" + v;
    }
    case 2: return bound.empty() ? "<nil>" : "," + bound[static_cast<std::size_t>(many(0, static_cast<int>(bound.size()) - 1))];
    case 3:
    case 4: {
      std::string head = random_pattern(rng, depth - 1, bound);
      return "<cons " + head + " " + random_pattern(rng, depth - 1, bound) + ">";
    }
    case 5: return "^" + random_pattern(rng, depth - 1, bound);
    case 6: {
      std::string a = random_pattern(rng, depth - 1, bound);
      return "(& " + a + " " + random_pattern(rng, depth - 1, bound) + ")";
    }
    default: {
      std::vector<std::string> left = bound;
      std::string a = random_pattern(rng, depth - 1, left);
      std::vector<std::string> right = bound;
      std::string b = random_pattern(rng, depth - 1, right);
      return "(| " + a + " " + b + ")";
    }
  }
}

std::vector<std::string> matched(Session& s, Kind k, const std::string& clause, const Coll& c) {
  return test::sorted_elements(test::value_of(
      s, "(match-all " + oracle::show(c) + " (" + oracle::matcher_name(k) + " integer) " + clause + ")"));
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Random collections longer than the acceptance family, over {1..4}.
std::vector<Coll> wider_collections(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Coll> out;
  for (std::size_t i = 0; i < n; ++i) {
    Coll c(std::uniform_int_distribution<std::size_t>(0, 6)(rng));
    for (int& x : c) x = std::uniform_int_distribution<int>(1, 4)(rng);
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace

TEST_CASE("printed data reads back as itself") {
  std::mt19937 rng(7);
  Session s;
  for (int i = 0; i < 300; ++i) {
    std::string d = random_datum(rng, 3);
    CAPTURE(d);
    CHECK(test::run(s, d) == d);
  }
}

TEST_CASE("printed patterns read back as themselves") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> bound;
    std::string p = random_pattern(rng, 4, bound);
    std::string src = "(match-all {} (multiset integer) [" + p + " 0])";
    CAPTURE(src);
    syntax::ExprPtr e = syntax::read_expr(src);
    syntax::ExprPtr again = syntax::read_expr(syntax::to_string(*e));
    CHECK(syntax::structurally_equal(*e, *again));
  }
}

TEST_CASE("match-all is sound and complete on wider collections") {
  Session s;
  using oracle::Shape;
  for (const Coll& c : wider_collections(60, 3))
    for (Kind k : {Kind::List, Kind::Multiset, Kind::Set})
      for (Shape sh : {Shape::Cons, Shape::ConsCons, Shape::NonLinear, Shape::Not}) {
        auto [pattern, body] = oracle::clause_of(sh);
        std::string clause = std::string("[") + pattern + " " + body + "]";
        CAPTURE(oracle::show(c));
        CAPTURE(std::string(oracle::matcher_name(k)));
        CAPTURE(clause);
        CHECK(matched(s, k, clause, c) == sorted(oracle::decompositions(k, sh, c)));
      }
}

TEST_CASE("a not-pattern binds nothing and filters only") {
  Session s;
  for (const Coll& c : oracle::small_collections(4))
    for (Kind k : {Kind::List, Kind::Multiset, Kind::Set}) {
      CAPTURE(oracle::show(c));
      CAPTURE(std::string(oracle::matcher_name(k)));
      // Conjoining a not-pattern that always holds changes nothing.
      CHECK(matched(s, k, "[(& ^<cons ,9 _> <cons $x $r>) [x r]]", c) ==
            sorted(oracle::decompositions(k, oracle::Shape::Cons, c)));
      // A double negation keeps each head once per way, when the rest has it.
      std::vector<std::string> twice;
      for (const auto& [x, r] : oracle::cons_ways(k, c)) {
        const auto rest = oracle::cons_ways(k, r);
        if (std::any_of(rest.begin(), rest.end(), [x = x](const auto& w) { return w.first == x; }))
          twice.push_back(std::to_string(x));
      }
      CHECK(matched(s, k, "[<cons $x ^^<cons ,x _>> x]", c) == sorted(twice));
    }
  CHECK_THROWS_AS(test::run(s, "(match-all {} (multiset integer) [(& ^<cons $w _> $v) w])"), RuntimeError);
  CHECK(test::run(s, "(match-all {1} (multiset integer) [(& ^<cons ,2 $w> $v) v])") == "{{1}}");
}

TEST_CASE("or-patterns give the union of their alternatives") {
  Session s;
  for (const Coll& c : oracle::small_collections(3))
    for (Kind k : {Kind::Multiset, Kind::Set}) {
      CAPTURE(oracle::show(c));
      auto both = oracle::decompositions(k, oracle::Shape::Cons, c);
      for (const auto& [x, r1] : oracle::cons_ways(k, c))
        for (const auto& [y, r2] : oracle::cons_ways(k, r1)) both.push_back("[" + std::to_string(y) + " " + oracle::show(r2) + "]");
      CHECK(matched(s, k, "[(| <cons $x $r> <cons _ <cons $x $r>>) [x r]]", c) == sorted(both));
    }
}

TEST_CASE("breadth-first search reaches every result of an infinite tree") {
  Session s;
  auto items = force_collection(test::value_of(
      s, "(take 1500 (match-all nats (set integer) [<cons $a <cons $b <cons $c _>>> [a b c]]))"));
  std::set<std::string> seen;
  for (const auto& t : items) CHECK(seen.insert(to_display(t->force())).second);
  CHECK(to_display(items.front()->force()) == "[1 1 1]");
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        std::string t = "[" + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + "]";
        CHECK_MESSAGE(seen.count(t), t);
      }
  // Two infinite choices in sequence still interleave.
  CHECK(test::run(s, "(take 6 (match-all nats (set integer) [<cons $m <cons (& $n ^,m) _>> [m n]]))") ==
        "{[1 2] [2 1] [1 3] [3 1] [1 4] [2 3]}");
}

TEST_CASE("results come in the same order every time") {
  const std::string q = "(match-all {3 1 2 1 3} (multiset integer) [<cons $x <cons ,x $r>> [x r]])";
  const std::string first = test::run(q);
  for (int i = 0; i < 3; ++i) CHECK(test::run(q) == first);
}
