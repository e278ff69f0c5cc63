#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "unfree/error.hpp"

using namespace unfree;
using test::run;

TEST_CASE("arithmetic and comparison") {
  CHECK(run("(+ 1 2 3)") == "6");
  CHECK(run("(- 10 3 2)") == "5");
  CHECK(run("(- 4)") == "-4");
  CHECK(run("(* 2 3 4)") == "24");
  CHECK(run("(modulo 7 3)") == "1");
  CHECK(run("(modulo -1 13)") == "12");
  CHECK(run("(modulo 0 13)") == "0");
  CHECK(run("(eq? 1 1)") == "#t");
  CHECK(run("(eq? {1 2} {1 2})") == "#t");
  CHECK(run("(eq? <A 1> <A 2>)") == "#f");
  CHECK(run("(not #f)") == "#t");
  CHECK(run("(* 99999999999 99999999999 99999999999)") == "999999999970000000000299999999999");
}

TEST_CASE("data printing") {
  CHECK(run("<Nil>") == "<Nil>");
  CHECK(run("<Cons 1 <Cons 2 <Nil>>>") == "<Cons 1 <Cons 2 <Nil>>>");
  CHECK(run("[1 [[2]]]") == "[1 2]");
  CHECK(run("[[1]]") == "1");
  CHECK(run("[]") == "[]");
  CHECK(run("{@{@{1}} @{2 @{3}} 4}") == "{1 2 3 4}");
  CHECK(run("{}") == "{}");
  CHECK(run("(lambda [$x] x)") == "#<function>");
  CHECK(run("(define $f (lambda [$x] x)) f") == "#<function f>");
  CHECK(run("+") == "#<builtin +>");
  CHECK(run("integer") == "integer");
  CHECK(run("something") == "something");
  CHECK(run("(multiset integer)") == "(multiset integer)");
  CHECK(run("(list (multiset integer))") == "(list (multiset integer))");
  CHECK(run("(matcher {[$ [something] {[$tgt {tgt}]}]})") == "#<matcher>");
}

TEST_CASE("binding forms") {
  CHECK(run("(let {[$x 1] [$y 2]} (+ x y))") == "3");
  CHECK(run("(letrec {[$even? (lambda [$n] (if (eq? n 0) #t (odd? (- n 1))))]"
            "         [$odd? (lambda [$n] (if (eq? n 0) #f (even? (- n 1))))]}"
            "  (even? 10))") == "#t");
  CHECK(run("(define $x 10) x (+ x 100)") == "10\n110");
  CHECK(run("(define $x 1) (define $x 2) x") == "2");
  CHECK(run("(define $f (lambda [$x $y] (- x y))) (f [5 3])") == "2");
}

TEST_CASE("call-by-need") {
  // Unused arguments and elements are never evaluated.
  CHECK(run("((lambda [$x $y] x) 1 (undefined-function 2))") == "1");
  CHECK(run("(take 2 {1 2 (car nothing)})") == "{1 2}");
  CHECK(run("(let {[$x (unbound 1)]} 5)") == "5");
  // A self-referential value is an infinite loop, reported instead of
  // overflowing the stack.
  CHECK_THROWS_AS(run("(letrec {[$x (+ x 1)]} x)"), RuntimeError);
}

TEST_CASE("infinite collections") {
  CHECK(run("(take 5 nats)") == "{1 2 3 4 5}");
  CHECK(run("(letrec {[$ones {1 @ones}]} (take 3 ones))") == "{1 1 1}");
  CHECK_THROWS_AS(run("(take 3 {1 2})"), RuntimeError);
}

TEST_CASE("primes agree with a sieve") {
  const auto expected = oracle::sieve(2000);
  Session s;
  const std::size_t n = 300;
  Value v = test::value_of(s, "(take 300 primes)");
  auto items = force_collection(v);
  REQUIRE(items.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(to_display(items[i]->force()) == std::to_string(expected[i]));
}

TEST_CASE("twin primes and prime triplets agree with a sieve") {
  const auto ps = oracle::sieve(20000);
  std::string twins = "{";
  std::string triplets = "{";
  int nt = 0;
  int np = 0;
  for (std::size_t i = 0; i + 2 < ps.size(); ++i) {
    if (nt < 40 && ps[i + 1] == ps[i] + 2) {
      twins += (nt++ ? " [" : "[") + std::to_string(ps[i]) + " " + std::to_string(ps[i] + 2) + "]";
    }
    if (np < 25 && ps[i + 2] == ps[i] + 6 && (ps[i + 1] == ps[i] + 2 || ps[i + 1] == ps[i] + 4)) {
      triplets += (np++ ? " [" : "[") + std::to_string(ps[i]) + " " + std::to_string(ps[i + 1]) + " " +
                  std::to_string(ps[i] + 6) + "]";
    }
  }
  CHECK(run("(take 40 twin-primes)") == twins + "}");
  CHECK(run("(take 25 prime-triplets)") == triplets + "}");
}

TEST_CASE("runtime errors") {
  CHECK_THROWS_AS(run("undefined-name"), RuntimeError);
  CHECK_THROWS_AS(run("(+ 1 #t)"), RuntimeError);
  CHECK_THROWS_AS(run("(1 2)"), RuntimeError);
  CHECK_THROWS_AS(run("((lambda [$x $y] x) 1)"), RuntimeError);
  CHECK_THROWS_AS(run("(if 1 2 3)"), RuntimeError);
  CHECK_THROWS_AS(run("(match 1 integer {[,2 0]})"), RuntimeError);
  try {
    run("(define $x 1)\n(+ x\n   (car 2))");
    FAIL("no error");
  } catch (const RuntimeError& e) {
    REQUIRE(e.pos());
    CHECK(e.pos()->line == 3);
  }
}

TEST_CASE("interrupts stop long computations") {
  Session s;
  request_interrupt();
  CHECK_THROWS_AS(test::run(s, "(take 1000 nats)"), Interrupted);
  clear_interrupt();
  CHECK(test::run(s, "(take 3 nats)") == "{1 2 3}");
}
