#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "ramsey/core_algebra.hpp"

using namespace ramsey;

namespace {

// Independent oracle: leaves of a term counted directly.
int count_leaves(const OrderlyTerm& t) {
  if (t.is_identity()) return 1;
  int n = 0;
  for (const auto& c : t.children()) n += count_leaves(c);
  return n;
}

std::uint64_t catalan(int n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[n];
}

}  // namespace

TEST_CASE("term arity") {
  Signature sig({make_plus()});
  OrderlyTerm id = OrderlyTerm::identity();
  CHECK(term_arity(id) == 1);
  OrderlyTerm sum = OrderlyTerm::apply(sig.at("plus"), {id, id});
  CHECK(term_arity(sum) == 2);
  OrderlyTerm nested = OrderlyTerm::apply(sig.at("plus"), {sum, id});
  CHECK(term_arity(nested) == 3);
  CHECK(count_leaves(nested) == 3);
}

TEST_CASE("term eval") {
  Signature sig({make_plus()});
  OrderlyTerm id = OrderlyTerm::identity();
  std::vector<Nat> seven{7};
  CHECK(term_eval(id, seven) == 7);
  OrderlyTerm sum = OrderlyTerm::apply(sig.at("plus"), {id, id});
  std::vector<Nat> one_two{1, 2};
  CHECK(term_eval(sum, one_two) == 3);
  OrderlyTerm nested = OrderlyTerm::apply(sig.at("plus"), {sum, id});
  std::vector<Nat> args{1, 2, 4};
  CHECK(term_eval(nested, args) == 7);
  std::vector<Nat> wrong{1, 2};
  CHECK_THROWS_AS(term_eval(nested, wrong), InputError);
}

TEST_CASE("enumeration: binary signature counts are Catalan") {
  Signature sig({make_plus()});
  CHECK(enumerate_orderly_terms(sig, 1, 3).size() == 1);  // identity only
  CHECK(enumerate_orderly_terms(sig, 2, 2).size() == 1);
  for (int m = 3; m <= 6; ++m) {
    auto terms = enumerate_orderly_terms(sig, m, m);
    CHECK(terms.size() == catalan(m - 1));
    // Deeper bounds add nothing once every op is binary.
    CHECK(enumerate_orderly_terms(sig, m, m + 2).size() == terms.size());
  }
  auto three = enumerate_orderly_terms(sig, 3, 3);
  REQUIRE(three.size() == 2);
  CHECK(three[0] != three[1]);
}

TEST_CASE("enumeration invariants: additivity and associativity collapse") {
  Signature sig({make_plus()});
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 5; ++m) {
    for (const auto& t : enumerate_orderly_terms(sig, m, m)) {
      CHECK(term_arity(t) == count_leaves(t));
      for (int rep = 0; rep < 8; ++rep) {
        std::vector<Nat> args(m);
        for (auto& a : args) a = rng() % 11;
        Nat expected = std::accumulate(args.begin(), args.end(), Nat{0});
        CHECK(term_eval(t, args) == expected);
      }
    }
  }
}

TEST_CASE("enumeration closure under orderly composition") {
  Signature sig({make_plus()});
  auto outer = enumerate_orderly_terms(sig, 2, 2);
  auto inner1 = enumerate_orderly_terms(sig, 2, 2);
  for (const auto& g : outer)
    for (const auto& h1 : inner1) {
      std::vector<OrderlyTerm> subs{h1, OrderlyTerm::identity()};
      OrderlyTerm composed = substitute_leaves(g, subs);
      auto pool = enumerate_orderly_terms(sig, 3, 3);
      CHECK(std::find(pool.begin(), pool.end(), composed) != pool.end());
    }
}

TEST_CASE("unary operations stay depth-bounded") {
  OpFlags f{.inflationary = true, .strictly_increasing_safe = true};
  OpDef succ("succ", 1, [](std::span<const Nat> xs) { return xs[0] + 1; }, f, "custom");
  Signature sig({succ, make_plus()});
  auto d2 = enumerate_orderly_terms(sig, 1, 2);
  auto d4 = enumerate_orderly_terms(sig, 1, 4);
  CHECK(d2.size() == 2);        // x, succ(x)
  CHECK(d4.size() == 4);        // chains up to depth 4
  CHECK(d4.size() > d2.size());
}

TEST_CASE("flag validation rejects wrong declarations") {
  // Truncated subtraction has an infinite fiber over 0.
  OpFlags ff{.finite_fibers = true};
  CHECK_THROWS_AS(
      [&] {
        OpDef bad("monus", 2,
                  [](std::span<const Nat> xs) { return xs[0] > xs[1] ? xs[0] - xs[1] : 0; },
                  ff, "custom");
        validate_flags(bad);
      }(),
      InputError);
  // Constant zero is not inflationary.
  OpFlags fi{.inflationary = true};
  CHECK_THROWS_AS(
      [&] {
        OpDef bad("zero", 2, [](std::span<const Nat>) { return Nat{0}; }, fi, "custom");
        validate_flags(bad);
      }(),
      InputError);
  // first(a,b) = a is not associative-checkable problem, but fails fibers.
  OpFlags fa{.finite_fibers = true};
  CHECK_THROWS_AS(
      [&] {
        OpDef bad("first", 2, [](std::span<const Nat> xs) { return xs[0]; }, fa, "custom");
        validate_flags(bad);
      }(),
      InputError);
}

TEST_CASE("builtin operations validate") {
  CHECK_NOTHROW(validate_flags(make_plus()));
  CHECK_NOTHROW(validate_flags(make_shifted_mul()));
  CHECK_NOTHROW(validate_flags(make_zero()));
  CHECK_NOTHROW(validate_flags(make_first()));
  CHECK(make_shifted_mul().eval2(1, 2) == 5);
  CHECK(make_shifted_mul().eval2(3, 4) == 19);
}

TEST_CASE("table operation with fallback") {
  OpDef fallback = make_plus();
  // 2x2 box replacing plus at the corner.
  std::vector<Nat> values;
  for (Nat a = 0; a <= 1; ++a)
    for (Nat b = 0; b <= 1; ++b) values.push_back(a + b);
  OpDef table = make_table("patched", 2, 1, values, fallback,
                           OpFlags{.finite_fibers = true, .inflationary = true});
  CHECK(table.eval2(0, 1) == 1);
  CHECK(table.eval2(5, 7) == 12);  // falls back
}

TEST_CASE("signature rejects duplicate names") {
  CHECK_THROWS_AS(Signature({make_plus(), make_plus()}), InputError);
}

TEST_CASE("fibers of plus") {
  OpDef plus = make_plus();
  auto fiber = plus.fiber(5);
  CHECK(fiber.size() == 6);
  for (const auto& t : fiber) CHECK(t[0] + t[1] == 5);
}

TEST_CASE("term as operation inherits sampled flags") {
  Signature sig({make_plus()});
  auto terms = enumerate_orderly_terms(sig, 3, 3);
  OpDef t = term_as_opdef(terms[0], sig);
  CHECK(t.arity() == 3);
  CHECK(t.flags().finite_fibers);
  CHECK(t.flags().inflationary);
  std::vector<Nat> args{1, 2, 3};
  CHECK(t.eval(args) == 6);
}
