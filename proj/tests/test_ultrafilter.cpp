#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ramsey/ultrafilter.hpp"

using namespace ramsey;

namespace {

SymSet fin(int dim, std::vector<Tuple> s) { return SymSet::finite(dim, std::move(s)); }
SymSet cof(int dim, std::vector<Tuple> s) { return SymSet::cofinite(dim, std::move(s)); }

SymSet random_symset(std::mt19937_64& rng, int dim, Nat bound, int max_support) {
  int size = static_cast<int>(rng() % (max_support + 1));
  std::vector<Tuple> support;
  for (int i = 0; i < size; ++i) {
    Tuple t(dim);
    for (auto& v : t) v = rng() % (bound + 1);
    support.push_back(std::move(t));
  }
  return SymSet(dim, rng() % 2 ? SymSet::Mode::Finite : SymSet::Mode::Cofinite,
                std::move(support));
}

std::vector<Ultrafilter> small_pool() {
  std::vector<Ultrafilter> pool{Ultrafilter::cofinite()};
  for (Nat c = 0; c <= 5; ++c) pool.push_back(Ultrafilter::principal(c));
  return pool;
}

}  // namespace

TEST_CASE("uf_member basics") {
  CHECK(uf_member(Ultrafilter::principal(3), fin(1, {{3}})));
  CHECK_FALSE(uf_member(Ultrafilter::cofinite(), fin(1, {{3}})));
  CHECK(uf_member(Ultrafilter::cofinite(), cof(1, {})));
  CHECK(uf_member(Ultrafilter::cofinite(), cof(1, {{0}, {9}})));
  CHECK_FALSE(uf_member(Ultrafilter::principal(0), cof(1, {{0}})));
  CHECK_THROWS_AS(uf_member(Ultrafilter::cofinite(), fin(2, {})), InputError);
}

TEST_CASE("section_set worked cases") {
  CHECK(section_set(cof(2, {{0, 3}}), Ultrafilter::principal(3)) == cof(1, {{0}}));
  CHECK(section_set(fin(2, {{1, 2}}), Ultrafilter::cofinite()) == SymSet::empty(1));
  CHECK(section_set(SymSet::full(2), Ultrafilter::principal(7)) == SymSet::full(1));
  CHECK(section_set(SymSet::full(2), Ultrafilter::cofinite()) == SymSet::full(1));
  CHECK(section_set(fin(2, {{1, 2}, {4, 2}}), Ultrafilter::principal(2)) ==
        fin(1, {{1}, {4}}));
  CHECK_THROWS_AS(section_set(fin(1, {{1}}), Ultrafilter::cofinite()), InputError);
}

TEST_CASE("section_set against the defining property") {
  std::mt19937_64 rng(41);
  auto pool = small_pool();
  for (int rep = 0; rep < 300; ++rep) {
    SymSet x = random_symset(rng, 2, 4, 5);
    const Ultrafilter& u = pool[rng() % pool.size()];
    SymSet w = section_set(x, u);
    for (Nat a = 0; a <= 6; ++a) {
      // The row {b | (a,b) in X} as a dim-1 set.
      std::vector<Tuple> row;
      for (const auto& t : x.support())
        if (t[0] == a) row.push_back({t[1]});
      SymSet section(1, x.mode(), std::move(row));
      CHECK(w.contains({a}) == uf_member(u, section));
    }
  }
}

TEST_CASE("tensor membership worked cases") {
  std::vector<Ultrafilter> cof2{Ultrafilter::cofinite(), Ultrafilter::cofinite()};
  CHECK(tensor_member(cof2, cof(2, {{0, 0}})));

  std::vector<Ultrafilter> p12{Ultrafilter::principal(1), Ultrafilter::principal(2)};
  CHECK(tensor_member(p12, fin(2, {{1, 2}})));
  CHECK_FALSE(tensor_member(p12, fin(2, {{2, 1}})));

  std::vector<Ultrafilter> mixed{Ultrafilter::cofinite(), Ultrafilter::principal(2)};
  CHECK_FALSE(tensor_member(mixed, fin(2, {{1, 2}})));

  CHECK_THROWS_AS(tensor_member(p12, fin(1, {{1}})), InputError);
}

TEST_CASE("tensor axioms: intersection closure, properness, totality") {
  std::mt19937_64 rng(43);
  auto pool = small_pool();
  for (const auto& u : pool)
    for (const auto& v : pool) {
      std::vector<Ultrafilter> factors{u, v};
      std::vector<SymSet> sets;
      for (int i = 0; i < 40; ++i) sets.push_back(random_symset(rng, 2, 4, 4));
      CHECK_FALSE(tensor_member(factors, SymSet::empty(2)));
      CHECK(tensor_member(factors, SymSet::full(2)));
      for (const auto& x : sets) {
        bool in = tensor_member(factors, x);
        bool comp_in = tensor_member(factors, symset_compl(x));
        CHECK(in != comp_in);
      }
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
          if (tensor_member(factors, sets[i]) && tensor_member(factors, sets[j]))
            CHECK(tensor_member(factors, symset_inter(sets[i], sets[j])));
        }
    }
}

TEST_CASE("one-shot multi-section equals iterated sections") {
  std::mt19937_64 rng(47);
  auto pool = small_pool();
  for (int rep = 0; rep < 200; ++rep) {
    SymSet x = random_symset(rng, 3, 3, 5);
    std::vector<Ultrafilter> uvw{pool[rng() % 4], pool[rng() % 4], pool[rng() % 4]};
    std::span<const Ultrafilter> last_two(uvw.data() + 1, 2);
    SymSet one_shot = section_set_multi(x, last_two);
    SymSet iterated = section_set(section_set(x, uvw[2]), uvw[1]);
    CHECK(one_shot == iterated);
    CHECK(tensor_member(uvw, x) ==
          uf_member(uvw[0], one_shot));
  }
}

TEST_CASE("pushforward classification") {
  OpDef plus = make_plus();
  auto P = [](Nat c) { return Ultrafilter::principal(c); };
  Ultrafilter C = Ultrafilter::cofinite();

  CHECK(pushforward(plus, std::vector<Ultrafilter>{P(2), P(3)}) == P(5));
  CHECK(pushforward(plus, std::vector<Ultrafilter>{C, C}) == C);
  CHECK(pushforward(plus, std::vector<Ultrafilter>{P(2), C}) == C);
  CHECK(pushforward(plus, std::vector<Ultrafilter>{C, P(2)}) == C);

  // The extension property over the principal points.
  for (Nat a = 0; a <= 8; ++a)
    for (Nat b = 0; b <= 8; ++b)
      CHECK(pushforward(plus, std::vector<Ultrafilter>{P(a), P(b)}) == P(a + b));

  CHECK_THROWS_AS(pushforward(plus, std::vector<Ultrafilter>{P(1)}), InputError);
  CHECK_THROWS_AS(pushforward(make_zero(), std::vector<Ultrafilter>{P(1), P(2)}),
                  InputError);
}

TEST_CASE("pushforward extensional soundness") {
  OpDef plus = make_plus();
  std::mt19937_64 rng(53);
  auto pool = small_pool();
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<Ultrafilter> factors{pool[rng() % pool.size()], pool[rng() % pool.size()]};
    Ultrafilter pushed = pushforward(plus, factors);
    SymSet x = random_symset(rng, 1, 12, 5);
    CHECK(uf_member(pushed, x) == tensor_member(factors, symset_pre(plus, 1, x)));
  }
}

TEST_CASE("idempotence") {
  OpDef plus = make_plus();
  CHECK(is_idempotent(plus, Ultrafilter::cofinite()));
  CHECK(is_idempotent(plus, Ultrafilter::principal(0)));
  CHECK_FALSE(is_idempotent(plus, Ultrafilter::principal(1)));
  for (Nat c = 2; c <= 10; ++c) CHECK_FALSE(is_idempotent(plus, Ultrafilter::principal(c)));

  OpDef smul = make_shifted_mul();
  CHECK(is_idempotent(smul, Ultrafilter::cofinite()));
  CHECK(is_idempotent(smul, Ultrafilter::principal(0)));
}

TEST_CASE("associativity over the small pool") {
  auto pool = small_pool();
  auto r1 = check_associativity(make_plus(), pool);
  CHECK(r1.passed);
  CHECK(r1.triples_checked == 343);
  auto r2 = check_associativity(make_shifted_mul(), pool, 2);
  CHECK(r2.passed);

  // Missing associative flag rejected up front.
  OpFlags ff{.finite_fibers = true, .inflationary = true};
  OpDef noassoc("noassoc", 2,
                [](std::span<const Nat> xs) { return xs[0] + 2 * xs[1]; }, ff, "custom");
  CHECK_THROWS_AS(check_associativity(noassoc, pool), InputError);
}

TEST_CASE("orderly idempotence for the cofinite filter") {
  Signature sig({make_plus()});
  SamplingPlan plan;
  plan.samples_per_clause = 30;
  auto report = orderly_idempotence_check(sig, Ultrafilter::cofinite(), 3, plan);
  CHECK(report.passed);
  CHECK(report.terms_checked == 4);  // 1 + 1 + 2
  CHECK(report.identities_checked > 0);

  auto p0 = orderly_idempotence_check(sig, Ultrafilter::principal(0), 3, plan);
  CHECK(p0.passed);

  // A non-idempotent point fails the precondition with a report, not a throw.
  auto p1 = orderly_idempotence_check(sig, Ultrafilter::principal(1), 3, plan);
  CHECK_FALSE(p1.passed);
}

TEST_CASE("restriction of the chain ultrafilter is the cofinite filter") {
  Signature sig({make_plus()});
  auto field = std::make_shared<const FRChainField>(make_powers(2), sig, 3);
  Ultrafilter u = Ultrafilter::fr_chain(field);
  CHECK(classify_restriction(u) == Ultrafilter::cofinite());
  CHECK(classify_restriction(Ultrafilter::principal(4)) == Ultrafilter::principal(4));

  OracleTable none;
  ClosureFamily coarse("coarse", none, sig);
  ClosureFamily fine("fine", field->generator_table(), sig);
  SamplingPlan plan;
  plan.samples_per_clause = 100;
  auto report = check_restriction(coarse, fine, u, sig.at("plus"), plan);
  CHECK(report.passed);
  CHECK(report.sets_checked == 100);

  // Negative control: a deliberately wrong classification.
  auto bad = check_restriction_with(coarse, fine, u, Ultrafilter::principal(1),
                                    sig.at("plus"), plan);
  CHECK_FALSE(bad.passed);
}

TEST_CASE("pushforward with chain factors reproduces the chain ultrafilter") {
  Signature sig({make_plus()});
  auto field = std::make_shared<const FRChainField>(make_powers(2), sig, 3);
  Ultrafilter u = Ultrafilter::fr_chain(field);
  CHECK(pushforward(sig.at("plus"), std::vector<Ultrafilter>{u, u}) == u);
  CHECK(is_idempotent(sig.at("plus"), u));

  // Mixing chain and non-chain factors is not classified.
  CHECK_THROWS_AS(
      pushforward(sig.at("plus"), std::vector<Ultrafilter>{u, Ultrafilter::cofinite()}),
      UnclassifiableError);
}

TEST_CASE("principal tensors evaluate at the point tuple") {
  // Independent oracle: a product of principal filters contains X exactly
  // when the tuple of points lies in X.
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 400; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 3);
    SymSet x = random_symset(rng, dim, 5, 6);
    std::vector<Ultrafilter> factors;
    Tuple pts;
    for (int i = 0; i < dim; ++i) {
      Nat c = rng() % 6;
      factors.push_back(Ultrafilter::principal(c));
      pts.push_back(c);
    }
    CHECK(tensor_member(factors, x) == x.contains(pts));
  }
}

TEST_CASE("pushforward soundness for the shifted multiplication") {
  OpDef smul = make_shifted_mul();
  std::mt19937_64 rng(83);
  auto pool = small_pool();
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<Ultrafilter> factors{pool[rng() % pool.size()], pool[rng() % pool.size()]};
    Ultrafilter pushed = pushforward(smul, factors);
    SymSet x = random_symset(rng, 1, 40, 5);
    CHECK(uf_member(pushed, x) == tensor_member(factors, symset_pre(smul, 1, x)));
  }
}

TEST_CASE("associativity check needs finite fibers") {
  // first(a,b) = a is associative but its fibers are infinite.
  OpFlags f{.associative = true};
  OpDef first("first", 2, [](std::span<const Nat> xs) { return xs[0]; }, f, "custom");
  validate_flags(first);
  auto pool = small_pool();
  CHECK_THROWS_AS(check_associativity(first, pool), InputError);
}

TEST_CASE("restriction of a principal ultrafilter is itself") {
  Signature sig({make_plus()});
  auto field = std::make_shared<const FRChainField>(make_powers(2), sig, 2);
  OracleTable none;
  ClosureFamily coarse("coarse", none, sig);
  ClosureFamily fine("fine", field->generator_table(), sig);
  SamplingPlan plan;
  plan.samples_per_clause = 60;
  auto report =
      check_restriction(coarse, fine, Ultrafilter::principal(4), sig.at("plus"), plan);
  CHECK(report.passed);
  CHECK(report.restriction == "principal(4)");
}
