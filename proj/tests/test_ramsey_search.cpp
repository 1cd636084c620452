#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramsey/ramsey_search.hpp"

using namespace ramsey;

namespace {

std::set<Nat> brute_force_fs(const FiniteSeq& b) {
  std::set<Nat> out;
  for (std::uint64_t mask = 1; mask < (1ull << b.size()); ++mask) {
    Nat s = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (mask & (1ull << i)) s += b[i];
    out.insert(s);
  }
  return out;
}

Signature plus_sig() { return Signature({make_plus()}); }

}  // namespace

TEST_CASE("monochromatic search: parity over the naturals") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 200;
  Coloring parity = make_parity_coloring(200);
  auto r = search_monochromatic(plus_sig(), make_arithmetic(1, 1), parity, budget);
  REQUIRE(r.status == SearchStatus::Found);
  REQUIRE(r.witness.size() == 4);
  // Independent verification: every subset sum has the reported color.
  for (Nat s : brute_force_fs(r.witness)) {
    CHECK(s <= 200);
    CHECK(static_cast<int>(s % 2) == r.color);
  }
  CHECK(check_witness(r.witness, r.seed_prefix, r.reduction));
}

TEST_CASE("monochromatic search: single color returns the seed prefix") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 100;
  auto r = search_monochromatic(plus_sig(), make_arithmetic(1, 1),
                                make_single_coloring(100), budget);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.witness == FiniteSeq{1, 2, 3, 4});
  CHECK(r.color == 0);
}

TEST_CASE("monochromatic search: residues mod 3") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 300;
  auto r = search_monochromatic(plus_sig(), make_arithmetic(1, 1),
                                make_mod_coloring(300, 3), budget);
  REQUIRE(r.status == SearchStatus::Found);
  for (Nat s : brute_force_fs(r.witness)) CHECK(s % 3 == static_cast<Nat>(r.color));
}

TEST_CASE("monochromatic search: exhaustion is reported as such") {
  // Entries start above the bound, so no candidate at all.
  SearchBudget budget;
  budget.seq_length = 2;
  budget.value_bound = 5;
  auto r = search_monochromatic(plus_sig(), make_arithmetic(6, 1),
                                make_single_coloring(5), budget);
  CHECK(r.status == SearchStatus::Exhausted);
  CHECK(r.witness.empty());
}

TEST_CASE("monochromatic search: node budget is respected") {
  SearchBudget budget;
  budget.seq_length = 6;
  budget.value_bound = 300;
  budget.node_limit = 3;
  auto r = search_monochromatic(plus_sig(), make_arithmetic(1, 1),
                                make_parity_coloring(300), budget);
  CHECK(r.status == SearchStatus::BudgetExhausted);
  CHECK(r.nodes <= 3);
}

TEST_CASE("monochromatic search is deterministic") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 200;
  auto a = search_monochromatic(plus_sig(), make_arithmetic(1, 1),
                                make_parity_coloring(200), budget);
  auto b = search_monochromatic(plus_sig(), make_arithmetic(1, 1),
                                make_parity_coloring(200), budget);
  CHECK(a.witness == b.witness);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("iterated search: one stage reduces to the monochromatic search") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 200;
  std::vector<Coloring> stages{make_parity_coloring(200)};
  auto r = search_iterated(plus_sig(), make_arithmetic(1, 1), stages, budget);
  REQUIRE(r.status == SearchStatus::Found);
  for (Nat s : brute_force_fs(r.witness)) CHECK(static_cast<int>(s % 2) == r.colors[0]);
}

TEST_CASE("iterated search: evens then multiples of four") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 400;
  std::vector<Coloring> stages{make_parity_coloring(400), make_mod_coloring(400, 4)};
  auto r = search_iterated(plus_sig(), make_arithmetic(1, 1), stages, budget);
  REQUIRE(r.status == SearchStatus::Found);
  REQUIRE(r.witness.size() == 4);
  // Stage 0 on the whole witness, stage 1 on the tail, both via brute force.
  for (Nat s : brute_force_fs(r.witness)) CHECK(static_cast<int>(s % 2) == r.colors[0]);
  FiniteSeq tail(r.witness.begin() + 1, r.witness.end());
  for (Nat s : brute_force_fs(tail)) CHECK(static_cast<int>(s % 4) == r.colors[1]);
}

TEST_CASE("iterated search: an unsatisfiable stage exhausts") {
  SearchBudget budget;
  budget.seq_length = 3;
  budget.value_bound = 5;  // FR values immediately exceed the bound
  std::vector<Coloring> stages{make_single_coloring(5), make_single_coloring(5)};
  auto r = search_iterated(plus_sig(), make_arithmetic(6, 1), stages, budget);
  CHECK(r.status == SearchStatus::Exhausted);
}

TEST_CASE("probe degeneracy: the constant-zero algebra collapses") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 100;
  auto r = probe_degeneracy(Signature({make_zero()}), make_arithmetic(1, 1), budget);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.cardinality == 1);
  CHECK(r.witness == FiniteSeq{0, 0, 0, 0});
}

TEST_CASE("probe degeneracy: sums of powers of two stay spread out") {
  SearchBudget budget;
  budget.seq_length = 4;
  budget.value_bound = 300;
  auto r = probe_degeneracy(plus_sig(), make_powers(2), budget);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.cardinality == 15);  // 2^4 - 1 distinct subset sums
  CHECK(brute_force_fs(r.witness).size() == 15);
}

TEST_CASE("probe degeneracy rejects degenerate lengths") {
  SearchBudget budget;
  budget.seq_length = 1;
  CHECK_THROWS_AS(probe_degeneracy(plus_sig(), make_powers(2), budget), InputError);
}

TEST_CASE("coloring preconditions") {
  SearchBudget budget;
  budget.seq_length = 3;
  budget.value_bound = 100;
  CHECK_THROWS_AS(
      search_monochromatic(plus_sig(), make_arithmetic(1, 1), make_parity_coloring(50),
                           budget),
      InputError);
  CHECK_THROWS_AS(make_mod_coloring(10, 0), InputError);
  Coloring table = make_table_coloring({0, 1, 0, 1});
  CHECK(table.domain_bound == 3);
  CHECK(table.num_colors == 2);
  CHECK_THROWS_AS(table.at(4), InputError);
}

TEST_CASE("iterated search with three stages") {
  SearchBudget budget;
  budget.seq_length = 5;
  budget.value_bound = 2000;
  std::vector<Coloring> stages{make_parity_coloring(2000), make_mod_coloring(2000, 4),
                               make_mod_coloring(2000, 8)};
  auto r = search_iterated(plus_sig(), make_arithmetic(1, 1), stages, budget);
  REQUIRE(r.status == SearchStatus::Found);
  REQUIRE(r.witness.size() == 5);
  for (std::size_t n = 0; n < 3; ++n) {
    FiniteSeq tail(r.witness.begin() + n, r.witness.end());
    Nat m = n == 0 ? 2 : (n == 1 ? 4 : 8);
    for (Nat s : brute_force_fs(tail)) CHECK(s % m == static_cast<Nat>(r.colors[n]) % m);
  }
}
