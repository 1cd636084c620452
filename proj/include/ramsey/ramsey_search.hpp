#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/reduction.hpp"

namespace ramsey {

// A total coloring of [0, domain_bound] with a contiguous palette 0..colors-1.
struct Coloring {
  Nat domain_bound = 0;
  int num_colors = 1;
  std::function<int(Nat)> color_of;
  std::string kind = "custom";

  int at(Nat v) const;
};

Coloring make_parity_coloring(Nat bound);
Coloring make_mod_coloring(Nat bound, int m);
Coloring make_single_coloring(Nat bound);
Coloring make_table_coloring(std::vector<int> values);

struct SearchBudget {
  std::size_t seq_length = 4;       // L
  Nat value_bound = 200;            // M: finite reductions must stay <= M
  int term_depth = 3;
  std::size_t node_limit = 1000000;
};

// "Not found within budget" and "the bounded space is exhausted" are
// distinct: existence theorems only apply to genuinely Ramsey algebras and
// unbounded searches.
enum class SearchStatus { Found, Exhausted, BudgetExhausted };

std::string to_string(SearchStatus s);

struct MonochromaticResult {
  SearchStatus status = SearchStatus::Exhausted;
  FiniteSeq witness;
  int color = 0;
  ReductionWitness reduction;  // certifies witness against the seed prefix
  FiniteSeq seed_prefix;       // the prefix the reduction refers to
  std::size_t nodes = 0;
};

// Backtracking search for a length-L reduction of the seed whose finite
// reductions are bounded by M and monochromatic. Candidates are explored by
// value, smallest first. Every found witness is re-verified by brute force
// before being reported.
MonochromaticResult search_monochromatic(const Signature& sig, const StreamSeq& seed,
                                         const Coloring& coloring, const SearchBudget& budget);

struct IteratedResult {
  SearchStatus status = SearchStatus::Exhausted;
  FiniteSeq witness;
  std::vector<int> colors;       // color of FR(witness - n) for stage n
  std::size_t nodes = 0;
  std::string detail;
};

// Stagewise construction: repeatedly search a monochromatic reduction of the
// previous stage, then diagonalize, so that FR(b - n) is monochromatic for
// coloring n. Tails are re-checked directly on the result.
IteratedResult search_iterated(const Signature& sig, const StreamSeq& seed,
                               std::span<const Coloring> colorings,
                               const SearchBudget& budget);

struct DegeneracyResult {
  SearchStatus status = SearchStatus::Exhausted;
  FiniteSeq witness;
  std::size_t cardinality = 0;
  std::size_t nodes = 0;
};

// Minimizes |FR(b)| over reductions b of the seed within the budget;
// cardinality 1 is desk-scale degeneracy evidence. Rejects L < 2.
DegeneracyResult probe_degeneracy(const Signature& sig, const StreamSeq& seed,
                                  const SearchBudget& budget);

}  // namespace ramsey
