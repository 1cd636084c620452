#include "ramsey/ramsey_search.hpp"

#include <algorithm>

namespace ramsey {

int Coloring::at(Nat v) const {
  if (v > domain_bound)
    throw InputError("coloring: value " + std::to_string(v) + " exceeds the domain bound " +
                     std::to_string(domain_bound));
  int c = color_of(v);
  if (c < 0 || c >= num_colors) throw InputError("coloring: color id out of range");
  return c;
}

Coloring make_parity_coloring(Nat bound) {
  return Coloring{bound, 2, [](Nat v) { return static_cast<int>(v % 2); }, "parity"};
}

Coloring make_mod_coloring(Nat bound, int m) {
  if (m < 1) throw InputError("coloring: modulus must be >= 1");
  return Coloring{bound, m, [m](Nat v) { return static_cast<int>(v % m); }, "mod"};
}

Coloring make_single_coloring(Nat bound) {
  return Coloring{bound, 1, [](Nat) { return 0; }, "single"};
}

Coloring make_table_coloring(std::vector<int> values) {
  if (values.empty()) throw InputError("coloring: empty table");
  int colors = *std::max_element(values.begin(), values.end()) + 1;
  Nat bound = values.size() - 1;
  return Coloring{bound, colors,
                  [values](Nat v) { return values[static_cast<std::size_t>(v)]; }, "table"};
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

namespace {

struct WindowEntry {
  std::size_t seed_index;
  Nat value;
};

// Usable seed positions. Inflationary signatures can never pull a value back
// under the bound once an entry exceeds it, so those entries are dropped;
// other signatures get a fixed-size window.
std::vector<WindowEntry> seed_window(const Signature& sig, const StreamSeq& seed,
                                     Nat value_bound) {
  const bool inflationary = sig.all_inflationary();
  std::vector<WindowEntry> window;
  bool increasing = true;
  Nat prev = 0;
  for (std::size_t i = 0; i < 4096 && window.size() < 256; ++i) {
    Nat v;
    try {
      v = seed.at(i);
    } catch (const NeedPrefixError&) {
      break;
    } catch (const OverflowError&) {
      break;
    }
    if (i > 0 && v <= prev) increasing = false;
    prev = v;
    if (inflationary) {
      if (v <= value_bound) window.push_back({i, v});
      else if (increasing) break;
    } else {
      window.push_back({i, v});
      if (window.size() >= 64) break;
    }
  }
  return window;
}

struct Candidate {
  Nat value;
  std::vector<std::size_t> window_positions;
  OrderlyTerm term;
  std::size_t term_index;
};

// All blocks starting at window position >= from, confined to a small
// lookahead span, paired with every term of matching arity. Sorted by value
// first so small finite reductions are explored before large ones.
std::vector<Candidate> candidates_at(const std::vector<WindowEntry>& window, std::size_t from,
                                     TermEnumerator& terms, const SearchBudget& budget,
                                     bool prune_above_bound) {
  constexpr std::size_t kLookahead = 8;
  const int max_block =
      std::min<int>(1 << std::max(budget.term_depth - 1, 0), static_cast<int>(kLookahead));
  std::vector<Candidate> out;
  for (std::size_t start = from; start < window.size(); ++start) {
    std::size_t span = std::min(kLookahead - 1, window.size() - start - 1);
    for (std::uint64_t mask = 0; mask < (1ull << span); ++mask) {
      std::vector<std::size_t> positions{start};
      for (std::size_t b = 0; b < span; ++b)
        if (mask & (1ull << b)) positions.push_back(start + 1 + b);
      if (static_cast<int>(positions.size()) > max_block) continue;
      std::vector<Nat> vals;
      vals.reserve(positions.size());
      for (std::size_t p : positions) vals.push_back(window[p].value);
      const auto& pool = terms.terms(static_cast<int>(positions.size()), budget.term_depth);
      for (std::size_t ti = 0; ti < pool.size(); ++ti) {
        Nat v;
        try {
          v = term_eval(pool[ti], vals);
        } catch (const OverflowError&) {
          continue;
        }
        if (prune_above_bound && v > budget.value_bound) continue;
        out.push_back(Candidate{v, positions, pool[ti], ti});
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.window_positions != b.window_positions) return a.window_positions < b.window_positions;
    return a.term_index < b.term_index;
  });
  return out;
}

ReductionWitness build_witness(const std::vector<WindowEntry>& window,
                               const std::vector<Candidate>& chosen) {
  ReductionWitness w;
  for (const auto& c : chosen) {
    WitnessBlock blk;
    for (std::size_t p : c.window_positions) blk.indices.push_back(window[p].seed_index);
    blk.term = c.term;
    w.blocks.push_back(std::move(blk));
  }
  return w;
}

// Appending v to a sequence extends its fold set by v and op(w, v) for every
// existing value w. nullopt when an extension value overflows, which at desk
// scale means it exceeds any value bound.
std::optional<std::pair<std::set<Nat>, std::vector<Nat>>> extend_fold_set(
    const std::set<Nat>& cur, const OpDef& op, Nat v) {
  std::vector<Nat> fresh{v};
  for (Nat w : cur) {
    try {
      fresh.push_back(op.eval2(w, v));
    } catch (const OverflowError&) {
      return std::nullopt;
    }
  }
  std::set<Nat> next = cur;
  next.insert(fresh.begin(), fresh.end());
  return std::make_pair(std::move(next), std::move(fresh));
}

}  // namespace

MonochromaticResult search_monochromatic(const Signature& sig, const StreamSeq& seed,
                                         const Coloring& coloring,
                                         const SearchBudget& budget) {
  MonochromaticResult result;
  if (coloring.domain_bound < budget.value_bound)
    throw InputError("search: the coloring must cover every value up to the value bound");
  auto window = seed_window(sig, seed, budget.value_bound);
  TermEnumerator terms(sig);
  const std::size_t L = budget.seq_length;

  std::vector<Candidate> chosen;
  FiniteSeq partial;
  bool budget_hit = false;

  // One associative binary operation admits incremental tracking of the
  // partial fold set; other signatures recompute the finite reductions per
  // node, which confines them to short witnesses.
  const OpDef* assoc = single_associative_op(sig);
  std::vector<std::set<Nat>> fr_stack{{}};
  std::vector<int> color_stack{-1};

  // Depth-first over candidate extensions; the partial sequence's finite
  // reductions must stay under the bound and within one color class.
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
    if (partial.size() == L) return true;
    for (const auto& cand : candidates_at(window, from, terms, budget, true)) {
      if (result.nodes >= budget.node_limit) {
        budget_hit = true;
        return false;
      }
      ++result.nodes;
      partial.push_back(cand.value);
      bool ok = true;
      bool pushed = false;
      if (assoc) {
        int color = color_stack.back();
        auto ext = extend_fold_set(fr_stack.back(), *assoc, cand.value);
        ok = ext.has_value();
        if (ok)
          for (Nat v : ext->second) {
            if (v > budget.value_bound) {
              ok = false;
              break;
            }
            int c = coloring.at(v);
            if (color == -1) color = c;
            else if (c != color) {
              ok = false;
              break;
            }
          }
        if (ok) {
          fr_stack.push_back(std::move(ext->first));
          color_stack.push_back(color);
          pushed = true;
        }
      } else {
        int color = -1;
        for (Nat v : fr_enumerate(partial, sig, budget.term_depth + static_cast<int>(L))) {
          if (v > budget.value_bound) {
            ok = false;
            break;
          }
          int c = coloring.at(v);
          if (color == -1) color = c;
          else if (c != color) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        chosen.push_back(cand);
        if (dfs(cand.window_positions.back() + 1)) return true;
        chosen.pop_back();
        if (budget_hit) {
          if (pushed) {
            fr_stack.pop_back();
            color_stack.pop_back();
          }
          partial.pop_back();
          return false;
        }
      }
      if (pushed) {
        fr_stack.pop_back();
        color_stack.pop_back();
      }
      partial.pop_back();
    }
    return false;
  };

  if (window.size() >= 1 && dfs(0)) {
    // Independent re-verification before reporting: witness structure,
    // bounded values, single color class.
    result.witness = partial;
    result.reduction = build_witness(window, chosen);
    std::size_t max_idx = 0;
    for (const auto& blk : result.reduction.blocks) max_idx = blk.indices.back();
    result.seed_prefix = seed.take(max_idx + 1);
    if (!check_witness(result.witness, result.seed_prefix, result.reduction))
      throw std::logic_error("search: produced witness fails verification");
    int color = -1;
    for (Nat v : fr_enumerate(result.witness, sig, static_cast<int>(result.witness.size()))) {
      if (v > budget.value_bound)
        throw std::logic_error("search: verified witness exceeds the value bound");
      int c = coloring.at(v);
      if (color == -1) color = c;
      else if (c != color) throw std::logic_error("search: verified witness is not monochromatic");
    }
    result.color = color;
    result.status = SearchStatus::Found;
    return result;
  }
  result.status = budget_hit ? SearchStatus::BudgetExhausted : SearchStatus::Exhausted;
  return result;
}

IteratedResult search_iterated(const Signature& sig, const StreamSeq& seed,
                               std::span<const Coloring> colorings,
                               const SearchBudget& budget) {
  IteratedResult result;
  const std::size_t k = colorings.size();
  if (k == 0) throw InputError("iterated search: no colorings");
  if (budget.seq_length < k)
    throw InputError("iterated search: sequence length must be >= the number of stages");

  const std::size_t L = budget.seq_length;

  // Earlier stages must hand enough raw material down the pipeline: a stage
  // witness consumes at least one entry of its seed per element, so stage
  // lengths grow geometrically toward stage 0. A failed attempt is retried
  // once with doubled lengths before reporting the stage's own status.
  FiniteSeq b;
  SearchStatus last_status = SearchStatus::Exhausted;
  std::string last_detail;
  for (int attempt = 0; attempt < 2 && b.empty(); ++attempt) {
    std::vector<DiagonalStage> stages;
    bool stages_ok = true;
    StreamSeq current = seed;
    for (std::size_t n = 0; n < k; ++n) {
      SearchBudget stage_budget = budget;
      std::size_t factor = std::size_t{1} << ((k - 1 - n) + attempt);
      stage_budget.seq_length =
          std::min<std::size_t>(L * factor, std::max<std::size_t>(2 * L, 64));
      MonochromaticResult stage =
          search_monochromatic(sig, current, colorings[n], stage_budget);
      result.nodes += stage.nodes;
      if (stage.status != SearchStatus::Found) {
        last_status = stage.status;
        last_detail = "stage " + std::to_string(n) + " " + to_string(stage.status);
        stages_ok = false;
        break;
      }
      DiagonalStage ds;
      ds.seq = StreamSeq(stage.witness);
      if (n > 0) ds.to_previous = WitnessStream(stage.reduction.blocks);
      stages.push_back(std::move(ds));
      current = StreamSeq(stage.witness);
    }
    if (!stages_ok) continue;
    try {
      DiagonalResult diag = diagonalize(stages, L);
      b = diag.seq;
    } catch (const NeedPrefixError& e) {
      last_status = SearchStatus::BudgetExhausted;
      last_detail = std::string("diagonalization ran out of stage data: ") + e.what();
    }
  }
  if (b.empty()) {
    result.status = last_status;
    result.detail = last_detail;
    return result;
  }

  // Re-check every tail directly.
  for (std::size_t n = 0; n < k; ++n) {
    FiniteSeq tail(b.begin() + n, b.end());
    int color = -1;
    for (Nat v : fr_enumerate(tail, sig, static_cast<int>(tail.size()))) {
      if (v > budget.value_bound)
        throw std::logic_error("iterated search: tail value exceeds the bound");
      int c = colorings[n].at(v);
      if (color == -1) color = c;
      else if (c != color)
        throw std::logic_error("iterated search: tail " + std::to_string(n) +
                               " is not monochromatic");
    }
    result.colors.push_back(color);
  }
  result.witness = std::move(b);
  result.status = SearchStatus::Found;
  return result;
}

DegeneracyResult probe_degeneracy(const Signature& sig, const StreamSeq& seed,
                                  const SearchBudget& budget) {
  DegeneracyResult result;
  if (budget.seq_length < 2)
    throw InputError("probe_degeneracy: sequence length must be >= 2");
  auto window = seed_window(sig, seed, budget.value_bound);
  TermEnumerator terms(sig);
  const std::size_t L = budget.seq_length;

  std::vector<Candidate> chosen;
  FiniteSeq partial;
  FiniteSeq best_witness;
  std::size_t best = SIZE_MAX;
  bool budget_hit = false;

  const OpDef* assoc = single_associative_op(sig);
  std::vector<std::set<Nat>> fr_stack{{}};

  auto partial_fr_size = [&]() -> std::optional<std::size_t> {
    // Bounded cardinality of the current partial's finite reductions;
    // nullopt when a value exceeds the bound.
    if (assoc) {
      const auto& cur = fr_stack.back();
      if (!cur.empty() && *cur.rbegin() > budget.value_bound) return std::nullopt;
      return cur.size();
    }
    auto fr = fr_enumerate(partial, sig, budget.term_depth + static_cast<int>(L));
    if (!std::all_of(fr.begin(), fr.end(),
                     [&](Nat v) { return v <= budget.value_bound; }))
      return std::nullopt;
    return fr.size();
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (best == 1) return;  // no finite-reduction set is smaller
    if (partial.size() == L) {
      auto size = partial_fr_size();
      if (size && *size < best) {
        best = *size;
        best_witness = partial;
      }
      return;
    }
    for (const auto& cand : candidates_at(window, from, terms, budget, true)) {
      if (result.nodes >= budget.node_limit) {
        budget_hit = true;
        return;
      }
      ++result.nodes;
      partial.push_back(cand.value);
      bool pushed = false;
      if (assoc) {
        auto ext = extend_fold_set(fr_stack.back(), *assoc, cand.value);
        if (ext) {
          fr_stack.push_back(std::move(ext->first));
          pushed = true;
        }
      }
      // Finite reductions only grow along an extension.
      if (!assoc || pushed) {
        auto size = partial_fr_size();
        if (size && *size < best) {
          chosen.push_back(cand);
          dfs(cand.window_positions.back() + 1);
          chosen.pop_back();
        }
      }
      if (pushed) fr_stack.pop_back();
      partial.pop_back();
      if (budget_hit || best == 1) return;
    }
  };

  dfs(0);
  if (best != SIZE_MAX) {
    result.status = budget_hit ? SearchStatus::BudgetExhausted : SearchStatus::Found;
    result.witness = best_witness;
    result.cardinality = best;
  } else {
    result.status = budget_hit ? SearchStatus::BudgetExhausted : SearchStatus::Exhausted;
  }
  return result;
}

}  // namespace ramsey
