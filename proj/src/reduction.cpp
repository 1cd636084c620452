#include "ramsey/reduction.hpp"

#include <algorithm>
#include <map>

namespace ramsey {

bool strictly_increasing(std::span<const Nat> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1]) return false;
  return true;
}

Nat SeqRule::eval(std::size_t i) const {
  switch (kind) {
    case Kind::Arithmetic:
      return checked_add(a, checked_mul(b, i));
    case Kind::Geometric:
      return checked_mul(a, checked_pow(b, i));
    case Kind::Powers:
      return checked_pow(a, i);
  }
  throw InputError("sequence rule: bad kind");
}

Nat StreamSeq::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  if (rule_) return rule_->eval(i);
  throw NeedPrefixError("sequence consulted past prefix at index " + std::to_string(i), i);
}

FiniteSeq StreamSeq::take(std::size_t n) const {
  FiniteSeq out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

StreamSeq StreamSeq::drop(std::size_t n) const {
  FiniteSeq pre;
  for (std::size_t i = n; i < prefix_.size(); ++i) pre.push_back(prefix_[i]);
  if (!rule_) return StreamSeq(std::move(pre));
  // Re-anchor the rule: the dropped stream's entry i is the original entry
  // i + n. The surviving prefix shadows the rule on the indices it covers.
  SeqRule r = *rule_;
  try {
    switch (r.kind) {
      case SeqRule::Kind::Arithmetic:
        r.a = checked_add(r.a, checked_mul(r.b, n));
        break;
      case SeqRule::Kind::Geometric:
        r.a = checked_mul(r.a, checked_pow(r.b, n));
        break;
      case SeqRule::Kind::Powers:
        r = SeqRule{SeqRule::Kind::Geometric, checked_pow(r.a, n), r.a};
        break;
    }
  } catch (const OverflowError&) {
    return StreamSeq(std::move(pre));  // every rule entry would overflow anyway
  }
  return StreamSeq(std::move(pre), r);
}

StreamSeq make_powers(Nat base) { return StreamSeq({}, SeqRule{SeqRule::Kind::Powers, base, 0}); }

StreamSeq make_arithmetic(Nat start, Nat step) {
  return StreamSeq({}, SeqRule{SeqRule::Kind::Arithmetic, start, step});
}

namespace {

bool strictly_increasing_idx(std::span<const std::size_t> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1]) return false;
  return true;
}

}  // namespace

bool check_witness(const FiniteSeq& a, const FiniteSeq& b, const ReductionWitness& w) {
  if (w.blocks.size() != a.size())
    throw InputError("check_witness: witness has " + std::to_string(w.blocks.size()) +
                     " blocks for a sequence of length " + std::to_string(a.size()));
  // Malformedness is an input error, distinguished from the value verdict;
  // validate the whole structure before evaluating anything.
  bool have_prev = false;
  std::size_t prev_last = 0;
  for (const WitnessBlock& blk : w.blocks) {
    if (blk.indices.empty()) throw InputError("check_witness: empty block");
    if (!strictly_increasing_idx(blk.indices))
      throw InputError("check_witness: block indices not strictly increasing");
    if (have_prev && blk.indices.front() <= prev_last)
      throw InputError("check_witness: indices not globally increasing across blocks");
    if (blk.indices.back() >= b.size())
      throw InputError("check_witness: index " + std::to_string(blk.indices.back()) +
                       " out of range for |b| = " + std::to_string(b.size()));
    if (static_cast<int>(blk.indices.size()) != blk.term.arity())
      throw InputError("check_witness: term arity " + std::to_string(blk.term.arity()) +
                       " != block size " + std::to_string(blk.indices.size()));
    prev_last = blk.indices.back();
    have_prev = true;
  }
  for (std::size_t n = 0; n < w.blocks.size(); ++n) {
    const WitnessBlock& blk = w.blocks[n];
    std::vector<Nat> vals;
    vals.reserve(blk.indices.size());
    for (std::size_t i : blk.indices) vals.push_back(b[i]);
    if (term_eval(blk.term, vals) != a[n]) return false;
  }
  return true;
}

std::optional<ReductionWitness> find_reduction(const FiniteSeq& a, const FiniteSeq& b,
                                               const Signature& sig, int max_depth) {
  TermEnumerator terms(sig);
  std::set<std::pair<std::size_t, std::size_t>> failed;
  std::vector<WitnessBlock> blocks;

  // Searches blocks before terms: outer loop over index sequences in
  // lexicographic order, inner loop over term enumeration; failures memoized
  // on (position in a, start position in b).
  std::function<bool(std::size_t, std::size_t)> place = [&](std::size_t n,
                                                            std::size_t p) -> bool {
    if (n == a.size()) return true;
    if (failed.count({n, p})) return false;

    std::vector<std::size_t> idx;
    std::function<bool(std::size_t)> extend = [&](std::size_t next_min) -> bool {
      if (!idx.empty()) {
        std::vector<Nat> vals;
        vals.reserve(idx.size());
        for (std::size_t i : idx) vals.push_back(b[i]);
        for (const auto& t : terms.terms(static_cast<int>(idx.size()), max_depth)) {
          Nat v;
          try {
            v = term_eval(t, vals);
          } catch (const OverflowError&) {
            continue;
          }
          if (v == a[n]) {
            blocks.push_back(WitnessBlock{idx, t});
            if (place(n + 1, idx.back() + 1)) return true;
            blocks.pop_back();
          }
        }
      }
      for (std::size_t i = next_min; i < b.size(); ++i) {
        idx.push_back(i);
        if (extend(i + 1)) return true;
        idx.pop_back();
      }
      return false;
    };
    if (extend(p)) return true;
    failed.insert({n, p});
    return false;
  };

  if (place(0, 0)) return ReductionWitness{std::move(blocks)};
  return std::nullopt;
}

const OpDef* single_associative_op(const Signature& sig) {
  if (sig.ops().size() != 1) return nullptr;
  const OpDef& op = sig.ops()[0];
  return (op.arity() == 2 && op.flags().associative) ? &op : nullptr;
}

std::set<Nat> fr_enumerate(const FiniteSeq& b, const Signature& sig, int max_depth) {
  std::set<Nat> out;
  const std::size_t n = b.size();
  if (n > 24) throw InputError("fr_enumerate: sequence too long for exhaustive enumeration");

  // One associative binary operation: every orderly term of a given arity
  // computes the same left fold, so the finite reductions are exactly the
  // folds of the nonempty subsequences.
  if (const OpDef* op = single_associative_op(sig)) {
    std::function<void(std::size_t, Nat, bool)> rec = [&](std::size_t i, Nat acc,
                                                          bool started) {
      if (started) out.insert(acc);
      for (std::size_t j = i; j < n; ++j) {
        if (!started) {
          rec(j + 1, b[j], true);
        } else {
          try {
            rec(j + 1, op->eval2(acc, b[j]), true);
          } catch (const OverflowError&) {
            // Values past the representable range cannot come back down for
            // the inflationary operations used at desk scale; skip them.
          }
        }
      }
    };
    rec(0, 0, false);
    return out;
  }

  TermEnumerator terms(sig);
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::vector<Nat> vals;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) vals.push_back(b[i]);
    for (const auto& t : terms.terms(static_cast<int>(vals.size()), max_depth)) {
      try {
        out.insert(term_eval(t, vals));
      } catch (const OverflowError&) {
      }
    }
  }
  return out;
}

namespace {

bool signature_is_plain_addition(const Signature& sig) {
  return sig.ops().size() == 1 && sig.ops()[0].kind() == "add" &&
         sig.ops()[0].arity() == 2;
}

}  // namespace

bool fr_member(Nat x, const StreamSeq& b, std::size_t tail, const Signature& sig) {
  if (!sig.all_inflationary())
    throw InputError("fr_member: every operation must carry the inflationary flag");

  // Collect the entries <= x; past them no term can evaluate down to x.
  std::vector<Nat> usable;
  Nat prev = 0;
  bool have_prev = false;
  for (std::size_t i = tail;; ++i) {
    Nat v;
    try {
      v = b.at(i);
    } catch (const OverflowError&) {
      break;  // entries past here exceed the representable range, hence x
    }
    if (have_prev && v <= prev)
      throw InputError("fr_member: sequence not strictly increasing at index " +
                       std::to_string(i));
    prev = v;
    have_prev = true;
    if (v > x) break;
    usable.push_back(v);
  }
  if (usable.empty()) return false;

  if (signature_is_plain_addition(sig) && x <= 4'000'000) {
    // FR over {+} is the set of subset sums; decide by dynamic programming.
    std::vector<char> reach(x + 1, 0);
    reach[0] = 1;
    for (Nat v : usable)
      for (Nat s = x; s + 1 > v; --s)
        if (reach[s - v]) reach[s] = 1;
    reach[0] = 0;  // nonempty subsequences only
    return reach[x] != 0;
  }

  if (usable.size() > 20)
    throw InputError("fr_member: " + std::to_string(usable.size()) +
                     " candidate entries exceed the exhaustive search bound");
  int depth = static_cast<int>(usable.size());
  if (!sig.all_arities_at_least(2)) depth += 8;
  return fr_enumerate(usable, sig, depth).count(x) > 0;
}

WitnessBlock WitnessStream::block(std::size_t i) const {
  if (i < blocks_.size()) return blocks_[i];
  if (rule_) return rule_(i);
  throw NeedPrefixError("witness stream consulted past prefix at block " + std::to_string(i),
                        i);
}

WitnessStream WitnessStream::shift(std::size_t shift) {
  return WitnessStream({}, [shift](std::size_t i) {
    return WitnessBlock{{i + shift}, OrderlyTerm::identity()};
  });
}

namespace {

struct Footprint {
  std::vector<std::size_t> indices;
  OrderlyTerm term;
};

// Expands entry j of stage s into footprints on every stage r <= s,
// validating consulted witness blocks along the way.
std::vector<Footprint> compose_entry(std::span<const DiagonalStage> stages, std::size_t s,
                                     std::size_t j) {
  std::vector<Footprint> fp(s + 1, Footprint{{}, OrderlyTerm::identity()});
  fp[s] = Footprint{{j}, OrderlyTerm::identity()};
  for (std::size_t r = s; r >= 1; --r) {
    if (!stages[r].to_previous)
      throw InputError("diagonalize: stage " + std::to_string(r) +
                       " is missing its witness stream");
    const WitnessStream& ws = *stages[r].to_previous;
    std::vector<std::size_t> down;
    std::vector<OrderlyTerm> leaf_terms;
    bool have_prev = false;
    std::size_t prev_last = 0;
    for (std::size_t i : fp[r].indices) {
      WitnessBlock blk = ws.block(i);
      if (blk.indices.empty() || !strictly_increasing_idx(blk.indices))
        throw InputError("diagonalize: malformed witness block at stage " +
                         std::to_string(r));
      if (static_cast<int>(blk.indices.size()) != blk.term.arity())
        throw InputError("diagonalize: witness block arity mismatch at stage " +
                         std::to_string(r));
      if (have_prev && blk.indices.front() <= prev_last)
        throw InputError("diagonalize: witness blocks not increasing at stage " +
                         std::to_string(r));
      prev_last = blk.indices.back();
      have_prev = true;
      std::vector<Nat> vals;
      for (std::size_t bi : blk.indices) vals.push_back(stages[r - 1].seq.at(bi));
      if (term_eval(blk.term, vals) != stages[r].seq.at(i))
        throw InputError("diagonalize: stage " + std::to_string(r) +
                         " entry " + std::to_string(i) +
                         " is not certified by its witness block");
      for (std::size_t bi : blk.indices) down.push_back(bi);
      leaf_terms.push_back(blk.term);
    }
    fp[r - 1].term = substitute_leaves(fp[r].term, leaf_terms);
    fp[r - 1].indices = std::move(down);
  }
  return fp;
}

}  // namespace

DiagonalResult diagonalize(std::span<const DiagonalStage> stages, std::size_t length) {
  if (stages.empty()) throw InputError("diagonalize: no stages");
  const std::size_t S = stages.size();
  std::vector<std::size_t> low(S, 0);

  struct Placement {
    std::size_t stage;
    Nat value;
    std::vector<Footprint> footprints;  // for stages 0..stage
  };
  std::vector<Placement> placed;

  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t s = std::min(n, S - 1);
    bool ok = false;
    for (std::size_t j = low[s]; j < low[s] + 100000; ++j) {
      auto fp = compose_entry(stages, s, j);
      bool fits = true;
      for (std::size_t r = 0; r <= s; ++r)
        if (fp[r].indices.front() < low[r]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (std::size_t r = 0; r <= s; ++r) low[r] = fp[r].indices.back() + 1;
      placed.push_back(Placement{s, stages[s].seq.at(j), std::move(fp)});
      ok = true;
      break;
    }
    if (!ok) throw InputError("diagonalize: no usable entry found at stage " +
                              std::to_string(s));
  }

  DiagonalResult result;
  for (const auto& p : placed) result.seq.push_back(p.value);
  result.stage_witnesses.resize(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t q = std::min(n, S - 1);
    ReductionWitness w;
    for (std::size_t m = n; m < length; ++m) {
      const Footprint& fp = placed[m].footprints[q];
      w.blocks.push_back(WitnessBlock{fp.indices, fp.term});
    }
    result.stage_witnesses[n] = std::move(w);
  }
  return result;
}

}  // namespace ramsey
