#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ramsey/core_algebra.hpp"

namespace ramsey {

using FiniteSeq = std::vector<Nat>;

bool strictly_increasing(std::span<const Nat> xs);

// Rule generating entry i of an infinite sequence from its index.
struct SeqRule {
  enum class Kind { Arithmetic, Geometric, Powers };
  Kind kind;
  Nat a = 0;  // start (arithmetic, geometric) or base (powers)
  Nat b = 0;  // step (arithmetic) or ratio (geometric)

  Nat eval(std::size_t i) const;
};

// A lazily consulted infinite sequence: an explicit prefix, optionally
// extended by a total rule. Consulting past the data throws NeedPrefixError.
class StreamSeq {
 public:
  StreamSeq() = default;
  explicit StreamSeq(FiniteSeq prefix) : prefix_(std::move(prefix)) {}
  StreamSeq(FiniteSeq prefix, SeqRule rule) : prefix_(std::move(prefix)), rule_(rule) {}

  Nat at(std::size_t i) const;
  bool has_rule() const { return rule_.has_value(); }
  const std::optional<SeqRule>& rule() const { return rule_; }
  const FiniteSeq& prefix() const { return prefix_; }
  FiniteSeq take(std::size_t n) const;

  // Drops the first n entries (the cut-off sequence).
  StreamSeq drop(std::size_t n) const;

 private:
  FiniteSeq prefix_;
  std::optional<SeqRule> rule_;
};

StreamSeq make_powers(Nat base);              // base^i
StreamSeq make_arithmetic(Nat start, Nat step);

// One block of a reduction: positions selected from the source sequence plus
// the orderly term applied to the selected values.
struct WitnessBlock {
  std::vector<std::size_t> indices;  // strictly increasing
  OrderlyTerm term;                  // arity == indices.size()
};

// Certificate that one finite sequence reduces to another: block n produces
// entry n, and all indices across blocks are globally increasing.
struct ReductionWitness {
  std::vector<WitnessBlock> blocks;
};

// Returns true iff w certifies a as a reduction of b. A malformed witness
// (arity mismatch, index out of range, ordering violation) is an InputError,
// distinguished from the answer `false` (well-formed but wrong values).
bool check_witness(const FiniteSeq& a, const FiniteSeq& b, const ReductionWitness& w);

// Searches for a witness that a reduces to b, with term depth <= max_depth.
// Deterministic: lexicographically least index sequence first, then smallest
// term in enumeration order. Complete (no false negatives) when every op has
// arity >= 2 and max_depth >= |b|.
std::optional<ReductionWitness> find_reduction(const FiniteSeq& a, const FiniteSeq& b,
                                               const Signature& sig, int max_depth);

// The signature's single binary associative operation, or null. For such
// signatures every orderly term computes a left fold, so finite-reduction
// sets are subsequence folds and support incremental computation.
const OpDef* single_associative_op(const Signature& sig);

// The set of all finite reductions of b: values of orderly terms applied to
// nonempty subsequences of b. Complete when every op has arity >= 2 and
// max_depth >= |b|.
std::set<Nat> fr_enumerate(const FiniteSeq& b, const Signature& sig, int max_depth);

// Decides x in FR(b - tail) for an inflationary signature over a sequence
// strictly increasing from `tail` on: only entries <= x can contribute, so
// the consulted prefix is finite. Complete when all arities are >= 2.
bool fr_member(Nat x, const StreamSeq& b, std::size_t tail, const Signature& sig);

// An infinite witness stream: block i certifies entry i of a reduced
// sequence. Backed by explicit blocks and/or a generating rule.
class WitnessStream {
 public:
  WitnessStream() = default;
  explicit WitnessStream(std::vector<WitnessBlock> blocks) : blocks_(std::move(blocks)) {}
  WitnessStream(std::vector<WitnessBlock> blocks,
                std::function<WitnessBlock(std::size_t)> rule)
      : blocks_(std::move(blocks)), rule_(std::move(rule)) {}

  WitnessBlock block(std::size_t i) const;

  // Stream certifying that dropping `shift` entries is a reduction.
  static WitnessStream shift(std::size_t shift);

 private:
  std::vector<WitnessBlock> blocks_;
  std::function<WitnessBlock(std::size_t)> rule_;
};

// Stage n of a diagonalization: a sequence plus (for n >= 1) the witness
// stream certifying it is a reduction of stage n-1.
struct DiagonalStage {
  StreamSeq seq;
  std::optional<WitnessStream> to_previous;
};

struct DiagonalResult {
  FiniteSeq seq;
  // stage_witnesses[n] certifies <b(n),...,b(L-1)> as a reduction of the
  // stage-min(n, stages-1) sequence prefix.
  std::vector<ReductionWitness> stage_witnesses;
};

// Builds the first `length` entries of a diagonal sequence b: entry n is
// taken from stage min(n, last) past every block consumed by earlier
// entries, greedily choosing the lowest usable entry. Witness streams are
// validated on the consulted prefix; running out of prefix data raises
// NeedPrefixError with the required index.
DiagonalResult diagonalize(std::span<const DiagonalStage> stages, std::size_t length);

}  // namespace ramsey
