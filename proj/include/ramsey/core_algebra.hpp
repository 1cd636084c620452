#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramsey/common.hpp"

namespace ramsey {

// Declared behavioural properties of an operation. Each declared flag is
// checked by sampled validation at construction time; true validation is
// undecidable, sampling catches configuration errors.
struct OpFlags {
  bool finite_fibers = false;             // f^-1[{c}] finite for every c
  bool inflationary = false;              // f(xs) >= max(xs)
  bool strictly_increasing_safe = false;  // strictly increasing in each argument
  bool associative = false;               // binary ops only

  bool operator==(const OpFlags&) const = default;
};

// A total operation on the naturals, arity >= 1. `kind`/`params` identify the
// builtin recipe so signatures round-trip through JSON.
class OpDef {
 public:
  using EvalFn = std::function<Nat(std::span<const Nat>)>;

  OpDef(std::string name, int arity, EvalFn eval, OpFlags flags,
        std::string kind = "custom", std::vector<Nat> params = {});

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const OpFlags& flags() const { return flags_; }
  const std::string& kind() const { return kind_; }
  const std::vector<Nat>& params() const { return params_; }

  Nat eval(std::span<const Nat> args) const;
  Nat eval2(Nat a, Nat b) const;

  // Box edge used when scanning for the fiber f^-1[{c}]. For inflationary
  // ops the fiber lives in [0,c]^arity exactly; otherwise the sampled
  // validation bound is used.
  Nat fiber_bound(Nat c) const;

  // All argument tuples with f(tuple) == c, scanned up to fiber_bound(c).
  std::vector<std::vector<Nat>> fiber(Nat c) const;

 private:
  std::string name_;
  int arity_;
  EvalFn eval_;
  OpFlags flags_;
  std::string kind_;
  std::vector<Nat> params_;
};

// Sampled validation of declared flags; throws InputError on a counterexample.
void validate_flags(const OpDef& op);

// Builtin operations.
OpDef make_plus(int arity = 2);         // x1 + ... + xn
OpDef make_shifted_mul();               // (a,b) -> a + b + ab
OpDef make_zero(int arity = 2);         // constant 0
OpDef make_first(int arity = 2);        // first coordinate
// Lookup table on [0,box]^arity, falling back to `fallback` outside the box.
OpDef make_table(std::string name, int arity, Nat box, std::vector<Nat> values,
                 const OpDef& fallback, OpFlags flags);

// A finite sequence of named operations; names pairwise distinct.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpDef> ops);

  const std::vector<OpDef>& ops() const { return ops_; }
  const OpDef& at(const std::string& name) const;
  const OpDef* find(const std::string& name) const;
  bool all_arities_at_least(int k) const;
  bool all_inflationary() const;
  bool all_finite_fibers() const;
  int max_arity() const;

 private:
  std::vector<OpDef> ops_;
};

// An orderly term: a tree whose internal nodes are signature operations and
// whose leaves are the identity. A node's arity is the sum of its children's
// arities; argument blocks are consecutive and disjoint.
class OrderlyTerm {
 public:
  static OrderlyTerm identity();
  static OrderlyTerm apply(OpDef op, std::vector<OrderlyTerm> children);

  bool is_identity() const { return node_ == nullptr; }
  const OpDef& op() const;
  const std::vector<OrderlyTerm>& children() const;

  int arity() const;
  int depth() const;  // identity has depth 1

  bool operator==(const OrderlyTerm& other) const;
  bool operator!=(const OrderlyTerm& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  struct Node {
    OpDef op;
    std::vector<OrderlyTerm> children;
    int arity;
    int depth;
  };
  std::shared_ptr<const Node> node_;  // null = identity
};

int term_arity(const OrderlyTerm& t);

// Evaluates t on args (length must equal term_arity(t)). Identity returns its
// argument; an application splits args into consecutive blocks matching the
// child arities, evaluates left to right, then applies the operation.
Nat term_eval(const OrderlyTerm& t, std::span<const Nat> args);

// Replaces the i-th leaf (counted left to right) with subs[i].
// subs.size() must equal term_arity(t).
OrderlyTerm substitute_leaves(const OrderlyTerm& t, std::span<const OrderlyTerm> subs);

// All distinct orderly terms over sig with the given arity and depth <=
// max_depth, in a deterministic order. Complete for the arity whenever every
// op has arity >= 2 and max_depth >= arity; with unary ops present the depth
// bound genuinely truncates.
std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig, int arity,
                                                 int max_depth);

// Memoizing enumerator for repeated queries against one signature.
class TermEnumerator {
 public:
  explicit TermEnumerator(const Signature& sig) : sig_(&sig) {}
  const std::vector<OrderlyTerm>& terms(int arity, int max_depth);

 private:
  const Signature* sig_;
  std::map<std::pair<int, int>, std::vector<OrderlyTerm>> memo_;
};

// Wraps an orderly term as an operation usable wherever an OpDef is, with
// flags inherited from the signature and re-validated by sampling.
OpDef term_as_opdef(const OrderlyTerm& t, const Signature& sig);

}  // namespace ramsey
