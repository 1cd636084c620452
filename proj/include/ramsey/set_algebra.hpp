#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramsey/core_algebra.hpp"

namespace ramsey {

using Tuple = std::vector<Nat>;

// A finite or cofinite subset of omega^n in canonical form: the support is
// lexicographically sorted and duplicate-free, a Finite set equals its
// support, a Cofinite set is the complement of its support. Canonical form
// makes structural equality extensional.
class SymSet {
 public:
  enum class Mode { Finite, Cofinite };

  SymSet(int dim, Mode mode, std::vector<Tuple> support);

  static SymSet empty(int dim) { return SymSet(dim, Mode::Finite, {}); }
  static SymSet full(int dim) { return SymSet(dim, Mode::Cofinite, {}); }
  static SymSet finite(int dim, std::vector<Tuple> support);
  static SymSet cofinite(int dim, std::vector<Tuple> support);
  static SymSet singleton(Tuple t);

  int dim() const { return dim_; }
  Mode mode() const { return mode_; }
  bool is_finite() const { return mode_ == Mode::Finite; }
  bool is_cofinite() const { return mode_ == Mode::Cofinite; }
  const std::vector<Tuple>& support() const { return support_; }

  bool contains(const Tuple& t) const;

  bool operator==(const SymSet&) const = default;
  std::string to_string() const;

 private:
  int dim_;
  Mode mode_;
  std::vector<Tuple> support_;
};

SymSet symset_union(const SymSet& x, const SymSet& y);
SymSet symset_inter(const SymSet& x, const SymSet& y);
SymSet symset_compl(const SymSet& x);
// Dispatcher matching the wire names "union" | "inter" | "compl".
SymSet symset_bool(const std::string& kind, const SymSet& x, const SymSet* y);

// Rotates every tuple left by one coordinate; dim >= 2.
SymSet symset_cyc(const SymSet& x);

// First-coordinate section at c: {(a1..an-1) | (c,a1..an-1) in X}; dim >= 2.
SymSet symset_fib(Nat c, const SymSet& x);

// Generalized preimage at position pos (1-based): maps dim n to n+m-1 where
// m = op.arity(), substituting op's value for coordinate pos. Requires the
// finite_fibers flag so supports stay finite.
SymSet symset_pre(const OpDef& op, int pos, const SymSet& x);

// {(xs1..xsm) | (h1(xs1),...,hm(xsm)) in X} for X of dim m; resulting dim is
// the total arity of the hs. All hs need finite fibers.
SymSet symset_multi_pre(std::span<const OpDef> hs, const SymSet& x);

bool symset_member(const Tuple& t, const SymSet& x);

// A named membership oracle over omega^dim, used as a generator of a set
// field. The hint records what is known about the set's shape.
struct GeneratorOracle {
  struct Hint {
    enum class Kind { Finite, Cofinite, Chain, Unknown };
    Kind kind = Kind::Unknown;
    Nat bound = 0;        // for Finite/Cofinite: support bound
    std::string family;   // for Chain
    int index = 0;        // for Chain
  };

  std::string id;
  int dim = 1;
  std::function<bool(const Tuple&)> member;
  Hint hint;
};

class OracleTable {
 public:
  void add(GeneratorOracle oracle);
  const GeneratorOracle& at(const std::string& id) const;
  const GeneratorOracle* find(const std::string& id) const;
  std::vector<std::string> ids() const;  // insertion order
  std::size_t size() const { return order_.size(); }

 private:
  std::map<std::string, GeneratorOracle> oracles_;
  std::vector<std::string> order_;
};

OracleTable merge_oracles(std::span<const OracleTable> tables);

// A symbolic set over literals and generator oracles, closed under the field
// operations plus cyc / fib / pre. Dimensions are checked at construction.
// Equality is structural; semantic questions route through term_member.
class SetTerm {
 public:
  enum class Kind { Lit, Gen, Union, Inter, Compl, Cyc, Fib, Pre };

  static SetTerm lit(SymSet s);
  static SetTerm gen(std::string id, int dim);
  static SetTerm union_of(SetTerm l, SetTerm r);
  static SetTerm inter_of(SetTerm l, SetTerm r);
  static SetTerm compl_of(SetTerm t);
  static SetTerm cyc_of(SetTerm t);
  static SetTerm fib_of(Nat c, SetTerm t);
  static SetTerm pre_of(OpDef op, int pos, SetTerm t);

  Kind kind() const;
  int dim() const;
  int depth() const;  // leaves have depth 0

  const SymSet& lit_set() const;
  const std::string& gen_id() const;
  const SetTerm& left() const;   // Union/Inter
  const SetTerm& right() const;  // Union/Inter
  const SetTerm& child() const;  // Compl/Cyc/Fib/Pre
  Nat fib_const() const;
  const OpDef& pre_op() const;
  int pre_pos() const;

  bool operator==(const SetTerm& other) const;
  std::string to_string() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

// Structural-recursion membership: literals and generators answer directly,
// cyc/fib rewrite the tuple, pre evaluates the operation on the argument
// block, boolean nodes combine.
bool term_member(const Tuple& t, const SetTerm& term, const OracleTable& oracles);

// Evaluates a term with only Lit leaves to a canonical SymSet; nullopt when a
// generator leaf blocks exact evaluation.
std::optional<SymSet> eval_to_symset(const SetTerm& term);

struct ClosureOptions {
  bool use_union = true;
  bool use_inter = true;
  bool use_compl = true;
  bool use_cyc = true;
  bool use_fib = true;
  bool use_pre = true;
  Nat singleton_entry_bound = 2;     // singleton literals over [0,bound]^dim
  std::vector<Nat> fib_constants = {0, 1, 2};
  int max_dim = 3;                   // intermediate dimension cap
};

// The bounded-depth fragment of the field generated by a table of oracles
// (plus singleton literals, injected for every dimension). Enumeration order
// is deterministic; terms are deduplicated structurally.
class ClosureFamily {
 public:
  ClosureFamily(std::string id, OracleTable generators, Signature sig,
                ClosureOptions options = {});

  const std::string& id() const { return id_; }
  const OracleTable& generators() const { return generators_; }
  const Signature& signature() const { return sig_; }
  const ClosureOptions& options() const { return options_; }

  // All terms of the given dimension with depth <= depth.
  std::vector<SetTerm> enumerate(int dim, int depth) const;

  bool member(const Tuple& t, const SetTerm& term) const;

  // Closure constructors; nullopt when the family's language excludes the
  // constructor (used by negative controls in the admissibility check).
  std::optional<SetTerm> apply_cyc(const SetTerm& t) const;
  std::optional<SetTerm> apply_fib(Nat c, const SetTerm& t) const;
  std::optional<SetTerm> apply_pre(const OpDef& op, int pos, const SetTerm& t) const;

 private:
  std::string id_;
  OracleTable generators_;
  Signature sig_;
  ClosureOptions options_;
};

// All set terms over the generators (plus singleton literals) with term
// depth <= depth and dimension in dims.
std::vector<SetTerm> closure_enumerate(const OracleTable& generators, const Signature& sig,
                                       int depth, const std::vector<int>& dims,
                                       const ClosureOptions& options = {});

// Merged family over the union of the generator tables (signatures must
// agree on operation names).
ClosureFamily family_union(std::span<const ClosureFamily> families);

struct SamplingPlan {
  Nat tuple_entry_bound = 16;
  int samples_per_clause = 512;
  std::uint64_t seed = 0;
  int enum_depth = 1;
  std::vector<int> dims = {2, 3};
};

struct AdmissibilityReport {
  bool passed = true;
  int checks_run = 0;
  std::vector<std::string> counterexamples;
};

// Sampled admissibility check: for sampled family members X of dim n >= 2,
// verifies that the rotation of X and the first-coordinate sections of X are
// in the family and that their membership matches the defining rewrites;
// also checks iterated sections against direct multi-coordinate sections.
AdmissibilityReport check_admissible_sampled(const ClosureFamily& family,
                                             const SamplingPlan& plan);

}  // namespace ramsey
