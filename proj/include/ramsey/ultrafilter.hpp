#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ramsey/fr_chain.hpp"
#include "ramsey/set_algebra.hpp"

namespace ramsey {

// An ultrafilter on the dim-1 finite/cofinite field, represented by its
// classification: generated by a point, the cofinite filter, or the chain
// ultrafilter {X | FR(seq - n) subset of X for some n} of an FR-chain field.
// On the finite/cofinite field the first two classes are exhaustive, which
// makes equality decidable.
class Ultrafilter {
 public:
  enum class Kind { Principal, Cofinite, FRChain };

  static Ultrafilter principal(Nat point);
  static Ultrafilter cofinite();
  static Ultrafilter fr_chain(std::shared_ptr<const FRChainField> field);

  Kind kind() const { return kind_; }
  Nat point() const;
  const FRChainField& chain() const;
  std::shared_ptr<const FRChainField> chain_ptr() const { return chain_; }
  bool is_principal() const { return kind_ == Kind::Principal; }

  bool operator==(const Ultrafilter& other) const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Cofinite;
  Nat point_ = 0;
  std::shared_ptr<const FRChainField> chain_;
};

// Membership of a dim-1 finite/cofinite set. The chain ultrafilter contains
// no finite set and every cofinite set (the chain outruns any finite
// exclusion), so on this field it agrees with the cofinite filter.
bool uf_member(const Ultrafilter& u, const SymSet& x);

// {a-bar | {a_n | (a-bar, a_n) in X} in U}, peeling the last coordinate.
SymSet section_set(const SymSet& x, const Ultrafilter& u);

// One-shot version: peels the last k coordinates against a k-factor tensor.
SymSet section_set_multi(const SymSet& x, std::span<const Ultrafilter> factors);

struct TensorProduct {
  std::vector<Ultrafilter> factors;  // nonempty; acts on sets of dim = size
};

// Folds section_set from the last factor down to dimension 1, then asks the
// first factor.
bool tensor_member(const TensorProduct& p, const SymSet& x);
bool tensor_member(std::span<const Ultrafilter> factors, const SymSet& x);

// The image ultrafilter {X | op^-1[X] in U_1 x ... x U_m}, classified on the
// finite/cofinite field. All-principal factors give the principal filter at
// the evaluated point; any nonprincipal factor rules out every finite set
// (fibers are finite), leaving the cofinite filter. Identical chain factors
// under an operation of their own signature reproduce the chain ultrafilter
// (strong reducibility); other chain mixtures are rejected.
Ultrafilter pushforward(const OpDef& op, std::span<const Ultrafilter> factors);

// Candidate scan bound used when verifying there is no principal value.
inline constexpr Nat kPushforwardScanBound = 256;

bool is_idempotent(const OpDef& op, const Ultrafilter& u);

struct AssociativityReport {
  bool passed = true;
  int triples_checked = 0;
  std::vector<std::string> failures;
};

// Verifies op_*(op_*(U,V),W) == op_*(U,op_*(V,W)) over every triple from the
// pool. Requires the associative and finite_fibers flags.
AssociativityReport check_associativity(const OpDef& op, std::span<const Ultrafilter> pool,
                                        int jobs = 1);

struct OrderlyIdempotenceReport {
  bool passed = true;
  int terms_checked = 0;
  int identities_checked = 0;
  std::vector<std::string> failures;
};

// For every orderly term of arity <= arity_bound: the pushforward of the
// term over copies of u equals u, and on sampled sets the tensor of the
// child pushforwards agrees with membership of the block preimage in the
// full power u^(total arity).
OrderlyIdempotenceReport orderly_idempotence_check(const Signature& sig, const Ultrafilter& u,
                                                   int arity_bound, const SamplingPlan& plan);

// Restriction of an ultrafilter on a finer field to the finite/cofinite
// family: principal stays principal, anything containing no finite set
// restricts to the cofinite filter.
Ultrafilter classify_restriction(const Ultrafilter& fine);

struct RestrictionReport {
  bool passed = true;
  int sets_checked = 0;
  std::vector<std::string> failures;
  std::string restriction;
};

// Checks on sampled shared (finite/cofinite) sets that membership and the
// pushforward by op computed against the fine ultrafilter agree with the
// classification computed in the coarse family.
RestrictionReport check_restriction(const ClosureFamily& coarse, const ClosureFamily& fine,
                                    const Ultrafilter& u_fine, const OpDef& op,
                                    const SamplingPlan& plan);

// Same, against a caller-supplied claimed restriction (negative controls).
RestrictionReport check_restriction_with(const ClosureFamily& coarse,
                                         const ClosureFamily& fine,
                                         const Ultrafilter& u_fine,
                                         const Ultrafilter& claimed, const OpDef& op,
                                         const SamplingPlan& plan);

}  // namespace ramsey
