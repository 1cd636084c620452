#pragma once

#include <memory>
#include <variant>

#include "ramsey/ultrafilter.hpp"

namespace ramsey {

// A dim-1 set given either exactly (finite/cofinite) or as a chain normal
// form against the ultrafilter's own chain field.
using Dim1Set = std::variant<SymSet, ChainNormalForm>;

struct GalvinOptions {
  Nat element_scan_cap = 1'000'000;
  bool verify = true;    // brute-force FR(a) subset-of X before returning
  int fr_depth = 0;      // 0: use the output length
};

// Builds a homogeneous sequence: length L, strictly increasing for
// nonprincipal u, with every finite reduction under {op} inside X. Requires
// is_idempotent(op, u), membership of X in u, and op binary associative.
// For principal/cofinite u this runs the star-set recursion, with every
// membership question answered by uf_member / section_set on computed
// finite/cofinite sets; for the chain ultrafilter the sequence tail past the
// excluded points realizes the same recursion directly.
FiniteSeq galvin_construct(const Ultrafilter& u, const OpDef& op, const Dim1Set& x,
                           std::size_t length, const GalvinOptions& options = {});

struct StrongReducibilityReport {
  bool homogeneous = false;         // clause 1: FR(a|N) subset of X
  std::size_t prefix_checked = 0;
  std::vector<Tristate> tail_membership;  // clause 2 per i < k
  Tristate overall;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  std::size_t prefix_len = 6;
};

// Checks the two clauses of strong reducibility for the witness sequence:
// (1) the finite reductions of the consulted prefix lie in X, and (2)
// FR(a - i) belongs to u for i < k. Clause 2 is decided exactly for a chain
// ultrafilter over a compatible chain and for principal filters; for the
// cofinite filter it is decided when the sequence's growth rule settles
// whether the tail FR sets are cofinite, and Unknown otherwise.
StrongReducibilityReport verify_strongly_reducible(const Ultrafilter& u, const Signature& sig,
                                                   const Dim1Set& x, const StreamSeq& a,
                                                   int tails,
                                                   const VerifyOptions& options = {});

struct FRFieldReport {
  AdmissibilityReport admissibility;
  bool ultrafilter_axioms = true;
  bool nonprincipal = true;
  int normal_forms_checked = 0;
  // Sampled dim-2 section check: for family members X, the indicator
  // {a | section of X at a is a member of the ultrafilter} should itself be
  // a decidable dim-1 shape. Sections that leave the one-stage fragment
  // (preimage terms over chain generators) are counted as undecided, not as
  // failures; a further stage would adopt them as generators.
  int sections_decided = 0;
  int sections_undecided = 0;
  bool section_check_passed = true;
  std::vector<std::string> failures;
};

struct FRFieldResult {
  std::shared_ptr<const FRChainField> field;
  ClosureFamily family;
  Ultrafilter uf;
  FRFieldReport report;
};

struct BuildOptions {
  SamplingPlan plan;
  int axiom_depth = 1;  // enumerate dim-1 terms to this depth for the axiom check
};

// Builds the bounded-depth field generated by the chain sets G_0..G_depth
// (plus singletons and any extra generators) together with its chain
// ultrafilter, and reports sampled admissibility, ultrafilter axioms over
// the normalizable dim-1 members, and nonprincipality.
FRFieldResult build_fr_field(const StreamSeq& seq, const Signature& sig, int depth,
                             const OracleTable& extra = {}, const BuildOptions& options = {});

}  // namespace ramsey
