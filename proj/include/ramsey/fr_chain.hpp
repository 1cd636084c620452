#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/reduction.hpp"
#include "ramsey/set_algebra.hpp"

namespace ramsey {

// The decreasing chain of finite-reduction sets G_i = FR(seq - i) of a
// strictly increasing positive sequence under an inflationary signature.
// Membership in each G_i is decidable from prefix data, which makes the
// generated field's dim-1 fragment decidable through normal forms below.
class FRChainField {
 public:
  FRChainField(StreamSeq seq, Signature sig, int depth, std::string id = "frchain");

  const StreamSeq& seq() const { return seq_; }
  const Signature& sig() const { return sig_; }
  int depth() const { return depth_; }
  const std::string& id() const { return id_; }

  // x in G_i = FR(seq - i).
  bool chain_member(Nat x, int i) const;

  Nat min_entry(int i) const { return seq_.at(i); }

  // Smallest n >= from with seq(n) > v; every G_n value then exceeds v.
  int chain_index_above(Nat v, int from) const;

  std::string generator_id(int i) const;
  GeneratorOracle generator(int i) const;
  OracleTable generator_table() const;  // G_0 .. G_depth

  // Same sequence on the compared prefix and same operation names.
  bool compatible_with(const StreamSeq& other, const Signature& other_sig,
                       std::size_t prefix_len) const;

 private:
  StreamSeq seq_;
  Signature sig_;
  int depth_;
  std::string id_;
};

// Normal form for dim-1 sets over one chain: denotes (G_i u plus) \ minus,
// complemented when the flag is set; a missing chain index means the purely
// finite (or, complemented, cofinite) case. Canonical: minus inside G_i,
// plus outside G_i, plus and minus disjoint, both sorted.
struct ChainNormalForm {
  std::optional<int> chain_index;
  std::vector<Nat> plus_finite;
  std::vector<Nat> minus_finite;
  bool complemented = false;

  bool operator==(const ChainNormalForm&) const = default;
  std::string to_string() const;
};

ChainNormalForm canonical_nf(const FRChainField& field, ChainNormalForm nf);

// Pointwise membership of x in the set denoted by the normal form.
bool nf_member(const FRChainField& field, const ChainNormalForm& nf, Nat x);

// Subset test on normal forms; Unknown when the difference is a ring set.
Tristate nf_subset(const FRChainField& field, const ChainNormalForm& a,
                   const ChainNormalForm& b);

// Boolean combinations on normal forms; nullopt when the result leaves the
// fragment (ring sets).
std::optional<ChainNormalForm> nf_inter(const FRChainField& field, const ChainNormalForm& a,
                                        const ChainNormalForm& b);
std::optional<ChainNormalForm> nf_union(const FRChainField& field, const ChainNormalForm& a,
                                        const ChainNormalForm& b);
ChainNormalForm nf_compl(const FRChainField& field, const ChainNormalForm& a);

struct NormalizeResult {
  enum class Status { Ok, Unknown };
  Status status = Status::Unknown;
  ChainNormalForm nf;
  std::string reason;  // for Unknown: which subterm escaped the fragment

  bool ok() const { return status == Status::Ok; }
};

// Rewrites a dim-1 set term over the chain's generators and finite/cofinite
// literals into ChainNormalForm, using the chain containments G_i n G_j =
// G_max and G_i u G_j = G_min plus De Morgan. Differences G_i \ G_j with
// i < j denote ring sets whose membership in the chain ultrafilter is not
// decidable from prefixes; those come back Unknown rather than guessed.
// Foreign generators are an InputError.
NormalizeResult normalize(const SetTerm& term, const FRChainField& field);

// Decides membership of the denoted set in the ultrafilter
// {X | FR(seq - n) subset of X for some n}: true exactly when the normal
// form has a chain component (not complemented) or is cofinite, since the
// finitely many excluded points are outrun by the growing chain.
bool fr_chain_member(const FRChainField& field, const ChainNormalForm& nf);

// Three-valued convenience wrapper: normalize then decide.
Tristate fr_chain_member(const FRChainField& field, const SetTerm& term);

}  // namespace ramsey
