#include "ramsey/galvin.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ramsey {

namespace {

bool set_member(const Dim1Set& x, const Ultrafilter& u, Nat v) {
  if (const SymSet* s = std::get_if<SymSet>(&x)) return s->contains({v});
  const ChainNormalForm& nf = std::get<ChainNormalForm>(x);
  return nf_member(u.chain(), nf, v);
}

bool set_in_uf(const Dim1Set& x, const Ultrafilter& u) {
  if (const SymSet* s = std::get_if<SymSet>(&x)) return uf_member(u, *s);
  if (u.kind() != Ultrafilter::Kind::FRChain)
    throw InputError("a chain normal form needs a chain ultrafilter");
  return fr_chain_member(u.chain(), std::get<ChainNormalForm>(x));
}

// Smallest element of S greater than or equal to `from`.
Nat scan_element(const SymSet& s, Nat from, Nat cap) {
  if (s.is_finite()) {
    for (const auto& t : s.support())
      if (t[0] >= from) return t[0];
    throw UnclassifiableError("element scan: finite set exhausted", cap);
  }
  for (Nat v = from; v <= cap; ++v)
    if (s.contains({v})) return v;
  throw UnclassifiableError("element scan: cap reached", cap);
}

FiniteSeq galvin_star_recursion(const Ultrafilter& u, const OpDef& op, const SymSet& x,
                                std::size_t length, const GalvinOptions& options) {
  // Star-set recursion: keep a current member set B; its star is
  // B n section_set(pre(B), u) = {b in B | {y | op(b,y) in B} in u}.
  // Pick an element of the star, intersect with the picked element's
  // pullback of the star, repeat. All finite products of the picks land in
  // the first star set.
  auto star = [&](const SymSet& b) {
    return symset_inter(b, section_set(symset_pre(op, 1, b), u));
  };
  auto pullback = [&](Nat v, const SymSet& b) {
    return symset_fib(v, symset_pre(op, 1, b));
  };

  SymSet b = x;
  FiniteSeq out;
  Nat next_from = 0;
  const bool strict = !u.is_principal();
  for (std::size_t k = 0; k < length; ++k) {
    SymSet s = star(b);
    if (!uf_member(u, s))
      throw InputError("galvin: star set fell out of the ultrafilter; '" + op.name() +
                       "' is not idempotent for " + u.to_string());
    Nat pick = scan_element(s, strict ? next_from : 0, options.element_scan_cap);
    out.push_back(pick);
    next_from = pick + 1;
    b = symset_inter(s, pullback(pick, s));
  }
  return out;
}

FiniteSeq galvin_chain_route(const Ultrafilter& u, const Dim1Set& x, std::size_t length) {
  // A member set contains some G_n; taking entries of the chain sequence
  // from n on keeps every finite reduction inside G_n and hence inside X.
  const FRChainField& field = u.chain();
  int start = 0;
  Nat avoid = 0;
  bool have_avoid = false;
  if (const SymSet* s = std::get_if<SymSet>(&x)) {
    for (const auto& t : s->support()) {
      avoid = std::max(avoid, t[0]);
      have_avoid = true;
    }
  } else {
    const ChainNormalForm nf = canonical_nf(field, std::get<ChainNormalForm>(x));
    if (nf.chain_index) start = *nf.chain_index;
    for (Nat v : nf.minus_finite) {
      avoid = std::max(avoid, v);
      have_avoid = true;
    }
    for (Nat v : nf.plus_finite) {
      // Complemented forms exclude the plus points.
      if (nf.complemented) {
        avoid = std::max(avoid, v);
        have_avoid = true;
      }
    }
  }
  int n0 = have_avoid ? field.chain_index_above(avoid, start) : start;
  FiniteSeq out;
  for (std::size_t i = 0; i < length; ++i)
    out.push_back(field.seq().at(static_cast<std::size_t>(n0) + i));
  return out;
}

}  // namespace

FiniteSeq galvin_construct(const Ultrafilter& u, const OpDef& op, const Dim1Set& x,
                           std::size_t length, const GalvinOptions& options) {
  if (op.arity() != 2) throw InputError("galvin: operation must be binary");
  if (!op.flags().associative)
    throw InputError("galvin: operation '" + op.name() + "' lacks the associative flag");
  if (!is_idempotent(op, u))
    throw InputError("galvin: " + u.to_string() + " is not idempotent for '" + op.name() +
                     "'");
  if (!set_in_uf(x, u)) throw InputError("galvin: the target set is not in the ultrafilter");

  FiniteSeq out;
  if (u.kind() == Ultrafilter::Kind::FRChain) {
    out = galvin_chain_route(u, x, length);
  } else {
    const SymSet* s = std::get_if<SymSet>(&x);
    if (!s) throw InputError("galvin: chain normal forms need a chain ultrafilter");
    out = galvin_star_recursion(u, op, *s, length, options);
  }

  if (options.verify) {
    Signature sig({op});
    int depth = options.fr_depth > 0 ? options.fr_depth : static_cast<int>(length);
    for (Nat v : fr_enumerate(out, sig, depth))
      if (!set_member(x, u, v))
        throw std::logic_error("galvin: verification failed, finite reduction " +
                               std::to_string(v) + " escapes the target set");
  }
  return out;
}

namespace {

// Whether the subset-sum sets FS(seq - i) are cofinite, decided from the
// generating rule. Arithmetic progressions cover every residue class iff
// gcd(start, step) = 1; geometric growth with ratio >= 2 leaves a gap after
// each cumulative sum except in the exact doubling case starting at 1, where
// sums of distinct powers of two reach every positive integer.
Tristate tail_fs_cofinite(const StreamSeq& a, int i) {
  if (!a.rule()) return Tristate::unknown(a.prefix().size());
  SeqRule r = *a.rule();
  if (r.kind == SeqRule::Kind::Powers) r = SeqRule{SeqRule::Kind::Geometric, 1, r.a};
  if (r.kind == SeqRule::Kind::Arithmetic) {
    if (r.b == 0) return Tristate::unknown(0);
    return std::gcd(r.a, r.b) == 1 ? Tristate::yes() : Tristate::no();
  }
  // Geometric, ratio >= 2.
  if (r.b < 2) return Tristate::unknown(0);
  if (r.a == 1 && r.b == 2 && i == 0) return Tristate::yes();
  return Tristate::no();
}

}  // namespace

StrongReducibilityReport verify_strongly_reducible(const Ultrafilter& u, const Signature& sig,
                                                   const Dim1Set& x, const StreamSeq& a,
                                                   int tails, const VerifyOptions& options) {
  StrongReducibilityReport report;
  if (!set_in_uf(x, u))
    throw InputError("verify_strongly_reducible: the target set is not in the ultrafilter");

  // Clause 1: finite reductions of the consulted prefix stay inside X.
  std::size_t n = options.prefix_len;
  FiniteSeq prefix;
  while (n > 0) {
    try {
      prefix = a.take(n);
      break;
    } catch (const NeedPrefixError&) {
      --n;
    } catch (const OverflowError&) {
      --n;
    }
  }
  report.prefix_checked = n;
  report.homogeneous = true;
  for (Nat v : fr_enumerate(prefix, sig, static_cast<int>(n)))
    if (!set_member(x, u, v)) {
      report.homogeneous = false;
      report.notes.push_back("finite reduction " + std::to_string(v) +
                             " escapes the target set");
      break;
    }

  // Clause 2: FR(a - i) in u for i < tails.
  for (int i = 0; i < tails; ++i) {
    switch (u.kind()) {
      case Ultrafilter::Kind::FRChain: {
        if (u.chain().compatible_with(a, sig, n)) {
          report.tail_membership.push_back(Tristate::yes());
        } else {
          report.tail_membership.push_back(Tristate::unknown(n));
          report.notes.push_back("tail " + std::to_string(i) +
                                 ": witness is not the ultrafilter's own chain");
        }
        break;
      }
      case Ultrafilter::Kind::Principal: {
        try {
          bool in = fr_member(u.point(), a, static_cast<std::size_t>(i), sig);
          report.tail_membership.push_back(in ? Tristate::yes() : Tristate::no());
        } catch (const InputError&) {
          report.tail_membership.push_back(Tristate::unknown(n));
          report.notes.push_back("tail " + std::to_string(i) +
                                 ": membership undecidable for this signature");
        }
        break;
      }
      case Ultrafilter::Kind::Cofinite: {
        bool plain_add = sig.ops().size() == 1 && sig.ops()[0].kind() == "add" &&
                         sig.ops()[0].arity() == 2;
        if (!plain_add) {
          report.tail_membership.push_back(Tristate::unknown(n));
          report.notes.push_back("tail " + std::to_string(i) +
                                 ": no cofiniteness rule for this signature");
          break;
        }
        Tristate t = tail_fs_cofinite(a, i);
        report.tail_membership.push_back(t);
        if (t.is_no())
          report.notes.push_back("tail " + std::to_string(i) +
                                 ": FR set has an infinite complement, not cofinite");
        if (t.is_unknown())
          report.notes.push_back("tail " + std::to_string(i) +
                                 ": cofiniteness not decidable from the sequence rule");
        break;
      }
    }
  }

  bool any_no = !report.homogeneous;
  bool any_unknown = false;
  for (const auto& t : report.tail_membership) {
    if (t.is_no()) any_no = true;
    if (t.is_unknown()) any_unknown = true;
  }
  report.overall = any_no       ? Tristate::no()
                   : any_unknown ? Tristate::unknown(n)
                                 : Tristate::yes();
  return report;
}

FRFieldResult build_fr_field(const StreamSeq& seq, const Signature& sig, int depth,
                             const OracleTable& extra, const BuildOptions& options) {
  auto field = std::make_shared<const FRChainField>(seq, sig, depth);
  std::vector<OracleTable> tables{field->generator_table(), extra};
  ClosureFamily family(field->id() + "-field", merge_oracles(tables), sig);
  Ultrafilter uf = Ultrafilter::fr_chain(field);

  FRFieldReport report;
  report.admissibility = check_admissible_sampled(family, options.plan);

  // Ultrafilter axioms over the normalizable dim-1 fragment.
  std::vector<ChainNormalForm> members, nonmembers;
  std::set<std::string> seen;
  int undecided = 0;
  for (const auto& term : family.enumerate(1, options.axiom_depth)) {
    NormalizeResult nr = normalize(term, *field);
    if (!nr.ok()) {
      ++undecided;
      continue;
    }
    if (!seen.insert(nr.nf.to_string()).second) continue;
    ++report.normal_forms_checked;
    bool in = fr_chain_member(*field, nr.nf);
    bool comp_in = fr_chain_member(*field, nf_compl(*field, nr.nf));
    if (in == comp_in) {
      report.ultrafilter_axioms = false;
      report.failures.push_back("totality fails for " + nr.nf.to_string());
    }
    (in ? members : nonmembers).push_back(nr.nf);
  }
  (void)undecided;  // forms outside the fragment are simply not family members
  // Properness and the whole space.
  if (fr_chain_member(*field, ChainNormalForm{})) {
    report.ultrafilter_axioms = false;
    report.failures.push_back("the empty set is a member");
  }
  ChainNormalForm whole;
  whole.complemented = true;
  if (!fr_chain_member(*field, whole)) {
    report.ultrafilter_axioms = false;
    report.failures.push_back("the whole space is not a member");
  }
  // Intersection closure over member pairs.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j) {
      auto inter = nf_inter(*field, members[i], members[j]);
      if (!inter || !fr_chain_member(*field, *inter)) {
        report.ultrafilter_axioms = false;
        report.failures.push_back("intersection closure fails for " +
                                  members[i].to_string() + " and " + members[j].to_string());
      }
    }
  // Nonprincipality: every member denotes an infinite set; witness a few
  // elements by scanning.
  Nat probe_cap;
  try {
    probe_cap = field->seq().at(static_cast<std::size_t>(depth) + 8);
  } catch (const NeedPrefixError&) {
    probe_cap = 2 * field->seq().prefix().back() + 64;
  } catch (const OverflowError&) {
    probe_cap = 1 << 20;
  }
  for (const auto& nf : members) {
    int found = 0;
    for (Nat v = 0; v <= probe_cap && found < 3; ++v)
      if (nf_member(*field, nf, v)) ++found;
    if (found < 3) {
      report.nonprincipal = false;
      report.failures.push_back("member " + nf.to_string() +
                                " has fewer than 3 witnessed elements");
    }
  }

  // Sampled section check on dim-2 members: where every consulted section
  // normalizes, the membership indicator must settle to a constant tail,
  // the decidable dim-1 shape available at this stage.
  std::mt19937_64 rng(options.plan.seed + 1);
  auto dim2 = family.enumerate(2, options.plan.enum_depth);
  std::shuffle(dim2.begin(), dim2.end(), rng);
  const Nat window = 24;
  int budget = std::min<int>(static_cast<int>(dim2.size()), 64);
  for (int s = 0; s < budget; ++s) {
    const SetTerm& x = dim2[s];
    std::vector<int> indicator;
    bool decided = true;
    for (Nat a = 0; a <= window; ++a) {
      Tristate in = fr_chain_member(*field, SetTerm::fib_of(a, x));
      if (in.is_unknown()) {
        decided = false;
        break;
      }
      indicator.push_back(in.is_yes() ? 1 : 0);
    }
    if (!decided) {
      ++report.sections_undecided;
      continue;
    }
    ++report.sections_decided;
    for (Nat a = window - 8; a < window; ++a)
      if (indicator[a] != indicator[window]) {
        report.section_check_passed = false;
        report.failures.push_back("section indicator of " + x.to_string() +
                                  " does not settle within the scanned window");
        break;
      }
  }

  return FRFieldResult{field, std::move(family), std::move(uf), std::move(report)};
}

}  // namespace ramsey
