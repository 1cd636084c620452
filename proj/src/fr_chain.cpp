#include "ramsey/fr_chain.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ramsey {

FRChainField::FRChainField(StreamSeq seq, Signature sig, int depth, std::string id)
    : seq_(std::move(seq)), sig_(std::move(sig)), depth_(depth), id_(std::move(id)) {
  if (depth_ < 0) throw InputError("fr chain: negative depth");
  if (!sig_.all_inflationary())
    throw InputError("fr chain: signature must be inflationary for decidable membership");
  if (!sig_.all_arities_at_least(2))
    throw InputError("fr chain: signature arities must be >= 2");
  // Strictly increasing and positive, checked on the consulted prefix.
  Nat prev = 0;
  for (std::size_t i = 0; i < std::max<std::size_t>(seq_.prefix().size(), 4); ++i) {
    Nat v;
    try {
      v = seq_.at(i);
    } catch (const NeedPrefixError&) {
      if (i == 0) throw;
      break;
    } catch (const OverflowError&) {
      break;
    }
    if (v == 0) throw InputError("fr chain: sequence entries must be positive");
    if (i > 0 && v <= prev)
      throw InputError("fr chain: sequence not strictly increasing at index " +
                       std::to_string(i));
    prev = v;
  }
}

bool FRChainField::chain_member(Nat x, int i) const {
  if (i < 0) throw InputError("fr chain: negative index");
  return fr_member(x, seq_, static_cast<std::size_t>(i), sig_);
}

int FRChainField::chain_index_above(Nat v, int from) const {
  for (int n = std::max(from, 0);; ++n) {
    try {
      if (seq_.at(n) > v) return n;
    } catch (const OverflowError&) {
      return n;  // entries here exceed the representable range, hence v
    }
  }
}

std::string FRChainField::generator_id(int i) const {
  return id_ + ":G" + std::to_string(i);
}

GeneratorOracle FRChainField::generator(int i) const {
  StreamSeq seq = seq_;
  Signature sig = sig_;
  GeneratorOracle oracle;
  oracle.id = generator_id(i);
  oracle.dim = 1;
  oracle.member = [seq, sig, i](const Tuple& t) {
    return fr_member(t.at(0), seq, static_cast<std::size_t>(i), sig);
  };
  oracle.hint = GeneratorOracle::Hint{GeneratorOracle::Hint::Kind::Chain, 0, id_, i};
  return oracle;
}

OracleTable FRChainField::generator_table() const {
  OracleTable table;
  for (int i = 0; i <= depth_; ++i) table.add(generator(i));
  return table;
}

bool FRChainField::compatible_with(const StreamSeq& other, const Signature& other_sig,
                                   std::size_t prefix_len) const {
  if (sig_.ops().size() != other_sig.ops().size()) return false;
  for (const auto& op : sig_.ops())
    if (!other_sig.find(op.name())) return false;
  for (std::size_t i = 0; i < prefix_len; ++i) {
    try {
      if (seq_.at(i) != other.at(i)) return false;
    } catch (const NeedPrefixError&) {
      break;  // agree on everything both sides can produce
    } catch (const OverflowError&) {
      break;
    }
  }
  return true;
}

std::string ChainNormalForm::to_string() const {
  std::ostringstream os;
  if (complemented) os << "~";
  os << "(";
  os << (chain_index ? "G" + std::to_string(*chain_index) : "0");
  if (!plus_finite.empty()) {
    os << " + {";
    for (std::size_t i = 0; i < plus_finite.size(); ++i)
      os << (i ? "," : "") << plus_finite[i];
    os << "}";
  }
  if (!minus_finite.empty()) {
    os << " - {";
    for (std::size_t i = 0; i < minus_finite.size(); ++i)
      os << (i ? "," : "") << minus_finite[i];
    os << "}";
  }
  os << ")";
  return os.str();
}

ChainNormalForm canonical_nf(const FRChainField& field, ChainNormalForm nf) {
  std::sort(nf.plus_finite.begin(), nf.plus_finite.end());
  nf.plus_finite.erase(std::unique(nf.plus_finite.begin(), nf.plus_finite.end()),
                       nf.plus_finite.end());
  std::sort(nf.minus_finite.begin(), nf.minus_finite.end());
  nf.minus_finite.erase(std::unique(nf.minus_finite.begin(), nf.minus_finite.end()),
                        nf.minus_finite.end());
  std::vector<Nat> plus, minus;
  if (nf.chain_index) {
    for (Nat x : nf.plus_finite) {
      if (std::binary_search(nf.minus_finite.begin(), nf.minus_finite.end(), x)) continue;
      if (!field.chain_member(x, *nf.chain_index)) plus.push_back(x);
    }
    for (Nat x : nf.minus_finite) {
      if (field.chain_member(x, *nf.chain_index)) minus.push_back(x);
    }
  } else {
    for (Nat x : nf.plus_finite)
      if (!std::binary_search(nf.minus_finite.begin(), nf.minus_finite.end(), x))
        plus.push_back(x);
  }
  nf.plus_finite = std::move(plus);
  nf.minus_finite = std::move(minus);
  return nf;
}

bool nf_member(const FRChainField& field, const ChainNormalForm& nf, Nat x) {
  bool base = false;
  if (nf.chain_index && field.chain_member(x, *nf.chain_index)) base = true;
  if (std::binary_search(nf.plus_finite.begin(), nf.plus_finite.end(), x)) base = true;
  if (std::binary_search(nf.minus_finite.begin(), nf.minus_finite.end(), x)) base = false;
  return nf.complemented ? !base : base;
}

namespace {

// Abstract value tracked by the normalizer: pointwise-exact tail behaviour
// plus finitely many exceptional points.
struct Abs {
  enum class Tail { Empty, Full, Chain, CoChain };
  Tail tail = Tail::Empty;
  int index = 0;
  std::map<Nat, bool> exceptions;  // only where the value differs from tail
};

struct AbsResult {
  bool ok = false;
  Abs abs;
  std::string reason;
};

bool tail_member(const FRChainField& field, const Abs& a, Nat x) {
  switch (a.tail) {
    case Abs::Tail::Empty: return false;
    case Abs::Tail::Full: return true;
    case Abs::Tail::Chain: return field.chain_member(x, a.index);
    case Abs::Tail::CoChain: return !field.chain_member(x, a.index);
  }
  return false;
}

bool abs_member(const FRChainField& field, const Abs& a, Nat x) {
  auto it = a.exceptions.find(x);
  if (it != a.exceptions.end()) return it->second;
  return tail_member(field, a, x);
}

// Tail combination is pointwise exact because the chain decreases:
// G_j is contained in G_i whenever j >= i.
std::optional<Abs::Tail> combine_tail(Abs::Tail a, int ai, Abs::Tail b, int bi,
                                      bool is_union, int& out_index) {
  using T = Abs::Tail;
  auto chain = [&](int i) {
    out_index = i;
    return T::Chain;
  };
  auto cochain = [&](int i) {
    out_index = i;
    return T::CoChain;
  };
  if (is_union) {
    if (a == T::Full || b == T::Full) return T::Full;
    if (a == T::Empty) { out_index = bi; return b; }
    if (b == T::Empty) { out_index = ai; return a; }
    if (a == T::Chain && b == T::Chain) return chain(std::min(ai, bi));
    if (a == T::CoChain && b == T::CoChain) return cochain(std::max(ai, bi));
    // Chain u CoChain: full when the co-chain index dominates, otherwise the
    // complement is the ring G_co \ G_chain, not decidable from prefixes.
    int ci = (a == T::Chain) ? ai : bi;
    int oi = (a == T::Chain) ? bi : ai;
    if (oi >= ci) return T::Full;
    return std::nullopt;
  }
  if (a == T::Empty || b == T::Empty) return T::Empty;
  if (a == T::Full) { out_index = bi; return b; }
  if (b == T::Full) { out_index = ai; return a; }
  if (a == T::Chain && b == T::Chain) return chain(std::max(ai, bi));
  if (a == T::CoChain && b == T::CoChain) return cochain(std::min(ai, bi));
  // Chain n CoChain = G_chain \ G_co: empty when co <= chain, else a ring.
  int ci = (a == T::Chain) ? ai : bi;
  int oi = (a == T::Chain) ? bi : ai;
  if (oi <= ci) return T::Empty;
  return std::nullopt;
}

Abs abs_from_symset(const SymSet& s) {
  Abs a;
  a.tail = s.is_finite() ? Abs::Tail::Empty : Abs::Tail::Full;
  for (const auto& t : s.support()) a.exceptions[t.at(0)] = s.is_finite();
  return a;
}

AbsResult combine(const FRChainField& field, const AbsResult& l, const AbsResult& r,
                  bool is_union) {
  if (!l.ok) return l;
  if (!r.ok) return r;
  int idx = 0;
  auto tail = combine_tail(l.abs.tail, l.abs.index, r.abs.tail, r.abs.index, is_union, idx);
  if (!tail)
    return {false, {}, std::string(is_union ? "union" : "intersection") +
                           " leaves the chain fragment (ring set G_i \\ G_j)"};
  Abs out;
  out.tail = *tail;
  out.index = idx;
  for (const auto& [x, v] : l.abs.exceptions) {
    (void)v;
    bool val = is_union ? (abs_member(field, l.abs, x) || abs_member(field, r.abs, x))
                        : (abs_member(field, l.abs, x) && abs_member(field, r.abs, x));
    if (val != tail_member(field, out, x)) out.exceptions[x] = val;
  }
  for (const auto& [x, v] : r.abs.exceptions) {
    (void)v;
    if (out.exceptions.count(x)) continue;
    bool val = is_union ? (abs_member(field, l.abs, x) || abs_member(field, r.abs, x))
                        : (abs_member(field, l.abs, x) && abs_member(field, r.abs, x));
    if (val != tail_member(field, out, x)) out.exceptions[x] = val;
  }
  return {true, std::move(out), ""};
}

AbsResult to_abs(const SetTerm& term, const FRChainField& field) {
  if (term.dim() != 1) throw InputError("normalize: set term must have dimension 1");
  switch (term.kind()) {
    case SetTerm::Kind::Lit:
      return {true, abs_from_symset(term.lit_set()), ""};
    case SetTerm::Kind::Gen: {
      const std::string& id = term.gen_id();
      const std::string prefix = field.id() + ":G";
      if (id.rfind(prefix, 0) != 0)
        throw InputError("normalize: foreign generator '" + id + "'");
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(id.substr(prefix.size()), &used);
        if (used != id.size() - prefix.size() || i < 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw InputError("normalize: malformed chain generator id '" + id + "'");
      }
      Abs a;
      a.tail = Abs::Tail::Chain;
      a.index = i;
      return {true, a, ""};
    }
    case SetTerm::Kind::Union:
      return combine(field, to_abs(term.left(), field), to_abs(term.right(), field), true);
    case SetTerm::Kind::Inter:
      return combine(field, to_abs(term.left(), field), to_abs(term.right(), field), false);
    case SetTerm::Kind::Compl: {
      AbsResult c = to_abs(term.child(), field);
      if (!c.ok) return c;
      switch (c.abs.tail) {
        case Abs::Tail::Empty: c.abs.tail = Abs::Tail::Full; break;
        case Abs::Tail::Full: c.abs.tail = Abs::Tail::Empty; break;
        case Abs::Tail::Chain: c.abs.tail = Abs::Tail::CoChain; break;
        case Abs::Tail::CoChain: c.abs.tail = Abs::Tail::Chain; break;
      }
      for (auto& [x, v] : c.abs.exceptions) v = !v;
      return c;
    }
    default: {
      // fib/pre applications of pure literals still evaluate exactly.
      if (auto s = eval_to_symset(term)) return {true, abs_from_symset(*s), ""};
      return {false, {}, "subterm '" + term.to_string() + "' escapes the decidable fragment"};
    }
  }
}

ChainNormalForm abs_to_nf(const FRChainField& field, const Abs& a) {
  ChainNormalForm nf;
  switch (a.tail) {
    case Abs::Tail::Empty:
      nf.complemented = false;
      break;
    case Abs::Tail::Full:
      nf.complemented = true;
      break;
    case Abs::Tail::Chain:
      nf.chain_index = a.index;
      nf.complemented = false;
      break;
    case Abs::Tail::CoChain:
      nf.chain_index = a.index;
      nf.complemented = true;
      break;
  }
  for (const auto& [x, v] : a.exceptions) {
    // Exceptions flip the tail's verdict at x; route them through plus/minus
    // so nf_member reproduces the abstract semantics.
    if (!nf.complemented) {
      if (v) nf.plus_finite.push_back(x);
      else nf.minus_finite.push_back(x);
    } else {
      if (v) nf.minus_finite.push_back(x);
      else nf.plus_finite.push_back(x);
    }
  }
  return canonical_nf(field, nf);
}

}  // namespace

NormalizeResult normalize(const SetTerm& term, const FRChainField& field) {
  AbsResult r = to_abs(term, field);
  if (!r.ok) return NormalizeResult{NormalizeResult::Status::Unknown, {}, r.reason};
  return NormalizeResult{NormalizeResult::Status::Ok, abs_to_nf(field, r.abs), ""};
}

bool fr_chain_member(const FRChainField& field, const ChainNormalForm& raw) {
  ChainNormalForm nf = canonical_nf(field, raw);
  // A chain component not complemented: some G_n with n past both the chain
  // index and the finitely many removed points is contained in the set.
  // Complemented chain: every G_n meets G_max(n,i) minus finitely many
  // points, so no G_n fits inside. Finite: FR sets are infinite. Cofinite:
  // pick n with seq(n) beyond the excluded points.
  if (!nf.complemented) return nf.chain_index.has_value();
  return !nf.chain_index.has_value();
}

Tristate fr_chain_member(const FRChainField& field, const SetTerm& term) {
  NormalizeResult r = normalize(term, field);
  if (!r.ok()) return Tristate::unknown(0);
  return fr_chain_member(field, r.nf) ? Tristate::yes() : Tristate::no();
}

namespace {

Abs abs_of_nf(const ChainNormalForm& nf) {
  Abs a;
  if (!nf.complemented) {
    a.tail = nf.chain_index ? Abs::Tail::Chain : Abs::Tail::Empty;
    if (nf.chain_index) a.index = *nf.chain_index;
    for (Nat x : nf.plus_finite) a.exceptions[x] = true;
    for (Nat x : nf.minus_finite) a.exceptions[x] = false;
  } else {
    a.tail = nf.chain_index ? Abs::Tail::CoChain : Abs::Tail::Full;
    if (nf.chain_index) a.index = *nf.chain_index;
    for (Nat x : nf.plus_finite) a.exceptions[x] = false;
    for (Nat x : nf.minus_finite) a.exceptions[x] = true;
  }
  return a;
}

}  // namespace

namespace {

Abs abs_flip(Abs a) {
  switch (a.tail) {
    case Abs::Tail::Empty: a.tail = Abs::Tail::Full; break;
    case Abs::Tail::Full: a.tail = Abs::Tail::Empty; break;
    case Abs::Tail::Chain: a.tail = Abs::Tail::CoChain; break;
    case Abs::Tail::CoChain: a.tail = Abs::Tail::Chain; break;
  }
  for (auto& [x, v] : a.exceptions) v = !v;
  return a;
}

}  // namespace

Tristate nf_subset(const FRChainField& field, const ChainNormalForm& a,
                   const ChainNormalForm& b) {
  // a subset of b iff a n b^c is empty.
  AbsResult left{true, abs_of_nf(canonical_nf(field, a)), ""};
  AbsResult right{true, abs_flip(abs_of_nf(canonical_nf(field, b))), ""};
  AbsResult diff = combine(field, left, right, false);
  if (!diff.ok) return Tristate::unknown(0);
  if (diff.abs.tail != Abs::Tail::Empty) return Tristate::no();
  for (const auto& [x, v] : diff.abs.exceptions)
    if (v) return Tristate::no();
  return Tristate::yes();
}

std::optional<ChainNormalForm> nf_inter(const FRChainField& field, const ChainNormalForm& a,
                                        const ChainNormalForm& b) {
  AbsResult l{true, abs_of_nf(canonical_nf(field, a)), ""};
  AbsResult r{true, abs_of_nf(canonical_nf(field, b)), ""};
  AbsResult out = combine(field, l, r, false);
  if (!out.ok) return std::nullopt;
  return abs_to_nf(field, out.abs);
}

std::optional<ChainNormalForm> nf_union(const FRChainField& field, const ChainNormalForm& a,
                                        const ChainNormalForm& b) {
  AbsResult l{true, abs_of_nf(canonical_nf(field, a)), ""};
  AbsResult r{true, abs_of_nf(canonical_nf(field, b)), ""};
  AbsResult out = combine(field, l, r, true);
  if (!out.ok) return std::nullopt;
  return abs_to_nf(field, out.abs);
}

ChainNormalForm nf_compl(const FRChainField& field, const ChainNormalForm& a) {
  return abs_to_nf(field, abs_flip(abs_of_nf(canonical_nf(field, a))));
}

}  // namespace ramsey
