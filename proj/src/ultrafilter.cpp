#include "ramsey/ultrafilter.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

namespace ramsey {

Ultrafilter Ultrafilter::principal(Nat point) {
  Ultrafilter u;
  u.kind_ = Kind::Principal;
  u.point_ = point;
  return u;
}

Ultrafilter Ultrafilter::cofinite() {
  Ultrafilter u;
  u.kind_ = Kind::Cofinite;
  return u;
}

Ultrafilter Ultrafilter::fr_chain(std::shared_ptr<const FRChainField> field) {
  if (!field) throw InputError("ultrafilter: null chain field");
  Ultrafilter u;
  u.kind_ = Kind::FRChain;
  u.chain_ = std::move(field);
  return u;
}

Nat Ultrafilter::point() const {
  if (kind_ != Kind::Principal) throw InputError("ultrafilter: not principal");
  return point_;
}

const FRChainField& Ultrafilter::chain() const {
  if (kind_ != Kind::FRChain) throw InputError("ultrafilter: not a chain ultrafilter");
  return *chain_;
}

bool Ultrafilter::operator==(const Ultrafilter& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Principal: return point_ == other.point_;
    case Kind::Cofinite: return true;
    case Kind::FRChain:
      return chain_ == other.chain_ ||
             chain_->compatible_with(other.chain_->seq(), other.chain_->sig(), 16);
  }
  return false;
}

std::string Ultrafilter::to_string() const {
  switch (kind_) {
    case Kind::Principal: return "principal(" + std::to_string(point_) + ")";
    case Kind::Cofinite: return "cofinite";
    case Kind::FRChain: return "fr_chain(" + chain_->id() + ")";
  }
  return "?";
}

bool uf_member(const Ultrafilter& u, const SymSet& x) {
  if (x.dim() != 1) throw InputError("uf_member: set must have dimension 1");
  switch (u.kind()) {
    case Ultrafilter::Kind::Principal:
      return x.contains({u.point()});
    case Ultrafilter::Kind::Cofinite:
      return x.is_cofinite();
    case Ultrafilter::Kind::FRChain: {
      // X = support (finite) or ~support (cofinite) as a normal form.
      ChainNormalForm nf;
      nf.complemented = x.is_cofinite();
      for (const auto& t : x.support()) nf.plus_finite.push_back(t[0]);
      return fr_chain_member(u.chain(), nf);
    }
  }
  return false;
}

SymSet section_set(const SymSet& x, const Ultrafilter& u) {
  if (x.dim() < 2) throw InputError("section_set: set must have dimension >= 2");
  std::vector<Tuple> support;
  if (u.is_principal()) {
    const Nat c = u.point();
    for (const auto& t : x.support())
      if (t.back() == c) support.emplace_back(t.begin(), t.end() - 1);
  }
  // Nonprincipal: a finite set has only finite sections (never members), a
  // cofinite set has only cofinite sections (always members); either way the
  // support empties out and the mode carries the answer.
  return SymSet(x.dim() - 1, x.mode(), std::move(support));
}

bool tensor_member(std::span<const Ultrafilter> factors, const SymSet& x) {
  if (factors.empty()) throw InputError("tensor: no factors");
  if (x.dim() != static_cast<int>(factors.size()))
    throw InputError("tensor: set dimension " + std::to_string(x.dim()) + " but " +
                     std::to_string(factors.size()) + " factors");
  SymSet w = x;
  for (std::size_t i = factors.size() - 1; i >= 1; --i) w = section_set(w, factors[i]);
  return uf_member(factors[0], w);
}

bool tensor_member(const TensorProduct& p, const SymSet& x) {
  return tensor_member(std::span<const Ultrafilter>(p.factors), x);
}

SymSet section_set_multi(const SymSet& x, std::span<const Ultrafilter> factors) {
  const int k = static_cast<int>(factors.size());
  if (k < 1) throw InputError("section_set_multi: no factors");
  if (x.dim() <= k) throw InputError("section_set_multi: need dim > factor count");
  const int prefix_len = x.dim() - k;

  // Away from the support prefixes the section is empty (finite mode) or
  // full (cofinite mode), so only prefixes of support tuples can deviate.
  std::set<Tuple> prefixes;
  for (const auto& t : x.support()) prefixes.insert(Tuple(t.begin(), t.begin() + prefix_len));

  const bool default_member = x.is_cofinite();
  std::vector<Tuple> deviating;
  for (const auto& p : prefixes) {
    std::vector<Tuple> suffixes;
    for (const auto& t : x.support())
      if (std::equal(p.begin(), p.end(), t.begin()))
        suffixes.emplace_back(t.begin() + prefix_len, t.end());
    SymSet section(k, x.mode(), std::move(suffixes));
    if (tensor_member(factors, section) != default_member) deviating.push_back(p);
  }
  return SymSet(prefix_len, x.mode(), std::move(deviating));
}

namespace {

bool any_nonprincipal(std::span<const Ultrafilter> factors) {
  return std::any_of(factors.begin(), factors.end(),
                     [](const Ultrafilter& u) { return !u.is_principal(); });
}

// Whether the fiber op^-1[{c}], a finite set, belongs to the tensor of the
// factors. Finite sets survive the section fold only when every factor is
// principal, in which case membership is evaluation at the point tuple.
bool finite_fiber_in_tensor(const OpDef& op, Nat c, std::span<const Ultrafilter> factors) {
  for (const auto& u : factors)
    if (!u.is_principal()) return false;
  std::vector<Nat> pts;
  pts.reserve(factors.size());
  for (const auto& u : factors) pts.push_back(u.point());
  try {
    return op.eval(pts) == c;
  } catch (const OverflowError&) {
    return false;
  }
}

}  // namespace

Ultrafilter pushforward(const OpDef& op, std::span<const Ultrafilter> factors) {
  if (static_cast<int>(factors.size()) != op.arity())
    throw InputError("pushforward: " + std::to_string(factors.size()) + " factors for arity " +
                     std::to_string(op.arity()));
  if (!op.flags().finite_fibers)
    throw InputError("pushforward: operation '" + op.name() + "' lacks finite_fibers");

  // Chain factors: identical copies of one chain ultrafilter under an
  // operation of the chain's own signature reproduce it exactly (strong
  // reducibility makes every member set a pushforward member). Mixtures
  // leave the decidable fragment.
  bool any_chain = std::any_of(factors.begin(), factors.end(), [](const Ultrafilter& u) {
    return u.kind() == Ultrafilter::Kind::FRChain;
  });
  if (any_chain) {
    const Ultrafilter& first = factors.front();
    bool all_same = first.kind() == Ultrafilter::Kind::FRChain &&
                    std::all_of(factors.begin(), factors.end(),
                                [&](const Ultrafilter& u) { return u == first; });
    if (all_same && first.chain().sig().find(op.name()) != nullptr) return first;
    throw UnclassifiableError(
        "pushforward: chain-ultrafilter factors are only classified for identical factors "
        "under the chain's own signature",
        0);
  }

  // Candidate principal values: op over the principal points crossed with a
  // bounded scan on nonprincipal coordinates. No candidate beyond the scan
  // can verify: a fiber is finite, and a finite set never survives the
  // section fold once some factor is nonprincipal.
  std::set<Nat> candidates;
  const int m = op.arity();
  std::vector<Nat> args(m, 0);
  std::vector<int> free_coords;
  for (int i = 0; i < m; ++i) {
    if (factors[i].is_principal()) args[i] = factors[i].point();
    else free_coords.push_back(i);
  }
  std::size_t combos = 1;
  for (std::size_t i = 0; i < free_coords.size() && combos <= 100000; ++i)
    combos *= kPushforwardScanBound + 1;
  if (combos <= 100000) {
    std::vector<Nat> scan(free_coords.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free_coords.size(); ++i) args[free_coords[i]] = scan[i];
      try {
        candidates.insert(op.eval(args));
      } catch (const OverflowError&) {
      }
      std::size_t i = free_coords.size();
      while (i > 0 && ++scan[i - 1] > kPushforwardScanBound) scan[--i] = 0;
      if (i == 0 || free_coords.empty()) break;
    }
  } else if (!any_nonprincipal(factors)) {
    throw UnclassifiableError("pushforward: candidate scan too large", kPushforwardScanBound);
  }

  for (Nat c : candidates)
    if (finite_fiber_in_tensor(op, c, factors)) return Ultrafilter::principal(c);

  if (!any_nonprincipal(factors))
    throw UnclassifiableError(
        "pushforward: all factors principal but no candidate verified", kPushforwardScanBound);
  return Ultrafilter::cofinite();
}

bool is_idempotent(const OpDef& op, const Ultrafilter& u) {
  std::vector<Ultrafilter> factors(op.arity(), u);
  return pushforward(op, factors) == u;
}

AssociativityReport check_associativity(const OpDef& op, std::span<const Ultrafilter> pool,
                                        int jobs) {
  if (!op.flags().associative)
    throw InputError("check_associativity: operation '" + op.name() +
                     "' lacks the associative flag");
  if (!op.flags().finite_fibers)
    throw InputError("check_associativity: operation '" + op.name() +
                     "' lacks finite_fibers");

  AssociativityReport report;
  const std::size_t n = pool.size();
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::string> failures;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Ultrafilter ab = pushforward(op, std::vector<Ultrafilter>{pool[i], pool[j]});
          Ultrafilter bc = pushforward(op, std::vector<Ultrafilter>{pool[j], pool[k]});
          Ultrafilter l = pushforward(op, std::vector<Ultrafilter>{ab, pool[k]});
          Ultrafilter r = pushforward(op, std::vector<Ultrafilter>{pool[i], bc});
          if (!(l == r))
            failures.push_back("(" + pool[i].to_string() + "," + pool[j].to_string() + "," +
                               pool[k].to_string() + "): " + l.to_string() +
                               " != " + r.to_string());
        }
    return failures;
  };

  if (jobs <= 1 || n < 2) {
    auto failures = run_range(0, n);
    report.failures = std::move(failures);
  } else {
    std::vector<std::future<std::vector<std::string>>> futs;
    std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t lo = 0; lo < n; lo += chunk)
      futs.push_back(std::async(std::launch::async, run_range, lo, std::min(lo + chunk, n)));
    for (auto& f : futs) {
      auto fails = f.get();
      report.failures.insert(report.failures.end(), fails.begin(), fails.end());
    }
  }
  report.triples_checked = static_cast<int>(n * n * n);
  report.passed = report.failures.empty();
  return report;
}

OrderlyIdempotenceReport orderly_idempotence_check(const Signature& sig, const Ultrafilter& u,
                                                   int arity_bound,
                                                   const SamplingPlan& plan) {
  OrderlyIdempotenceReport report;
  auto fail = [&](const std::string& msg) {
    report.passed = false;
    if (report.failures.size() < 16) report.failures.push_back(msg);
  };

  for (const auto& op : sig.ops()) {
    if (!op.flags().finite_fibers) {
      fail("precondition: operation '" + op.name() + "' lacks finite_fibers");
      return report;
    }
    if (!is_idempotent(op, u)) {
      fail("precondition: " + u.to_string() + " is not idempotent for '" + op.name() + "'");
      return report;
    }
  }

  std::mt19937_64 rng(plan.seed);
  auto random_symset = [&](int dim) {
    int size = static_cast<int>(rng() % 4);
    std::vector<Tuple> support;
    for (int i = 0; i < size; ++i) {
      Tuple t(dim);
      for (auto& v : t) v = rng() % (plan.tuple_entry_bound + 1);
      support.push_back(std::move(t));
    }
    bool cof = rng() % 2 == 0;
    return SymSet(dim, cof ? SymSet::Mode::Cofinite : SymSet::Mode::Finite,
                  std::move(support));
  };

  for (int arity = 1; arity <= arity_bound; ++arity) {
    for (const auto& term : enumerate_orderly_terms(sig, arity, arity_bound)) {
      ++report.terms_checked;
      OpDef as_op = term_as_opdef(term, sig);
      std::vector<Ultrafilter> copies(arity, u);
      Ultrafilter pushed = pushforward(as_op, copies);
      if (!(pushed == u)) {
        fail("pushforward of " + term.to_string() + " gives " + pushed.to_string() +
             " != " + u.to_string());
        continue;
      }

      // Block-preimage identity: the tensor of the child pushforwards agrees
      // with membership of {xs | (h_1(xs_1),...,h_m(xs_m)) in X} in u^total.
      std::vector<OrderlyTerm> children;
      if (term.is_identity()) children = {term};
      else children = term.children();
      std::vector<OpDef> child_ops;
      std::vector<Ultrafilter> child_pushed;
      int total = 0;
      for (const auto& h : children) {
        child_ops.push_back(term_as_opdef(h, sig));
        std::vector<Ultrafilter> hcopies(h.arity(), u);
        child_pushed.push_back(pushforward(child_ops.back(), hcopies));
        total += h.arity();
      }
      std::vector<Ultrafilter> full(total, u);
      for (int s = 0; s < plan.samples_per_clause; ++s) {
        ++report.identities_checked;
        SymSet x = random_symset(static_cast<int>(children.size()));
        bool lhs = tensor_member(child_pushed, x);
        bool rhs = tensor_member(full, symset_multi_pre(child_ops, x));
        if (lhs != rhs) {
          fail("block-preimage identity fails for " + term.to_string() + " on " +
               x.to_string());
          break;
        }
      }
    }
  }
  return report;
}

Ultrafilter classify_restriction(const Ultrafilter& fine) {
  switch (fine.kind()) {
    case Ultrafilter::Kind::Principal: return fine;
    case Ultrafilter::Kind::Cofinite: return fine;
    case Ultrafilter::Kind::FRChain:
      // Chain members are infinite with infinite complement candidates; the
      // finite/cofinite sets it contains are exactly the cofinite ones.
      return Ultrafilter::cofinite();
  }
  return fine;
}

RestrictionReport check_restriction_with(const ClosureFamily& coarse,
                                         const ClosureFamily& fine,
                                         const Ultrafilter& u_fine,
                                         const Ultrafilter& claimed, const OpDef& op,
                                         const SamplingPlan& plan) {
  (void)coarse;
  (void)fine;
  RestrictionReport report;
  report.restriction = claimed.to_string();
  std::mt19937_64 rng(plan.seed);
  auto random_symset = [&]() {
    int size = static_cast<int>(rng() % 6);
    std::vector<Tuple> support;
    for (int i = 0; i < size; ++i)
      support.push_back({rng() % (plan.tuple_entry_bound + 1)});
    bool cof = rng() % 2 == 0;
    return SymSet(1, cof ? SymSet::Mode::Cofinite : SymSet::Mode::Finite, std::move(support));
  };

  std::vector<Ultrafilter> fine_factors(op.arity(), u_fine);
  std::vector<Ultrafilter> coarse_factors(op.arity(), claimed);
  Ultrafilter coarse_pushed = pushforward(op, coarse_factors);

  for (int s = 0; s < plan.samples_per_clause; ++s) {
    ++report.sets_checked;
    SymSet x = random_symset();
    if (uf_member(u_fine, x) != uf_member(claimed, x)) {
      report.passed = false;
      report.failures.push_back("membership disagrees on " + x.to_string());
      continue;
    }
    bool fine_route = tensor_member(fine_factors, symset_pre(op, 1, x));
    bool coarse_route = uf_member(coarse_pushed, x);
    if (fine_route != coarse_route) {
      report.passed = false;
      report.failures.push_back("pushforward routes disagree on " + x.to_string());
    }
  }
  return report;
}

RestrictionReport check_restriction(const ClosureFamily& coarse, const ClosureFamily& fine,
                                    const Ultrafilter& u_fine, const OpDef& op,
                                    const SamplingPlan& plan) {
  return check_restriction_with(coarse, fine, u_fine, classify_restriction(u_fine), op, plan);
}

}  // namespace ramsey
