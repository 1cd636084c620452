#include "ramsey/core_algebra.hpp"

#include <algorithm>
#include <set>

namespace ramsey {

OpDef::OpDef(std::string name, int arity, EvalFn eval, OpFlags flags,
             std::string kind, std::vector<Nat> params)
    : name_(std::move(name)),
      arity_(arity),
      eval_(std::move(eval)),
      flags_(flags),
      kind_(std::move(kind)),
      params_(std::move(params)) {
  if (arity_ < 1) throw InputError("operation '" + name_ + "': arity must be >= 1");
  if (!eval_) throw InputError("operation '" + name_ + "': missing evaluator");
}

Nat OpDef::eval(std::span<const Nat> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw InputError("operation '" + name_ + "': expected " + std::to_string(arity_) +
                     " arguments, got " + std::to_string(args.size()));
  return eval_(args);
}

Nat OpDef::eval2(Nat a, Nat b) const {
  Nat args[2] = {a, b};
  return eval(std::span<const Nat>(args, 2));
}

namespace {

// Sampling boxes shrink with arity to keep validation fast.
Nat validation_box(int arity) {
  switch (arity) {
    case 1: return 512;
    case 2: return 64;
    case 3: return 24;
    default: return 8;
  }
}

template <typename Fn>
void for_each_tuple(Nat box, int arity, Fn&& fn) {
  std::vector<Nat> t(arity, 0);
  while (true) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && t[i] == box) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
}

}  // namespace

Nat OpDef::fiber_bound(Nat c) const {
  if (flags_.inflationary) return c;
  return 2 * validation_box(arity_);
}

std::vector<std::vector<Nat>> OpDef::fiber(Nat c) const {
  if (!flags_.finite_fibers)
    throw InputError("operation '" + name_ + "': fiber requested without finite_fibers flag");
  std::vector<std::vector<Nat>> out;
  for_each_tuple(fiber_bound(c), arity_, [&](const std::vector<Nat>& t) {
    if (eval_(t) == c) out.push_back(t);
  });
  return out;
}

void validate_flags(const OpDef& op) {
  const int m = op.arity();
  const Nat box = validation_box(m);

  if (op.flags().inflationary || op.flags().strictly_increasing_safe) {
    for_each_tuple(box, m, [&](const std::vector<Nat>& t) {
      Nat v = op.eval(t);
      if (op.flags().inflationary) {
        Nat mx = *std::max_element(t.begin(), t.end());
        if (v < mx)
          throw InputError("operation '" + op.name() + "': inflationary flag fails at sample");
      }
      if (op.flags().strictly_increasing_safe) {
        for (int i = 0; i < m; ++i) {
          std::vector<Nat> u = t;
          ++u[i];
          if (op.eval(u) <= v)
            throw InputError("operation '" + op.name() +
                             "': strictly_increasing_safe flag fails at sample");
        }
      }
    });
  }

  if (op.flags().associative) {
    if (m != 2)
      throw InputError("operation '" + op.name() + "': associative flag requires arity 2");
    for (Nat a = 0; a <= 20; ++a)
      for (Nat b = 0; b <= 20; ++b)
        for (Nat c = 0; c <= 20; ++c)
          if (op.eval2(op.eval2(a, b), c) != op.eval2(a, op.eval2(b, c)))
            throw InputError("operation '" + op.name() + "': associative flag fails at sample");
  }

  if (op.flags().finite_fibers) {
    // Fiber counts inside two nested boxes must agree for small targets; a
    // growing count means the fiber keeps accumulating points. Targets stay
    // at half the inner box so an honest fiber fits inside both boxes.
    const Nat cap = std::min<Nat>(32, box / 2);
    std::vector<std::size_t> inner(cap + 1, 0), outer(cap + 1, 0);
    for_each_tuple(box, m, [&](const std::vector<Nat>& t) {
      Nat v = op.eval(t);
      if (v <= cap) ++inner[v];
    });
    for_each_tuple(2 * box, m, [&](const std::vector<Nat>& t) {
      Nat v = op.eval(t);
      if (v <= cap) ++outer[v];
    });
    for (Nat c = 0; c <= cap; ++c)
      if (inner[c] != outer[c])
        throw InputError("operation '" + op.name() +
                         "': finite_fibers flag fails, fiber of " + std::to_string(c) +
                         " still grows at bound " + std::to_string(2 * box));
  }
}

OpDef make_plus(int arity) {
  OpFlags f{.finite_fibers = true,
            .inflationary = true,
            .strictly_increasing_safe = true,
            .associative = arity == 2};
  OpDef op("plus", arity,
           [](std::span<const Nat> xs) {
             Nat s = 0;
             for (Nat x : xs) s = checked_add(s, x);
             return s;
           },
           f, "add", {static_cast<Nat>(arity)});
  validate_flags(op);
  return op;
}

OpDef make_shifted_mul() {
  OpFlags f{.finite_fibers = true,
            .inflationary = true,
            .strictly_increasing_safe = true,
            .associative = true};
  OpDef op("shifted_mul", 2,
           [](std::span<const Nat> xs) {
             return checked_add(checked_add(xs[0], xs[1]), checked_mul(xs[0], xs[1]));
           },
           f, "shifted_mul", {});
  validate_flags(op);
  return op;
}

OpDef make_zero(int arity) {
  OpFlags f{.associative = arity == 2};
  OpDef op("zero", arity, [](std::span<const Nat>) { return Nat{0}; }, f, "zero",
           {static_cast<Nat>(arity)});
  validate_flags(op);
  return op;
}

OpDef make_first(int arity) {
  OpFlags f{.associative = arity == 2};
  OpDef op("first", arity, [](std::span<const Nat> xs) { return xs[0]; }, f, "first",
           {static_cast<Nat>(arity)});
  validate_flags(op);
  return op;
}

OpDef make_table(std::string name, int arity, Nat box, std::vector<Nat> values,
                 const OpDef& fallback, OpFlags flags) {
  if (fallback.arity() != arity)
    throw InputError("table operation '" + name + "': fallback arity mismatch");
  Nat expected = 1;
  for (int i = 0; i < arity; ++i) expected = checked_mul(expected, box + 1);
  if (values.size() != expected)
    throw InputError("table operation '" + name + "': expected " + std::to_string(expected) +
                     " table entries, got " + std::to_string(values.size()));
  auto fb = fallback;
  auto eval = [box, arity, values, fb](std::span<const Nat> xs) {
    std::size_t idx = 0;
    for (int i = 0; i < arity; ++i) {
      if (xs[i] > box) return fb.eval(xs);
      idx = idx * (box + 1) + xs[i];
    }
    return values[idx];
  };
  std::vector<Nat> params;
  params.push_back(box);
  OpDef op(std::move(name), arity, eval, flags, "table", params);
  validate_flags(op);
  return op;
}

Signature::Signature(std::vector<OpDef> ops) : ops_(std::move(ops)) {
  std::set<std::string> names;
  for (const auto& op : ops_)
    if (!names.insert(op.name()).second)
      throw InputError("signature: duplicate operation name '" + op.name() + "'");
}

const OpDef& Signature::at(const std::string& name) const {
  if (const OpDef* op = find(name)) return *op;
  throw InputError("signature: unknown operation '" + name + "'");
}

const OpDef* Signature::find(const std::string& name) const {
  for (const auto& op : ops_)
    if (op.name() == name) return &op;
  return nullptr;
}

bool Signature::all_arities_at_least(int k) const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [k](const OpDef& op) { return op.arity() >= k; });
}

bool Signature::all_inflationary() const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](const OpDef& op) { return op.flags().inflationary; });
}

bool Signature::all_finite_fibers() const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](const OpDef& op) { return op.flags().finite_fibers; });
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& op : ops_) m = std::max(m, op.arity());
  return m;
}

OrderlyTerm OrderlyTerm::identity() { return OrderlyTerm{}; }

OrderlyTerm OrderlyTerm::apply(OpDef op, std::vector<OrderlyTerm> children) {
  if (static_cast<int>(children.size()) != op.arity())
    throw InputError("orderly term: operation '" + op.name() + "' expects " +
                     std::to_string(op.arity()) + " children, got " +
                     std::to_string(children.size()));
  int arity = 0;
  int depth = 0;
  for (const auto& c : children) {
    arity += c.arity();
    depth = std::max(depth, c.depth());
  }
  OrderlyTerm t;
  t.node_ = std::make_shared<const Node>(
      Node{std::move(op), std::move(children), arity, depth + 1});
  return t;
}

const OpDef& OrderlyTerm::op() const {
  if (!node_) throw InputError("orderly term: identity has no operation");
  return node_->op;
}

const std::vector<OrderlyTerm>& OrderlyTerm::children() const {
  if (!node_) throw InputError("orderly term: identity has no children");
  return node_->children;
}

int OrderlyTerm::arity() const { return node_ ? node_->arity : 1; }
int OrderlyTerm::depth() const { return node_ ? node_->depth : 1; }

bool OrderlyTerm::operator==(const OrderlyTerm& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->op.name() != other.node_->op.name()) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == other.node_->children[i])) return false;
  return true;
}

std::string OrderlyTerm::to_string() const {
  if (is_identity()) return "x";
  std::string s = node_->op.name() + "(";
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (i) s += ",";
    s += node_->children[i].to_string();
  }
  return s + ")";
}

int term_arity(const OrderlyTerm& t) { return t.arity(); }

Nat term_eval(const OrderlyTerm& t, std::span<const Nat> args) {
  if (static_cast<int>(args.size()) != t.arity())
    throw InputError("term_eval: arity " + std::to_string(t.arity()) + " but " +
                     std::to_string(args.size()) + " arguments");
  if (t.is_identity()) return args[0];
  std::vector<Nat> vals;
  vals.reserve(t.children().size());
  std::size_t pos = 0;
  for (const auto& c : t.children()) {
    vals.push_back(term_eval(c, args.subspan(pos, c.arity())));
    pos += c.arity();
  }
  return t.op().eval(vals);
}

OrderlyTerm substitute_leaves(const OrderlyTerm& t, std::span<const OrderlyTerm> subs) {
  if (static_cast<int>(subs.size()) != t.arity())
    throw InputError("substitute_leaves: arity mismatch");
  if (t.is_identity()) return subs[0];
  std::vector<OrderlyTerm> children;
  children.reserve(t.children().size());
  std::size_t pos = 0;
  for (const auto& c : t.children()) {
    children.push_back(substitute_leaves(c, subs.subspan(pos, c.arity())));
    pos += c.arity();
  }
  return OrderlyTerm::apply(t.op(), std::move(children));
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (total >= 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int k = 1; k + (parts - 1) <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

void enumerate_into(const Signature& sig, int arity, int max_depth,
                    std::map<std::pair<int, int>, std::vector<OrderlyTerm>>& memo);

const std::vector<OrderlyTerm>& enum_memoized(
    const Signature& sig, int arity, int max_depth,
    std::map<std::pair<int, int>, std::vector<OrderlyTerm>>& memo) {
  auto key = std::make_pair(arity, max_depth);
  if (!memo.count(key)) enumerate_into(sig, arity, max_depth, memo);
  return memo.at(key);
}

void enumerate_into(const Signature& sig, int arity, int max_depth,
                    std::map<std::pair<int, int>, std::vector<OrderlyTerm>>& memo) {
  std::vector<OrderlyTerm> out;
  if (max_depth >= 1 && arity == 1) out.push_back(OrderlyTerm::identity());
  if (max_depth >= 2) {
    for (const auto& op : sig.ops()) {
      int n = op.arity();
      if (n > arity) continue;
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(arity, n, cur, comps);
      for (const auto& comp : comps) {
        // Cartesian product of child enumerations for this arity split.
        std::vector<const std::vector<OrderlyTerm>*> pools;
        bool empty = false;
        for (int k : comp) {
          const auto& pool = enum_memoized(sig, k, max_depth - 1, memo);
          if (pool.empty()) {
            empty = true;
            break;
          }
          pools.push_back(&pool);
        }
        if (empty) continue;
        std::vector<std::size_t> idx(pools.size(), 0);
        while (true) {
          std::vector<OrderlyTerm> children;
          children.reserve(pools.size());
          for (std::size_t i = 0; i < pools.size(); ++i)
            children.push_back((*pools[i])[idx[i]]);
          out.push_back(OrderlyTerm::apply(op, std::move(children)));
          std::size_t i = pools.size();
          while (i > 0 && ++idx[i - 1] == pools[i - 1]->size()) idx[--i] = 0;
          if (i == 0) break;
        }
      }
    }
  }
  memo[{arity, max_depth}] = std::move(out);
}

}  // namespace

std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig, int arity,
                                                 int max_depth) {
  if (arity < 1) throw InputError("enumerate_orderly_terms: arity must be >= 1");
  if (max_depth < 1) throw InputError("enumerate_orderly_terms: max_depth must be >= 1");
  std::map<std::pair<int, int>, std::vector<OrderlyTerm>> memo;
  return enum_memoized(sig, arity, max_depth, memo);
}

const std::vector<OrderlyTerm>& TermEnumerator::terms(int arity, int max_depth) {
  auto key = std::make_pair(arity, max_depth);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  memo_[key] = enumerate_orderly_terms(*sig_, arity, max_depth);
  return memo_.at(key);
}

OpDef term_as_opdef(const OrderlyTerm& t, const Signature& sig) {
  OpFlags flags;
  flags.finite_fibers = sig.all_finite_fibers();
  flags.inflationary = sig.all_inflationary();
  // Associativity and monotonicity are not inherited by composition in
  // general; leave them undeclared.
  OrderlyTerm copy = t;
  OpDef op("term:" + t.to_string(), t.arity(),
           [copy](std::span<const Nat> xs) { return term_eval(copy, xs); }, flags);
  validate_flags(op);
  return op;
}

}  // namespace ramsey
