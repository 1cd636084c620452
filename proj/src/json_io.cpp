#include "ramsey/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ramsey {

namespace {

std::vector<std::string> flags_to_list(const OpFlags& f) {
  std::vector<std::string> out;
  if (f.finite_fibers) out.push_back("finite_fibers");
  if (f.inflationary) out.push_back("inflationary");
  if (f.strictly_increasing_safe) out.push_back("strictly_increasing_safe");
  if (f.associative) out.push_back("associative");
  return out;
}

OpFlags flags_from_list(const Json& j) {
  OpFlags f;
  for (const auto& s : j) {
    std::string name = s.get<std::string>();
    if (name == "finite_fibers") f.finite_fibers = true;
    else if (name == "inflationary") f.inflationary = true;
    else if (name == "strictly_increasing_safe") f.strictly_increasing_safe = true;
    else if (name == "associative") f.associative = true;
    else throw InputError("unknown flag '" + name + "'");
  }
  return f;
}

}  // namespace

Json op_to_json(const OpDef& op) {
  Json j;
  j["name"] = op.name();
  j["arity"] = op.arity();
  j["kind"] = op.kind();
  j["params"] = op.params();
  j["flags"] = flags_to_list(op.flags());
  return j;
}

OpDef op_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int arity = j.value("arity", 2);
  if (kind == "add") return make_plus(arity);
  if (kind == "shifted_mul") return make_shifted_mul();
  if (kind == "zero") return make_zero(arity);
  if (kind == "first") return make_first(arity);
  if (kind == "table") {
    Nat box = j.at("box").get<Nat>();
    std::vector<Nat> values = j.at("values").get<std::vector<Nat>>();
    OpDef fallback = op_from_json(j.at("fallback"));
    OpFlags flags = flags_from_list(j.value("flags", Json::array()));
    std::string name = j.value("name", std::string("table"));
    return make_table(name, arity, box, std::move(values), fallback, flags);
  }
  throw InputError("operation kind '" + kind + "' is not constructible from JSON");
}

Json signature_to_json(const Signature& sig) {
  Json ops = Json::array();
  for (const auto& op : sig.ops()) ops.push_back(op_to_json(op));
  return Json{{"ops", ops}};
}

Signature signature_from_json(const Json& j) {
  std::vector<OpDef> ops;
  for (const auto& jop : j.at("ops")) ops.push_back(op_from_json(jop));
  return Signature(std::move(ops));
}

OpDef resolve_op(const std::string& text) {
  if (text == "plus") return make_plus();
  if (text == "shifted_mul") return make_shifted_mul();
  if (text == "zero") return make_zero();
  if (text == "first") return make_first();
  return op_from_json(load_json_argument(text));
}

Signature resolve_signature(const std::string& text) {
  if (text == "plus") return Signature({make_plus()});
  if (text == "shifted_mul") return Signature({make_shifted_mul()});
  if (text == "zero") return Signature({make_zero()});
  if (text == "first") return Signature({make_first()});
  if (text == "plus_shifted_mul") return Signature({make_plus(), make_shifted_mul()});
  Json j = load_json_argument(text);
  return signature_from_json(j);
}

Json term_to_json(const OrderlyTerm& t) {
  Json j = Json::array();
  if (t.is_identity()) {
    j.push_back("id");
    return j;
  }
  j.push_back(t.op().name());
  for (const auto& c : t.children()) j.push_back(term_to_json(c));
  return j;
}

OrderlyTerm term_from_json(const Json& j, const Signature& sig) {
  if (!j.is_array() || j.empty()) throw InputError("term: expected a nonempty array");
  std::string head = j.at(0).get<std::string>();
  if (head == "id") {
    if (j.size() != 1) throw InputError("term: identity takes no children");
    return OrderlyTerm::identity();
  }
  const OpDef& op = sig.at(head);
  std::vector<OrderlyTerm> children;
  for (std::size_t i = 1; i < j.size(); ++i) children.push_back(term_from_json(j[i], sig));
  return OrderlyTerm::apply(op, std::move(children));
}

Json seq_to_json(const FiniteSeq& s) { return Json(s); }

Json stream_to_json(const StreamSeq& s) {
  Json j;
  j["prefix"] = s.prefix();
  if (s.rule()) {
    Json r;
    switch (s.rule()->kind) {
      case SeqRule::Kind::Arithmetic:
        r["kind"] = "arithmetic";
        r["params"] = Json{{"start", s.rule()->a}, {"step", s.rule()->b}};
        break;
      case SeqRule::Kind::Geometric:
        r["kind"] = "geometric";
        r["params"] = Json{{"start", s.rule()->a}, {"ratio", s.rule()->b}};
        break;
      case SeqRule::Kind::Powers:
        r["kind"] = "powers";
        r["params"] = Json{{"base", s.rule()->a}};
        break;
    }
    j["rule"] = r;
  }
  return j;
}

StreamSeq stream_from_json(const Json& j) {
  if (j.is_array()) return StreamSeq(j.get<FiniteSeq>());
  FiniteSeq prefix = j.value("prefix", FiniteSeq{});
  if (!j.contains("rule")) return StreamSeq(std::move(prefix));
  const Json& r = j.at("rule");
  std::string kind = r.at("kind").get<std::string>();
  const Json params = r.value("params", Json::object());
  if (kind == "arithmetic")
    return StreamSeq(std::move(prefix),
                     SeqRule{SeqRule::Kind::Arithmetic, params.at("start").get<Nat>(),
                             params.at("step").get<Nat>()});
  if (kind == "geometric")
    return StreamSeq(std::move(prefix),
                     SeqRule{SeqRule::Kind::Geometric, params.at("start").get<Nat>(),
                             params.at("ratio").get<Nat>()});
  if (kind == "powers")
    return StreamSeq(std::move(prefix),
                     SeqRule{SeqRule::Kind::Powers, params.at("base").get<Nat>(), 0});
  if (kind == "table") return StreamSeq(std::move(prefix));
  throw InputError("sequence rule kind '" + kind + "' unknown");
}

StreamSeq resolve_stream(const std::string& text) {
  if (text == "powers2") return make_powers(2);
  if (text == "powers3") return make_powers(3);
  if (text == "naturals") return make_arithmetic(1, 1);
  if (text == "evens") return make_arithmetic(2, 2);
  return stream_from_json(load_json_argument(text));
}

Json witness_to_json(const ReductionWitness& w) {
  Json blocks = Json::array();
  for (const auto& b : w.blocks)
    blocks.push_back(Json{{"indices", b.indices}, {"term", term_to_json(b.term)}});
  return Json{{"blocks", blocks}};
}

ReductionWitness witness_from_json(const Json& j, const Signature& sig) {
  ReductionWitness w;
  for (const auto& jb : j.at("blocks")) {
    WitnessBlock b;
    b.indices = jb.at("indices").get<std::vector<std::size_t>>();
    b.term = term_from_json(jb.at("term"), sig);
    w.blocks.push_back(std::move(b));
  }
  return w;
}

Json symset_to_json(const SymSet& s) {
  return Json{{"dim", s.dim()},
              {"mode", s.is_finite() ? "finite" : "cofinite"},
              {"support", s.support()}};
}

SymSet symset_from_json(const Json& j) {
  int dim = j.at("dim").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  std::vector<Tuple> support = j.value("support", std::vector<Tuple>{});
  if (mode == "finite") return SymSet::finite(dim, std::move(support));
  if (mode == "cofinite") return SymSet::cofinite(dim, std::move(support));
  throw InputError("symset mode '" + mode + "' unknown");
}

Json setterm_to_json(const SetTerm& t) {
  switch (t.kind()) {
    case SetTerm::Kind::Lit: return Json{{"t", "lit"}, {"set", symset_to_json(t.lit_set())}};
    case SetTerm::Kind::Gen: return Json{{"t", "gen"}, {"id", t.gen_id()}, {"dim", t.dim()}};
    case SetTerm::Kind::Union:
      return Json{{"t", "union"}, {"l", setterm_to_json(t.left())},
                  {"r", setterm_to_json(t.right())}};
    case SetTerm::Kind::Inter:
      return Json{{"t", "inter"}, {"l", setterm_to_json(t.left())},
                  {"r", setterm_to_json(t.right())}};
    case SetTerm::Kind::Compl:
      return Json{{"t", "compl"}, {"a", setterm_to_json(t.child())}};
    case SetTerm::Kind::Cyc: return Json{{"t", "cyc"}, {"a", setterm_to_json(t.child())}};
    case SetTerm::Kind::Fib:
      return Json{{"t", "fib"}, {"c", t.fib_const()}, {"a", setterm_to_json(t.child())}};
    case SetTerm::Kind::Pre:
      return Json{{"t", "pre"}, {"op", t.pre_op().name()}, {"pos", t.pre_pos()},
                  {"a", setterm_to_json(t.child())}};
  }
  throw InputError("setterm: bad node");
}

SetTerm setterm_from_json(const Json& j, const Signature& sig) {
  std::string t = j.at("t").get<std::string>();
  if (t == "lit") return SetTerm::lit(symset_from_json(j.at("set")));
  if (t == "gen") return SetTerm::gen(j.at("id").get<std::string>(), j.at("dim").get<int>());
  if (t == "union")
    return SetTerm::union_of(setterm_from_json(j.at("l"), sig),
                             setterm_from_json(j.at("r"), sig));
  if (t == "inter")
    return SetTerm::inter_of(setterm_from_json(j.at("l"), sig),
                             setterm_from_json(j.at("r"), sig));
  if (t == "compl") return SetTerm::compl_of(setterm_from_json(j.at("a"), sig));
  if (t == "cyc") return SetTerm::cyc_of(setterm_from_json(j.at("a"), sig));
  if (t == "fib")
    return SetTerm::fib_of(j.at("c").get<Nat>(), setterm_from_json(j.at("a"), sig));
  if (t == "pre") {
    SetTerm child = setterm_from_json(j.at("a"), sig);
    return SetTerm::pre_of(sig.at(j.at("op").get<std::string>()), j.at("pos").get<int>(),
                           std::move(child));
  }
  throw InputError("setterm tag '" + t + "' unknown");
}

Coloring coloring_from_json(const Json& j, Nat bound) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "parity") return make_parity_coloring(bound);
  if (kind == "mod") return make_mod_coloring(bound, j.at("m").get<int>());
  if (kind == "single") return make_single_coloring(bound);
  if (kind == "table") {
    auto c = make_table_coloring(j.at("values").get<std::vector<int>>());
    if (c.domain_bound < bound)
      throw InputError("coloring table does not cover the value bound");
    return c;
  }
  throw InputError("coloring kind '" + kind + "' unknown");
}

Coloring resolve_coloring(const std::string& text, Nat bound) {
  if (text == "parity") return make_parity_coloring(bound);
  if (text == "mod3") return make_mod_coloring(bound, 3);
  if (text == "single") return make_single_coloring(bound);
  return coloring_from_json(load_json_argument(text), bound);
}

Json uf_to_json(const Ultrafilter& u) {
  switch (u.kind()) {
    case Ultrafilter::Kind::Principal:
      return Json{{"kind", "principal"}, {"point", u.point()}};
    case Ultrafilter::Kind::Cofinite: return Json{{"kind", "cofinite"}};
    case Ultrafilter::Kind::FRChain:
      return Json{{"kind", "fr_chain"},
                  {"seq", stream_to_json(u.chain().seq())},
                  {"sig", signature_to_json(u.chain().sig())},
                  {"depth", u.chain().depth()}};
  }
  throw InputError("ultrafilter: bad kind");
}

Ultrafilter uf_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "principal") return Ultrafilter::principal(j.at("point").get<Nat>());
  if (kind == "cofinite") return Ultrafilter::cofinite();
  if (kind == "fr_chain") {
    StreamSeq seq = stream_from_json(j.at("seq"));
    Signature sig = j.at("sig").is_string()
                        ? resolve_signature(j.at("sig").get<std::string>())
                        : signature_from_json(j.at("sig"));
    int depth = j.value("depth", 3);
    return Ultrafilter::fr_chain(std::make_shared<const FRChainField>(seq, sig, depth));
  }
  throw InputError("ultrafilter kind '" + kind + "' unknown");
}

Json load_json_argument(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body[0] == '@') body = body.substr(1);
  // Inline JSON first, then a file path.
  if (!body.empty() && (body[0] == '{' || body[0] == '[' || body[0] == '"' ||
                        (body[0] >= '0' && body[0] <= '9'))) {
    return Json::parse(body);
  }
  std::ifstream in(body);
  if (!in) throw InputError("cannot open input '" + body + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return Json::parse(ss.str());
}

void ManifestBuilder::set_command(const std::vector<std::string>& argv) {
  command_ = Json(argv);
}

void ManifestBuilder::set_seed(std::uint64_t seed) { seed_ = seed; }

void ManifestBuilder::add_input(const std::string& name, const std::string& content) {
  inputs_[name] = Json{{"hash", hash_hex(content)}, {"bytes", content.size()}};
}

Json ManifestBuilder::build(const Json& result) const {
  return Json{{"command", command_},
              {"inputs", inputs_},
              {"seed", seed_},
              {"version", kLibraryVersion},
              {"results_digest", hash_hex(result.dump())}};
}

std::string hash_hex(const std::string& data) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv64:%016llx",
                static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

}  // namespace ramsey
