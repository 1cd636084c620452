#pragma once

#include <json.hpp>

#include "ramsey/galvin.hpp"
#include "ramsey/ramsey_search.hpp"
#include "ramsey/ultrafilter.hpp"

namespace ramsey {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Operations / signatures.
Json op_to_json(const OpDef& op);
OpDef op_from_json(const Json& j);
Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);
// Accepts a builtin name ("plus", "shifted_mul", "zero", "first",
// "plus_shifted_mul") or a JSON object.
Signature resolve_signature(const std::string& text);
OpDef resolve_op(const std::string& text);

// Orderly terms: ["id"] or [opname, child, ...].
Json term_to_json(const OrderlyTerm& t);
OrderlyTerm term_from_json(const Json& j, const Signature& sig);

// Sequences: plain arrays or {prefix, rule}.
Json seq_to_json(const FiniteSeq& s);
Json stream_to_json(const StreamSeq& s);
StreamSeq stream_from_json(const Json& j);
// Accepts builtin names ("powers2", "naturals", "evens") or JSON.
StreamSeq resolve_stream(const std::string& text);

// Witnesses.
Json witness_to_json(const ReductionWitness& w);
ReductionWitness witness_from_json(const Json& j, const Signature& sig);

// Symbolic sets.
Json symset_to_json(const SymSet& s);
SymSet symset_from_json(const Json& j);
Json setterm_to_json(const SetTerm& t);
SetTerm setterm_from_json(const Json& j, const Signature& sig);

// Colorings: {"kind":"parity"|"mod"|"single"|"table", ...}.
Coloring coloring_from_json(const Json& j, Nat bound);
Coloring resolve_coloring(const std::string& text, Nat bound);

// Ultrafilters.
Json uf_to_json(const Ultrafilter& u);
Ultrafilter uf_from_json(const Json& j);

// Reads inline JSON, a builtin name, or an @file / plain path.
Json load_json_argument(const std::string& text);

// Run manifests: command line, content-hashed inputs, seed, version, digest.
class ManifestBuilder {
 public:
  void set_command(const std::vector<std::string>& argv);
  void set_seed(std::uint64_t seed);
  void add_input(const std::string& name, const std::string& content);
  Json build(const Json& result) const;

 private:
  Json command_ = Json::array();
  std::uint64_t seed_ = 0;
  Json inputs_ = Json::object();
};

std::string hash_hex(const std::string& data);

}  // namespace ramsey
