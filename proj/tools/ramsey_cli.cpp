// Command-line front end: JSON in, JSON out, reproducible run manifests.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ramsey/json_io.hpp"

namespace {

using namespace ramsey;

struct GlobalOpts {
  bool pretty = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string manifest_out;
};

void emit(const Json& envelope, const GlobalOpts& g) {
  if (g.pretty) std::cout << envelope.dump(2) << "\n";
  else std::cout << envelope.dump() << "\n";
}

int finish(const std::string& status, Json result, const GlobalOpts& g,
           ManifestBuilder& manifest) {
  Json envelope;
  envelope["schema_version"] = kSchemaVersion;
  envelope["status"] = status;
  envelope["result"] = result;
  Json m = manifest.build(result);
  envelope["manifest"] = m;
  emit(envelope, g);
  if (!g.manifest_out.empty()) {
    std::ofstream out(g.manifest_out);
    out << m.dump(2) << "\n";
  }
  if (status == "ok") return 0;
  if (status == "error") return 2;
  return 1;
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("RAMSEY_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

// "0..9" or "1,4,7" into a cofinite avoid-set over omega.
SymSet parse_avoid(const std::string& text) {
  std::vector<Tuple> support;
  auto add_range = [&](const std::string& part) {
    auto dots = part.find("..");
    if (dots != std::string::npos) {
      Nat lo = std::stoull(part.substr(0, dots));
      Nat hi = std::stoull(part.substr(dots + 2));
      for (Nat v = lo; v <= hi; ++v) support.push_back({v});
    } else {
      support.push_back({std::stoull(part)});
    }
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    add_range(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return SymSet::cofinite(1, std::move(support));
}

Ultrafilter resolve_uf(const std::string& text, const std::string& seq_text,
                       const std::string& sig_text, int chain_depth) {
  if (text == "cofinite") return Ultrafilter::cofinite();
  if (text.rfind("principal:", 0) == 0)
    return Ultrafilter::principal(std::stoull(text.substr(10)));
  if (text == "frchain" || text == "fr_chain") {
    StreamSeq seq = resolve_stream(seq_text);
    Signature sig = resolve_signature(sig_text);
    return Ultrafilter::fr_chain(
        std::make_shared<const FRChainField>(seq, sig, chain_depth));
  }
  return uf_from_json(load_json_argument(text));
}

Json tristate_to_json(const Tristate& t) {
  if (t.is_yes()) return Json("yes");
  if (t.is_no()) return Json("no");
  return Json{{"unknown", true}, {"bound", t.bound}};
}

struct UfEvalTrace {
  std::vector<std::string> steps;
  void note(const std::string& s) { steps.push_back(s); }
};

Json eval_uf_expr(const Json& expr, UfEvalTrace& trace, int jobs);

Ultrafilter eval_uf_node(const Json& expr, UfEvalTrace& trace) {
  if (expr.contains("eval")) {
    std::string e = expr.at("eval").get<std::string>();
    if (e == "pushforward") {
      OpDef op = expr.at("op").is_string() ? resolve_op(expr.at("op").get<std::string>())
                                           : op_from_json(expr.at("op"));
      std::vector<Ultrafilter> factors;
      for (const auto& f : expr.at("factors")) factors.push_back(eval_uf_node(f, trace));
      Ultrafilter out = pushforward(op, factors);
      trace.note("pushforward " + op.name() + " -> " + out.to_string());
      return out;
    }
    throw InputError("uf eval: node '" + e + "' does not denote an ultrafilter");
  }
  return uf_from_json(expr);
}

Json eval_uf_expr(const Json& expr, UfEvalTrace& trace, int jobs) {
  std::string e = expr.value("eval", "value");
  if (e == "member") {
    Ultrafilter u = eval_uf_node(expr.at("uf"), trace);
    SymSet x = symset_from_json(expr.at("set"));
    bool in = uf_member(u, x);
    trace.note(u.to_string() + " member " + x.to_string() + " = " + (in ? "true" : "false"));
    return Json{{"member", in}};
  }
  if (e == "tensor_member") {
    std::vector<Ultrafilter> factors;
    for (const auto& f : expr.at("factors")) factors.push_back(eval_uf_node(f, trace));
    SymSet x = symset_from_json(expr.at("set"));
    SymSet w = x;
    for (std::size_t i = factors.size() - 1; i >= 1; --i) {
      w = section_set(w, factors[i]);
      trace.note("section with " + factors[i].to_string() + " -> " + w.to_string());
    }
    bool in = tensor_member(factors, x);
    return Json{{"member", in}};
  }
  if (e == "section") {
    Ultrafilter u = eval_uf_node(expr.at("uf"), trace);
    SymSet x = symset_from_json(expr.at("set"));
    SymSet w = section_set(x, u);
    return Json{{"section", symset_to_json(w)}};
  }
  if (e == "is_idempotent") {
    OpDef op = expr.at("op").is_string() ? resolve_op(expr.at("op").get<std::string>())
                                         : op_from_json(expr.at("op"));
    Ultrafilter u = eval_uf_node(expr.at("uf"), trace);
    bool idem = is_idempotent(op, u);
    trace.note("is_idempotent(" + op.name() + ", " + u.to_string() + ") = " +
               (idem ? "true" : "false"));
    return Json{{"idempotent", idem}};
  }
  if (e == "associativity") {
    OpDef op = expr.at("op").is_string() ? resolve_op(expr.at("op").get<std::string>())
                                         : op_from_json(expr.at("op"));
    std::vector<Ultrafilter> pool;
    for (const auto& f : expr.at("pool")) pool.push_back(eval_uf_node(f, trace));
    auto report = check_associativity(op, pool, jobs);
    return Json{{"passed", report.passed},
                {"triples", report.triples_checked},
                {"failures", report.failures}};
  }
  // A bare ultrafilter expression (possibly a pushforward tree).
  Ultrafilter u = eval_uf_node(expr, trace);
  Json out = uf_to_json(u);
  return out;
}

int run(std::vector<std::string> args);

int cmd_rerun(const std::string& path) {
  Json manifest = load_json_argument(path);
  std::vector<std::string> args;
  for (const auto& a : manifest.at("command")) args.push_back(a.get<std::string>());
  return run(args);
}

int run(std::vector<std::string> args) {
  CLI::App app{"ramsey - desk-scale Ramsey algebra and ultrafilter calculator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too

  GlobalOpts g;
  g.seed = env_seed();
  app.add_flag("--pretty", g.pretty, "human-readable JSON");
  app.add_option("--seed", g.seed, "seed for randomized sampling (default RAMSEY_SEED or 0)");
  app.add_option("--jobs", g.jobs, "parallel workers for exhaustive checks");
  app.add_option("--manifest-out", g.manifest_out, "write the run manifest to a file");

  ManifestBuilder manifest;
  manifest.set_command(args);

  // fr: finite reductions of a finite sequence.
  std::string fr_seq, fr_sig = "plus";
  int fr_depth = 0;
  auto* fr_cmd = app.add_subcommand("fr", "enumerate finite reductions of a sequence");
  fr_cmd->add_option("--seq", fr_seq, "finite sequence (JSON array)")->required();
  fr_cmd->add_option("--sig", fr_sig, "signature (builtin name or JSON)");
  fr_cmd->add_option("--depth", fr_depth, "term depth bound (default: sequence length)");

  // reduction: decide a <| b.
  std::string red_a, red_b, red_sig = "plus";
  int red_depth = 0;
  auto* red_cmd = app.add_subcommand("reduction", "decide whether a reduces to b");
  red_cmd->add_option("--a", red_a)->required();
  red_cmd->add_option("--b", red_b)->required();
  red_cmd->add_option("--sig", red_sig);
  red_cmd->add_option("--depth", red_depth, "term depth bound (default: |b|)");

  // search / iterated-search / probe-degeneracy share budget options.
  std::string s_sig = "plus", s_seed = "naturals", s_coloring = "parity", s_iterated;
  SearchBudget s_budget;
  bool s_deterministic = true;
  auto add_budget = [](CLI::App* cmd, SearchBudget& b) {
    cmd->add_option("--length", b.seq_length, "witness length L");
    cmd->add_option("--bound", b.value_bound, "value bound M");
    cmd->add_option("--term-depth", b.term_depth);
    cmd->add_option("--node-limit", b.node_limit);
  };
  auto* search_cmd = app.add_subcommand("search", "monochromatic finite-reduction search");
  search_cmd->add_option("--sig", s_sig);
  search_cmd->add_option("--seed-seq", s_seed, "seed sequence (builtin name or JSON)");
  search_cmd->add_option("--coloring", s_coloring);
  search_cmd->add_option("--iterated", s_iterated, "JSON array of stage colorings");
  search_cmd->add_flag("--deterministic", s_deterministic,
                       "deterministic exploration order (always on)");
  add_budget(search_cmd, s_budget);

  std::string it_sig = "plus", it_seed = "naturals", it_colorings;
  SearchBudget it_budget;
  auto* it_cmd = app.add_subcommand("iterated-search", "stagewise tail-monochromatic search");
  it_cmd->add_option("--sig", it_sig);
  it_cmd->add_option("--seed-seq", it_seed);
  it_cmd->add_option("--colorings", it_colorings, "JSON array of stage colorings")->required();
  add_budget(it_cmd, it_budget);

  std::string pd_sig = "plus", pd_seed = "powers2";
  SearchBudget pd_budget;
  auto* pd_cmd = app.add_subcommand("probe-degeneracy",
                                    "minimize the finite-reduction set over reductions");
  pd_cmd->add_option("--sig", pd_sig);
  pd_cmd->add_option("--seed-seq", pd_seed);
  add_budget(pd_cmd, pd_budget);

  // closure
  std::string cl_sig = "plus", cl_seq, cl_dims = "1";
  int cl_depth = 1, cl_chain_depth = -1;
  Nat cl_singleton = 2;
  auto* cl_cmd = app.add_subcommand("closure", "enumerate the bounded-depth generated field");
  cl_cmd->add_option("--sig", cl_sig);
  cl_cmd->add_option("--depth", cl_depth);
  cl_cmd->add_option("--dims", cl_dims, "comma-separated dimensions");
  cl_cmd->add_option("--singleton-bound", cl_singleton);
  cl_cmd->add_option("--seq", cl_seq, "add chain generators over this sequence");
  cl_cmd->add_option("--chain-depth", cl_chain_depth);

  // admissible-check
  std::string ad_sig = "plus", ad_seq;
  int ad_samples = 512, ad_enum_depth = 1, ad_chain_depth = 3;
  bool ad_no_cyc = false;
  auto* ad_cmd = app.add_subcommand("admissible-check", "sampled admissibility verification");
  ad_cmd->add_option("--sig", ad_sig);
  ad_cmd->add_option("--samples", ad_samples);
  ad_cmd->add_option("--enum-depth", ad_enum_depth);
  ad_cmd->add_option("--seq", ad_seq, "add chain generators over this sequence");
  ad_cmd->add_option("--chain-depth", ad_chain_depth);
  ad_cmd->add_flag("--no-cyc", ad_no_cyc, "negative control: drop cyc from the language");

  // uf eval
  std::string uf_expr;
  auto* uf_cmd = app.add_subcommand("uf", "ultrafilter calculus");
  auto* uf_eval = uf_cmd->add_subcommand("eval", "evaluate an ultrafilter expression");
  uf_eval->add_option("--expr", uf_expr, "expression (JSON or @file)")->required();

  // galvin
  std::string ga_uf = "cofinite", ga_op = "plus", ga_avoid, ga_target, ga_seq = "powers2",
              ga_sig = "plus";
  int ga_target_gen = -1, ga_chain_depth = 3;
  std::size_t ga_length = 8;
  Nat ga_scan_cap = 1'000'000;
  auto* ga_cmd = app.add_subcommand("galvin", "homogeneous sequence construction");
  ga_cmd->add_option("--uf", ga_uf, "cofinite | principal:c | frchain | JSON");
  ga_cmd->add_option("--op", ga_op);
  ga_cmd->add_option("--avoid", ga_avoid, "finite forbidden set, e.g. 0..9 or 1,4,7");
  ga_cmd->add_option("--target", ga_target, "target set (symset JSON)");
  ga_cmd->add_option("--target-gen", ga_target_gen, "chain generator index as the target");
  ga_cmd->add_option("--length", ga_length);
  ga_cmd->add_option("--seq", ga_seq, "chain sequence (frchain ultrafilter)");
  ga_cmd->add_option("--sig", ga_sig, "chain signature (frchain ultrafilter)");
  ga_cmd->add_option("--chain-depth", ga_chain_depth);
  ga_cmd->add_option("--scan-cap", ga_scan_cap);

  // frfield
  std::string ff_seq = "powers2", ff_sig = "plus";
  int ff_depth = 3, ff_samples = 512, ff_axiom_depth = 1, ff_tails = 3;
  bool ff_check = false;
  auto* ff_cmd = app.add_subcommand("frfield", "build the finite-reduction chain field");
  ff_cmd->add_option("--seq", ff_seq);
  ff_cmd->add_option("--sig", ff_sig);
  ff_cmd->add_option("--depth", ff_depth);
  ff_cmd->add_option("--samples", ff_samples);
  ff_cmd->add_option("--axiom-depth", ff_axiom_depth);
  ff_cmd->add_option("--tails", ff_tails);
  ff_cmd->add_flag("--check", ff_check, "also verify strong reducibility");

  // rerun
  std::string rr_manifest;
  auto* rr_cmd = app.add_subcommand("rerun", "re-execute a run manifest");
  rr_cmd->add_option("--manifest", rr_manifest)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      std::cout << app.help();
      return 0;
    }
    std::cerr << app.help() << "\n" << e.what() << "\n";
    return 2;
  }
  manifest.set_seed(g.seed);

  try {
    if (rr_cmd->parsed()) return cmd_rerun(rr_manifest);

    if (fr_cmd->parsed()) {
      manifest.add_input("seq", fr_seq);
      manifest.add_input("sig", fr_sig);
      Signature sig = resolve_signature(fr_sig);
      FiniteSeq seq = load_json_argument(fr_seq).get<FiniteSeq>();
      int depth = fr_depth > 0 ? fr_depth : static_cast<int>(seq.size());
      auto fr = fr_enumerate(seq, sig, depth);
      Json result{{"fr", std::vector<Nat>(fr.begin(), fr.end())}};
      return finish("ok", result, g, manifest);
    }

    if (red_cmd->parsed()) {
      manifest.add_input("a", red_a);
      manifest.add_input("b", red_b);
      manifest.add_input("sig", red_sig);
      Signature sig = resolve_signature(red_sig);
      FiniteSeq a = load_json_argument(red_a).get<FiniteSeq>();
      FiniteSeq b = load_json_argument(red_b).get<FiniteSeq>();
      int depth = red_depth > 0 ? red_depth : static_cast<int>(b.size());
      auto w = find_reduction(a, b, sig, depth);
      Json result;
      result["reduces"] = w.has_value();
      if (w) result["witness"] = witness_to_json(*w);
      return finish("ok", result, g, manifest);
    }

    if (search_cmd->parsed()) {
      manifest.add_input("sig", s_sig);
      manifest.add_input("seed-seq", s_seed);
      Signature sig = resolve_signature(s_sig);
      StreamSeq seed = resolve_stream(s_seed);
      if (!s_iterated.empty()) {
        manifest.add_input("colorings", s_iterated);
        Json arr = load_json_argument(s_iterated);
        std::vector<Coloring> colorings;
        for (const auto& c : arr) colorings.push_back(coloring_from_json(c, s_budget.value_bound));
        IteratedResult r = search_iterated(sig, seed, colorings, s_budget);
        Json result{{"status", to_string(r.status)}, {"nodes", r.nodes}};
        if (r.status == SearchStatus::Found) {
          result["witness"] = r.witness;
          result["colors"] = r.colors;
          result["verified"] = true;
        } else if (!r.detail.empty()) {
          result["detail"] = r.detail;
        }
        return finish(r.status == SearchStatus::BudgetExhausted ? "budget_exhausted" : "ok",
                      result, g, manifest);
      }
      manifest.add_input("coloring", s_coloring);
      Coloring coloring = resolve_coloring(s_coloring, s_budget.value_bound);
      MonochromaticResult r = search_monochromatic(sig, seed, coloring, s_budget);
      Json result{{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::Found) {
        result["witness"] = r.witness;
        result["color"] = r.color;
        result["verified"] = true;
        result["reduction"] = witness_to_json(r.reduction);
      }
      return finish(r.status == SearchStatus::BudgetExhausted ? "budget_exhausted" : "ok",
                    result, g, manifest);
    }

    if (it_cmd->parsed()) {
      manifest.add_input("sig", it_sig);
      manifest.add_input("seed-seq", it_seed);
      manifest.add_input("colorings", it_colorings);
      Signature sig = resolve_signature(it_sig);
      StreamSeq seed = resolve_stream(it_seed);
      Json arr = load_json_argument(it_colorings);
      std::vector<Coloring> colorings;
      for (const auto& c : arr) colorings.push_back(coloring_from_json(c, it_budget.value_bound));
      IteratedResult r = search_iterated(sig, seed, colorings, it_budget);
      Json result{{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::Found) {
        result["witness"] = r.witness;
        result["colors"] = r.colors;
        result["verified"] = true;
      } else if (!r.detail.empty()) {
        result["detail"] = r.detail;
      }
      return finish(r.status == SearchStatus::BudgetExhausted ? "budget_exhausted" : "ok",
                    result, g, manifest);
    }

    if (pd_cmd->parsed()) {
      manifest.add_input("sig", pd_sig);
      manifest.add_input("seed-seq", pd_seed);
      Signature sig = resolve_signature(pd_sig);
      StreamSeq seed = resolve_stream(pd_seed);
      DegeneracyResult r = probe_degeneracy(sig, seed, pd_budget);
      Json result{{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (!r.witness.empty()) {
        result["witness"] = r.witness;
        result["cardinality"] = r.cardinality;
      }
      return finish(r.status == SearchStatus::BudgetExhausted ? "budget_exhausted" : "ok",
                    result, g, manifest);
    }

    if (cl_cmd->parsed()) {
      manifest.add_input("sig", cl_sig);
      Signature sig = resolve_signature(cl_sig);
      OracleTable gens;
      std::shared_ptr<const FRChainField> field;
      if (!cl_seq.empty() && cl_chain_depth >= 0) {
        manifest.add_input("seq", cl_seq);
        field = std::make_shared<const FRChainField>(resolve_stream(cl_seq), sig,
                                                     cl_chain_depth);
        gens = field->generator_table();
      }
      ClosureOptions opts;
      opts.singleton_entry_bound = cl_singleton;
      std::vector<int> dims;
      for (std::size_t pos = 0; pos < cl_dims.size();) {
        auto comma = cl_dims.find(',', pos);
        if (comma == std::string::npos) comma = cl_dims.size();
        dims.push_back(std::stoi(cl_dims.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      auto terms = closure_enumerate(gens, sig, cl_depth, dims, opts);
      Json listed = Json::array();
      for (std::size_t i = 0; i < terms.size() && i < 200; ++i)
        listed.push_back(terms[i].to_string());
      Json result{{"count", terms.size()}, {"terms", listed},
                  {"truncated", terms.size() > 200}};
      return finish("ok", result, g, manifest);
    }

    if (ad_cmd->parsed()) {
      manifest.add_input("sig", ad_sig);
      Signature sig = resolve_signature(ad_sig);
      OracleTable gens;
      if (!ad_seq.empty()) {
        manifest.add_input("seq", ad_seq);
        FRChainField field(resolve_stream(ad_seq), sig, ad_chain_depth);
        gens = field.generator_table();
      }
      ClosureOptions opts;
      opts.use_cyc = !ad_no_cyc;
      ClosureFamily family("cli-family", gens, sig, opts);
      SamplingPlan plan;
      plan.samples_per_clause = ad_samples;
      plan.enum_depth = ad_enum_depth;
      plan.seed = g.seed;
      auto report = check_admissible_sampled(family, plan);
      Json result{{"passed", report.passed},
                  {"checks", report.checks_run},
                  {"counterexamples", report.counterexamples}};
      // A definitive negative is still a definitive answer.
      return finish("ok", result, g, manifest);
    }

    if (uf_eval->parsed()) {
      manifest.add_input("expr", uf_expr);
      UfEvalTrace trace;
      Json inner = eval_uf_expr(load_json_argument(uf_expr), trace, g.jobs);
      inner["trace"] = trace.steps;
      return finish("ok", inner, g, manifest);
    }

    if (ga_cmd->parsed()) {
      manifest.add_input("uf", ga_uf);
      manifest.add_input("op", ga_op);
      OpDef op = resolve_op(ga_op);
      Ultrafilter u = resolve_uf(ga_uf, ga_seq, ga_sig, ga_chain_depth);
      Dim1Set target = SymSet::full(1);
      if (!ga_avoid.empty()) {
        manifest.add_input("avoid", ga_avoid);
        target = parse_avoid(ga_avoid);
      } else if (ga_target_gen >= 0) {
        if (u.kind() != Ultrafilter::Kind::FRChain)
          throw InputError("--target-gen needs an frchain ultrafilter");
        ChainNormalForm nf;
        nf.chain_index = ga_target_gen;
        target = nf;
      } else if (!ga_target.empty()) {
        manifest.add_input("target", ga_target);
        target = symset_from_json(load_json_argument(ga_target));
      }
      GalvinOptions opts;
      opts.element_scan_cap = ga_scan_cap;
      FiniteSeq out = galvin_construct(u, op, target, ga_length, opts);
      Signature vsig({op});
      auto fr = fr_enumerate(out, vsig, static_cast<int>(out.size()));
      Json result{{"sequence", out},
                  {"verified", true},
                  {"fr_count", fr.size()},
                  {"fr_max", fr.empty() ? 0 : *fr.rbegin()}};
      return finish("ok", result, g, manifest);
    }

    if (ff_cmd->parsed()) {
      manifest.add_input("seq", ff_seq);
      manifest.add_input("sig", ff_sig);
      Signature sig = resolve_signature(ff_sig);
      StreamSeq seq = resolve_stream(ff_seq);
      BuildOptions opts;
      opts.plan.samples_per_clause = ff_samples;
      opts.plan.seed = g.seed;
      opts.axiom_depth = ff_axiom_depth;
      FRFieldResult r = build_fr_field(seq, sig, ff_depth, {}, opts);
      Json result;
      result["generators"] = ff_depth + 1;
      result["admissibility"] = Json{{"passed", r.report.admissibility.passed},
                                     {"checks", r.report.admissibility.checks_run}};
      result["ultrafilter_axioms"] = r.report.ultrafilter_axioms;
      result["nonprincipal"] = r.report.nonprincipal;
      result["normal_forms_checked"] = r.report.normal_forms_checked;
      result["sections"] = Json{{"decided", r.report.sections_decided},
                                {"undecided", r.report.sections_undecided},
                                {"passed", r.report.section_check_passed}};
      result["failures"] = r.report.failures;
      bool ok = r.report.admissibility.passed && r.report.ultrafilter_axioms &&
                r.report.nonprincipal && r.report.section_check_passed;
      bool unknown = false;
      if (ff_check) {
        ChainNormalForm g0;
        g0.chain_index = 0;
        auto v = verify_strongly_reducible(r.uf, sig, g0, seq, ff_tails);
        Json vj{{"homogeneous", v.homogeneous},
                {"prefix_checked", v.prefix_checked},
                {"overall", tristate_to_json(v.overall)},
                {"notes", v.notes}};
        Json tails = Json::array();
        for (const auto& t : v.tail_membership) tails.push_back(tristate_to_json(t));
        vj["tails"] = tails;
        result["strongly_reducible"] = vj;
        ok = ok && !v.overall.is_no();
        unknown = v.overall.is_unknown();
      }
      result["passed"] = ok && !unknown;
      return finish(unknown ? "unknown" : "ok", result, g, manifest);
    }
  } catch (const InputError& e) {
    Json result{{"error", e.what()}};
    return finish("error", result, g, manifest);
  } catch (const NeedPrefixError& e) {
    Json result{{"error", e.what()}, {"required_index", e.required_index}};
    return finish("unknown", result, g, manifest);
  } catch (const UnclassifiableError& e) {
    Json result{{"error", e.what()}, {"bound", e.bound}};
    return finish("unknown", result, g, manifest);
  } catch (const OverflowError& e) {
    Json result{{"error", e.what()}};
    return finish("error", result, g, manifest);
  }

  std::cerr << app.help();
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}
