#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruit/ruit.hpp"

#ifndef RUIT_CORPUS_DIR
#define RUIT_CORPUS_DIR "corpus"
#endif

namespace ruit::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  bool json = false;
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t max_dag_size = 5'000'000;

  ProverOptions prover(bool record = false) const {
    ProverOptions o;
    o.node_budget = node_budget;
    o.record_derivations = record;
    return o;
  }
};

namespace detail {

inline Json big(const BigInt& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(n);
  return n.str();
}

inline std::string big_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline Json sizes_json(const SizeReport& s) { return {{"dag", s.dag_size}, {"tree", big(s.tree_size)}, {"depth", s.depth}}; }

inline Json world_set(std::uint64_t s, std::size_t n) {
  Json out = Json::array();
  for (std::size_t w = 0; w < n; ++w)
    if ((s >> w) & 1) out.push_back(w);
  return out;
}

inline std::string set_text(const Json& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].dump();
  return s + "}";
}

inline Json countermodel_json(const Countermodel& c) {
  const KripkeModel& m = c.model;
  Json order = Json::array();
  for (std::size_t w = 0; w < m.worlds; ++w)
    for (std::size_t v = 0; v < m.worlds; ++v)
      if (w != v && m.leq(w, v)) order.push_back({w, v});
  Json val = Json::object();
  for (const auto& [var, set] : m.valuation) val[var_name(var)] = world_set(set, m.worlds);
  return {{"worlds", m.worlds}, {"order", order}, {"valuation", val}, {"world", c.world}};
}

inline void countermodel_text(const Json& c, std::ostream& out) {
  out << "countermodel: " << c["worlds"] << " world(s), refuted at world " << c["world"] << "\n";
  out << "  order (w <= v, w != v):";
  if (c["order"].empty()) out << " none";
  for (const auto& e : c["order"]) out << " " << e[0] << "<=" << e[1];
  out << "\n";
  for (const auto& [var, set] : c["valuation"].items()) out << "  " << var << " true at " << set_text(set) << "\n";
}

inline Json period_json(const PeriodReport& r) {
  Json j;
  j["formula"] = print(r.formula);
  j["m"] = r.m;
  j["m_optimized"] = r.m_optimized;
  j["b"] = r.b_guaranteed;
  j["verified"] = r.verified ? Json(*r.verified) : Json(nullptr);
  j["minimal"] = r.minimal ? Json{{"b", r.minimal->b}, {"c", r.minimal->c}} : Json(nullptr);
  j["sizes"] = sizes_json(r.sizes);
  j["reduced"] = r.used_reduced_iterates;
  if (r.resource_limit) j["resource_limit"] = *r.resource_limit;
  return j;
}

inline void period_text(const Json& j, std::ostream& out, bool show_minimal) {
  out << "formula      " << j["formula"].get<std::string>() << "\n";
  out << "m            " << j["m"] << " (optimized: " << j["m_optimized"] << ")\n";
  out << "b            " << j["b"] << "\n";
  out << "verified     " << (j["verified"].is_null() ? "unknown" : j["verified"].get<bool>() ? "yes" : "NO") << "\n";
  if (show_minimal) {
    if (j["minimal"].is_null()) out << "minimal      none within cap\n";
    else out << "minimal      (" << j["minimal"]["b"] << ", " << j["minimal"]["c"] << ")\n";
  }
  out << "sizes        dag " << j["sizes"]["dag"] << ", tree " << big_text(j["sizes"]["tree"]) << ", depth "
      << j["sizes"]["depth"] << " (A^(b+2), " << (j["reduced"].get<bool>() ? "reduced" : "raw") << ")\n";
  if (j.contains("resource_limit")) out << "resource limit: " << j["resource_limit"].get<std::string>() << "\n";
}

inline int period_exit(const PeriodReport& r) {
  if (r.resource_limit) return kResource;
  return r.verified.value_or(false) ? kOk : kNegative;
}

inline std::vector<Formula> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open corpus file " + path);
  std::vector<Formula> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse(line));
  }
  return out;
}

}  // namespace detail

/// Executes one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  RunConfig cfg;
  CLI::App app{"Iterated substitution and periodicity in intuitionistic propositional logic", "ruit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--node-budget", cfg.node_budget, "prover node budget per query")->check(CLI::PositiveNumber);
  app.add_option("--max-dag-size", cfg.max_dag_size, "DAG size ceiling for iterates")->check(CLI::PositiveNumber);

  std::string formula, formula2, sequent, context, mode_name = "pruned", tnorm_name, p0_text = "1/2";
  std::uint64_t n = 0, i_index = 0, j_index = 0, cap = 3, random_count = 0, seed = 1, steps = 6, max_size = 0;
  std::size_t max_worlds = 3;
  bool reduced = false, minimal = false, raw = false, show_derivation = false, show_all = false, show_formula = false;
  std::vector<std::string> files;

  auto* c_parse = app.add_subcommand("parse", "parse and print a formula with its sizes");
  c_parse->add_option("formula", formula)->required();

  auto* c_prove = app.add_subcommand("prove", "decide a sequent 'A, B |- C'");
  c_prove->add_option("sequent", sequent)->required();
  c_prove->add_flag("--derivation", show_derivation, "print the derivation");
  c_prove->add_option("--max-worlds", max_worlds, "countermodel search size")->check(CLI::Range(1, 5));

  auto* c_equiv = app.add_subcommand("equiv", "decide G |- A <-> B");
  c_equiv->add_option("a", formula)->required();
  c_equiv->add_option("b", formula2)->required();
  c_equiv->add_option("--context", context, "comma-separated context");

  auto* c_iterate = app.add_subcommand("iterate", "build A^n");
  c_iterate->add_option("formula", formula)->required();
  c_iterate->add_option("n", n)->required();
  c_iterate->add_flag("--reduced", reduced, "normalize after each step");
  c_iterate->add_option("--max-size", max_size, "DAG size ceiling")->check(CLI::PositiveNumber);
  c_iterate->add_flag("--print", show_formula, "print the iterate even when large");

  auto* c_bound = app.add_subcommand("bound", "compute a bound list");
  c_bound->add_option("formula", formula)->required();
  c_bound->add_option("--mode", mode_name)->check(CLI::IsMember({"naive", "dedup", "optimized", "pruned"}));

  auto* c_period = app.add_subcommand("period", "verify |- A^b <-> A^(b+2)");
  c_period->add_option("formula", formula)->required();
  c_period->add_flag("--minimal", minimal, "search the least (b, c)");
  c_period->add_flag("--raw-iterates", raw, "do not normalize iterates");
  c_period->add_option("--mode", mode_name)->check(CLI::IsMember({"naive", "dedup", "optimized", "pruned"}));
  c_period->add_option("--cap", cap, "minimal search cap (default: guaranteed b)");

  auto* c_fix = app.add_subcommand("fixpoint", "least and greatest fixpoints of a monotone formula");
  c_fix->add_option("formula", formula)->required();

  auto* c_lemmas = app.add_subcommand("lemmas", "check iteration lemma instances");
  c_lemmas->add_option("formula", formula)->required();
  c_lemmas->add_option("--cap", cap, "index cap");
  c_lemmas->add_flag("--all", show_all, "list every instance");

  auto* c_classical = app.add_subcommand("classical", "check A^1 == A^3 classically");
  c_classical->add_option("formula", formula);
  c_classical->add_option("--random", random_count, "check N random formulas instead");
  c_classical->add_option("--seed", seed);

  auto* c_demo = app.add_subcommand("demo", "finite-model demonstrations");
  c_demo->require_subcommand(1);
  auto* d_km = c_demo->add_subcommand("km-chain", "[]p iterated over the reverse chain");
  d_km->add_option("n", n)->required()->check(CLI::Range(2, 64));
  auto* d_k4 = c_demo->add_subcommand("k4", "separate A^i and A^j for q | [](q -> []p)");
  d_k4->add_option("i", i_index)->required();
  d_k4->add_option("j", j_index)->required();
  d_k4->add_option("--max-worlds", max_worlds)->check(CLI::Range(1, 5));
  auto* d_tn = c_demo->add_subcommand("tnorm", "p * p iterated in [0,1]");
  d_tn->add_option("kind", tnorm_name)->required()->check(CLI::IsMember({"product", "lukasiewicz"}));
  d_tn->add_option("--p0", p0_text);
  d_tn->add_option("--steps", steps);

  auto* c_corpus = app.add_subcommand("corpus", "verify every formula of the corpus files");
  c_corpus->add_option("files", files);
  c_corpus->add_flag("--minimal", minimal, "also search the least (b, c)");

  std::vector<const char*> argv{"ruit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto emit = [&](const Json& j, auto&& text) {
    if (cfg.json) out << j.dump(2) << "\n";
    else text(j);
  };

  try {
    if (c_parse->parsed()) {
      const Formula f = parse(formula);
      const Json j{{"formula", print(f)}, {"sizes", sizes_json(measure(f))}};
      emit(j, [&](const Json& j) {
        out << j["formula"].get<std::string>() << "\n";
        out << "dag " << j["sizes"]["dag"] << ", tree " << big_text(j["sizes"]["tree"]) << ", depth "
            << j["sizes"]["depth"] << "\n";
      });
      return kOk;
    }

    if (c_prove->parsed()) {
      const Sequent s = parse_sequent(sequent);
      const ProofResult r = Prover(cfg.prover(true)).prove(s);
      Json j{{"sequent", print(s)}, {"provable", r.provable}};
      if (r.provable) {
        if (auto v = check_derivation(r.derivation, s); !v)
          throw std::logic_error("derivation replay failed: " + v.reason);
        if (show_derivation) j["derivation"] = serialize(r.derivation);
      } else {
        auto cm = find_countermodel(s, max_worlds);
        j["countermodel"] = cm ? countermodel_json(*cm) : Json(nullptr);
      }
      emit(j, [&](const Json& j) {
        out << (j["provable"].get<bool>() ? "Provable" : "Unprovable") << "\n";
        if (j.contains("derivation")) out << j["derivation"].get<std::string>();
        if (j.contains("countermodel")) {
          if (j["countermodel"].is_null()) out << "no countermodel with at most " << max_worlds << " worlds\n";
          else countermodel_text(j["countermodel"], out);
        }
      });
      return r.provable ? kOk : kNegative;
    }

    if (c_equiv->parsed()) {
      const Formula a = parse(formula), b = parse(formula2);
      const std::vector<Formula> g = context.empty() ? std::vector<Formula>{} : parse_sequent(context + " |- T").context;
      const bool eq = Prover(cfg.prover()).equiv(g, a, b);
      const Json j{{"a", print(a)}, {"b", print(b)}, {"equivalent", eq}};
      emit(j, [&](const Json&) { out << (eq ? "Equivalent" : "Not equivalent") << "\n"; });
      return eq ? kOk : kNegative;
    }

    if (c_iterate->parsed()) {
      const Formula a = parse(formula);
      const std::uint64_t ceiling = max_size ? max_size : cfg.max_dag_size;
      const Formula an = reduced ? iterate_reduced(a, n, ceiling) : iterate(a, n, ceiling);
      const SizeReport sz = measure(an);
      constexpr std::uint64_t kPrintLimit = 10'000;
      Json j{{"formula", print(a)}, {"n", n}, {"reduced", reduced}, {"sizes", sizes_json(sz)}};
      if (show_formula || sz.tree_size <= kPrintLimit) j["result"] = print(an);
      emit(j, [&](const Json& j) {
        if (j.contains("result")) out << j["result"].get<std::string>() << "\n";
        else out << "(tree size above " << kPrintLimit << "; pass --print to show the formula)\n";
        out << "dag " << j["sizes"]["dag"] << ", tree " << big_text(j["sizes"]["tree"]) << ", depth "
            << j["sizes"]["depth"] << "\n";
      });
      return kOk;
    }

    if (c_bound->parsed()) {
      const Formula a = parse(formula);
      const BoundMode mode = *parse_bound_mode(mode_name);
      Prover prover(cfg.prover());
      const BoundList b = compute_bound(a, mode, prover);
      Json elems = Json::array();
      for (Formula f : b.elements) elems.push_back(print(f));
      const Json j{{"formula", print(a)}, {"mode", to_string(mode)}, {"length", b.size()}, {"elements", elems}};
      emit(j, [&](const Json& j) {
        out << "mode " << j["mode"].get<std::string>() << ", length " << j["length"] << "\n";
        for (const auto& e : j["elements"]) out << e.get<std::string>() << "\n";
      });
      return kOk;
    }

    if (c_period->parsed()) {
      PeriodOptions o;
      o.mode = *parse_bound_mode(mode_name);
      o.raw_iterates = raw;
      o.minimal = minimal;
      o.b_cap = c_period->count("--cap") ? cap : 0;
      o.max_dag_size = cfg.max_dag_size;
      o.prover = cfg.prover();
      const PeriodReport r = verify_ruitenburg(parse(formula), o);
      emit(period_json(r), [&](const Json& j) { period_text(j, out, minimal); });
      return period_exit(r);
    }

    if (c_fix->parsed()) {
      const Formula a = parse(formula);
      PeriodOptions o;
      o.max_dag_size = cfg.max_dag_size;
      o.prover = cfg.prover();
      const FixpointReport r = fixpoints(a, o);
      Json j{{"formula", print(a)}, {"monotone", r.monotone}};
      if (r.monotone) {
        j["b"] = r.b;
        j["lfp"] = print(r.lfp);
        j["gfp"] = print(r.gfp);
        j["verified"] = r.verified;
      } else {
        j["polarity"] = to_string(polarity(a, 0));
      }
      emit(j, [&](const Json& j) {
        if (!r.monotone) {
          out << "not monotone in p (polarity " << j["polarity"].get<std::string>() << ")\n";
          return;
        }
        out << "b         " << j["b"] << "\n";
        out << "lfp       " << j["lfp"].get<std::string>() << "\n";
        out << "gfp       " << j["gfp"].get<std::string>() << "\n";
        out << "verified  " << (r.verified ? "yes" : "NO") << "\n";
      });
      return r.monotone && r.verified ? kOk : kNegative;
    }

    if (c_lemmas->parsed()) {
      PeriodOptions o;
      o.max_dag_size = cfg.max_dag_size;
      o.prover = cfg.prover();
      const LemmaReport r = lemma_suite(parse(formula), cap, o);
      Json inst = Json::array();
      for (const auto& li : r.instances) {
        Json e{{"lemma", li.lemma}, {"indices", li.indices}, {"status", to_string(li.status)}};
        if (!li.detail.empty()) e["detail"] = li.detail;
        inst.push_back(e);
      }
      const Json j{{"formula", print(r.formula)},
                   {"cap", r.cap},
                   {"bound_length", r.bound_length},
                   {"verified", r.count(LemmaStatus::Verified)},
                   {"premise_false", r.count(LemmaStatus::PremiseFalse)},
                   {"failed", r.count(LemmaStatus::Failed)},
                   {"resource_limit", r.count(LemmaStatus::ResourceLimit)},
                   {"instances", inst}};
      emit(j, [&](const Json& j) {
        for (const auto& e : j["instances"])
          if (show_all || e["status"] != "verified")
            out << std::left << std::setw(8) << e["lemma"].get<std::string>() << std::setw(16)
                << e["indices"].get<std::string>() << e["status"].get<std::string>() << "\n";
        out << j["instances"].size() << " instances: " << j["verified"] << " verified, " << j["premise_false"]
            << " premise false, " << j["failed"] << " failed, " << j["resource_limit"] << " resource limit\n";
      });
      if (r.count(LemmaStatus::Failed)) return kNegative;
      return r.count(LemmaStatus::ResourceLimit) ? kResource : kOk;
    }

    if (c_classical->parsed()) {
      std::vector<Formula> inputs;
      if (random_count) {
        FormulaGenerator gen(seed, {.variables = 3, .max_depth = 6});
        for (std::uint64_t k = 0; k < random_count; ++k) inputs.push_back(gen());
      } else if (!formula.empty()) {
        inputs.push_back(parse(formula));
      } else {
        err << "classical: give a formula or --random N\n";
        return kUsage;
      }
      std::size_t holds = 0;
      Json failures = Json::array();
      for (Formula a : inputs) {
        if (classical_equiv(iterate(a, 1), iterate(a, 3))) ++holds;
        else failures.push_back(print(a));
      }
      const Json j{{"checked", inputs.size()}, {"holds", holds}, {"failures", failures}};
      emit(j, [&](const Json& j) {
        out << "A^1 == A^3 classically: " << j["holds"] << "/" << j["checked"] << "\n";
        for (const auto& f : j["failures"]) out << "  fails: " << f.get<std::string>() << "\n";
      });
      return failures.empty() ? kOk : kNegative;
    }

    if (d_km->parsed()) {
      const ChainDemo d = km_chain_demo(n);
      Json dens = Json::array();
      for (auto s : d.denotations) dens.push_back(world_set(s, d.n));
      const Json j{{"formula", print(a_km())}, {"worlds", d.n}, {"denotations", dens},
                   {"strictly_increasing", d.strictly_increasing}};
      emit(j, [&](const Json& j) {
        out << "A = " << j["formula"].get<std::string>() << ", " << d.n << " worlds, p false everywhere\n";
        for (std::size_t k = 0; k < j["denotations"].size(); ++k)
          out << "n=" << std::left << std::setw(4) << k << set_text(j["denotations"][k]) << "\n";
        out << "strictly increasing: " << (d.strictly_increasing ? "yes" : "NO") << "\n";
      });
      return d.strictly_increasing ? kOk : kNegative;
    }

    if (d_k4->parsed()) {
      if (i_index == j_index) {
        err << "demo k4: i and j must differ\n";
        return kUsage;
      }
      const auto w = modal_distinguish(a_k4(), i_index, j_index, max_worlds);
      Json j{{"formula", print(a_k4())}, {"i", i_index}, {"j", j_index}, {"max_worlds", max_worlds}};
      if (w) {
        Json rel = Json::array();
        for (std::size_t a = 0; a < w->model.worlds; ++a)
          for (std::size_t b = 0; b < w->model.worlds; ++b)
            if ((w->model.succ[a] >> b) & 1) rel.push_back({a, b});
        Json val = Json::object();
        for (const auto& [v, s] : w->model.valuation) val[var_name(v)] = world_set(s, w->model.worlds);
        j["witness"] = {{"worlds", w->model.worlds}, {"relation", rel}, {"valuation", val},
                        {"world", w->world}, {"value_i", w->value_i}, {"value_j", w->value_j}};
      } else {
        j["witness"] = nullptr;
      }
      emit(j, [&](const Json& j) {
        out << "A = " << j["formula"].get<std::string>() << "\n";
        if (j["witness"].is_null()) {
          out << "no transitive model with at most " << max_worlds << " worlds separates A^" << i_index << " and A^"
              << j_index << "\n";
          return;
        }
        const Json& wj = j["witness"];
        out << "separating model: " << wj["worlds"] << " world(s)\n  R:";
        if (wj["relation"].empty()) out << " empty";
        for (const auto& e : wj["relation"]) out << " " << e[0] << "->" << e[1];
        out << "\n";
        for (const auto& [v, s] : wj["valuation"].items()) out << "  " << v << " true at " << set_text(s) << "\n";
        out << "  at world " << wj["world"] << ": A^" << i_index << " is " << (wj["value_i"].get<bool>() ? "true" : "false")
            << ", A^" << j_index << " is " << (wj["value_j"].get<bool>() ? "true" : "false") << "\n";
      });
      return w ? kOk : kNegative;
    }

    if (d_tn->parsed()) {
      const TNorm kind = *parse_tnorm(tnorm_name);
      const TNormDemo d = tnorm_demo(kind, parse_rational(p0_text), steps);
      Json vals = Json::array();
      for (const auto& v : d.values) vals.push_back(to_string(v));
      Json j{{"formula", print(a_fusion())}, {"kind", to_string(kind)}, {"p0", to_string(d.p0)}, {"values", vals},
             {"strictly_decreasing", d.strictly_decreasing}};
      j["zero_at"] = d.zero_at ? Json(*d.zero_at) : Json(nullptr);
      emit(j, [&](const Json& j) {
        out << "A = " << j["formula"].get<std::string>() << ", " << j["kind"].get<std::string>() << ", p = "
            << j["p0"].get<std::string>() << "\n";
        for (std::size_t k = 0; k < j["values"].size(); ++k)
          out << "n=" << std::left << std::setw(4) << k + 1 << j["values"][k].get<std::string>() << "\n";
        out << "strictly decreasing: " << (d.strictly_decreasing ? "yes" : "no") << "\n";
        if (d.zero_at) out << "reaches 0 at n=" << *d.zero_at << "\n";
      });
      if (kind == TNorm::Product) return d.strictly_decreasing ? kOk : kNegative;
      return d.zero_at || d.strictly_decreasing ? kOk : kNegative;
    }

    if (c_corpus->parsed()) {
      if (files.empty()) files.push_back(std::string(RUIT_CORPUS_DIR) + "/ruitenburg.txt");
      Json rows = Json::array();
      int code = kOk;
      std::vector<Formula> seen;
      for (const auto& file : files) {
        for (Formula f : read_corpus(file)) {
          if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
          seen.push_back(f);
          PeriodOptions o;
          o.minimal = minimal;
          o.max_dag_size = cfg.max_dag_size;
          o.prover = cfg.prover();
          const PeriodReport r = verify_ruitenburg(f, o);
          rows.push_back(period_json(r));
          code = std::max(code, period_exit(r));
        }
      }
      emit(rows, [&](const Json& rows) {
        for (const auto& r : rows) {
          out << std::left << std::setw(9)
              << (r["verified"].is_null() ? "LIMIT" : r["verified"].get<bool>() ? "ok" : "FAIL") << "m=" << std::setw(3)
              << r["m"].dump() << "b=" << std::setw(4) << r["b"].dump();
          if (!r["minimal"].is_null())
            out << "min=(" << r["minimal"]["b"] << "," << r["minimal"]["c"] << ")  ";
          out << r["formula"].get<std::string>() << "\n";
        }
        out << rows.size() << " formulas\n";
      });
      return code;
    }
  } catch (const ParseError& e) {
    err << "parse error at offset " << e.offset() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  }
  return kUsage;
}

}  // namespace ruit::cli
