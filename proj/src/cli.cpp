#include "haltlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "haltlab/analyzer.hpp"
#include "haltlab/diagonal.hpp"
#include "haltlab/interp.hpp"
#include "haltlab/parser.hpp"
#include "haltlab/pretty.hpp"
#include "haltlab/programs.hpp"
#include "haltlab/searchers.hpp"
#include "haltlab/trm.hpp"

namespace haltlab {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + out_path + "'");
  f << text;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("HALTLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100000;
}

struct ModelPrintout {
  std::string text;
  std::size_t consistent = 0;
};

ModelPrintout render_models(const std::vector<Decl>& programs,
                            const std::vector<std::pair<HaltMap, ConsistencyReport>>& all,
                            bool records) {
  ModelPrintout p;
  std::ostringstream os;
  std::vector<ProgramCode> codes;
  for (const auto& d : programs) codes.push_back(encode(d));
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& [map, report] = all[k];
    if (records) {
      os << "candidate=" << k << " map=";
      for (std::size_t i = 0; i < programs.size(); ++i) {
        if (i) os << ",";
        os << programs[i].name << ":" << (map.at(codes[i]) ? "true" : "false");
      }
      os << " consistent=" << (report.consistent ? "true" : "false") << "\n";
    } else {
      os << "candidate " << k << ": {";
      for (std::size_t i = 0; i < programs.size(); ++i) {
        if (i) os << ", ";
        os << programs[i].name << " -> " << (map.at(codes[i]) ? "true" : "false");
      }
      os << "}\n";
      for (const auto& e : report.entries) {
        os << "  " << e.name << ": claimed=" << (e.claimed ? "true" : "false")
           << " observed=" << e.observed.record_word()
           << " consistent=" << (e.consistent ? "yes" : "no") << "\n";
      }
      os << "  => " << (report.consistent ? "consistent" : "inconsistent") << "\n";
    }
    if (report.consistent) ++p.consistent;
  }
  if (records)
    os << "consistent_models=" << p.consistent << "\n";
  else
    os << p.consistent << " consistent model(s)\n";
  p.text = os.str();
  return p;
}

// Numbered proof transcript: each step is one line with the term, the
// equivalence sign, and the justification in quotes; the final term
// stands alone, then the solver's verdict on the resulting equation.
std::string render_derivation(const trm::SAnalysis& a, bool records) {
  std::ostringstream os;
  if (records) {
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      os << "step=" << i + 1 << " label=\"" << a.steps[i].justification << "\" to=\""
         << trm::render(a.steps[i].after) << "\"\n";
    if (!a.stopped.empty()) {
      os << "stopped=\"" << a.stopped << "\"\n";
      os << "verdict=underdetermined\n";
      return os.str();
    }
    os << "equation=\"" << trm::render(a.equation->left) << " ⇔ "
       << trm::render(a.equation->right) << "\"\n";
    os << "verdict="
       << (a.verdict.no_solution()
               ? "nosolution"
               : (a.verdict.determined() ? "determined" : "underdetermined"))
       << "\n";
    return os.str();
  }
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    os << i + 1 << ". " << trm::render(a.steps[i].before) << " ⇔ \""
       << a.steps[i].justification << "\"\n";
  if (!a.stopped.empty()) {
    os << "stopped: " << a.stopped << "\n";
    os << "Underdetermined: no conclusion without trm(H)\n";
    return os.str();
  }
  os << trm::render(a.steps.back().after) << "\n";
  os << "\n";
  os << "equation: " << trm::render(a.equation->left) << " ⇔ "
     << trm::render(a.equation->right) << "\n";
  if (a.verdict.no_solution()) {
    os << "NoSolution: S does not exist as a conceptual object\n";
  } else if (a.verdict.determined()) {
    os << "Determined(" << (a.verdict.as_determined().value ? "true" : "false") << ")\n";
  } else {
    os << "Underdetermined\n";
  }
  return os.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"halting laboratory for a guarded-command toy language"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;

  // ---- parse ----
  auto* cmd_parse = app.add_subcommand("parse", "parse and re-print a module canonically");
  std::string parse_path;
  cmd_parse->add_option("file", parse_path, "source file (.gcl)")->required();
  cmd_parse->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_parse->add_option("--out", out_path);

  // ---- run ----
  auto* cmd_run = app.add_subcommand("run", "execute a declaration");
  std::string run_path, run_entry;
  std::uint64_t run_budget = 0;
  int run_width = 8;
  bool run_trace = false;
  cmd_run->add_option("file", run_path)->required();
  cmd_run->add_option("--entry", run_entry, "declaration to run (default: first)");
  cmd_run->add_option("--budget", run_budget, "step budget (default: HALTLAB_BUDGET or 100000)");
  cmd_run->add_option("--width", run_width, "integer width in bits")->check(CLI::Range(1, 64));
  cmd_run->add_flag("--trace", run_trace, "print the configuration trace");
  cmd_run->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_run->add_option("--out", out_path);

  // ---- encode ----
  auto* cmd_encode = app.add_subcommand("encode", "print declaration encodings");
  std::string enc_path, enc_decl;
  cmd_encode->add_option("file", enc_path)->required();
  cmd_encode->add_option("--decl", enc_decl, "only this declaration");
  cmd_encode->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_encode->add_option("--out", out_path);

  // ---- decide ----
  auto* cmd_decide = app.add_subcommand("decide", "decide halting of a declaration");
  std::string dec_path, dec_entry, dec_method = "revisit";
  int dec_width = 8;
  std::uint64_t dec_cap = 0;
  cmd_decide->add_option("file", dec_path)->required();
  cmd_decide->add_option("--entry", dec_entry);
  cmd_decide->add_option("--method", dec_method)->check(CLI::IsMember({"revisit", "counter"}));
  cmd_decide->add_option("--cap", dec_cap, "visited-set cap (0 = none)");
  cmd_decide->add_option("--width", dec_width)->check(CLI::Range(1, 64));
  cmd_decide->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_decide->add_option("--out", out_path);

  // ---- models ----
  auto* cmd_models = app.add_subcommand("models", "enumerate halt maps over a program set");
  std::vector<std::string> model_paths;
  cmd_models->add_option("files", model_paths)->required()->expected(-1);
  cmd_models->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_models->add_option("--out", out_path);

  // ---- paradox ----
  auto* cmd_paradox = app.add_subcommand("paradox", "derive the termination equation for S");
  bool without_trm_h = false;
  cmd_paradox->add_flag("--without-trm-h", without_trm_h,
                        "drop the assumption that the halt test terminates");
  cmd_paradox->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_paradox->add_option("--out", out_path);

  // ---- search ----
  auto* cmd_search = app.add_subcommand("search", "exhaustive counterexample searches");
  std::string search_kind;
  std::uint64_t f_max_base = 100, f_min_exp = 3, f_max_exp = 7, g_max = 1000000;
  bool timings = false;
  cmd_search->add_option("kind", search_kind)->required()->check(CLI::IsMember({"fermat", "goldbach"}));
  cmd_search->add_option("--max-base", f_max_base);
  cmd_search->add_option("--min-exp", f_min_exp);
  cmd_search->add_option("--max-exp", f_max_exp);
  cmd_search->add_option("--max", g_max);
  cmd_search->add_flag("--timings", timings, "append elapsed time (not byte-stable)");
  cmd_search->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_search->add_option("--out", out_path);

  // ---- beta ----
  auto* cmd_beta = app.add_subcommand("beta", "diagonal bits over the machine family");
  std::uint64_t beta_k = 8, beta_budget = 1000, beta_family = 0;
  cmd_beta->add_option("--k", beta_k, "prefix length");
  cmd_beta->add_option("--budget", beta_budget, "per-bit step budget");
  cmd_beta->add_option("--family", beta_family, "family size (default: k)");
  cmd_beta->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  cmd_beta->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  bool records = format == "records";
  try {
    if (cmd_parse->parsed()) {
      ModuleAst m = parse(read_file(parse_path), parse_path);
      if (records) {
        std::string text;
        for (const auto& d : m.decls) {
          text += "decl=" + d.name;
          text += " kind=";
          text += d.kind == DeclKind::Procedure ? "procedure" : "enquiry";
          text += " params=" + std::to_string(d.params.size());
          text += "\n";
        }
        emit(text, out_path, out);
      } else {
        emit(pretty(m), out_path, out);
      }
      return kExitOk;
    }

    if (cmd_run->parsed()) {
      ModuleAst m = parse(read_file(run_path), run_path);
      std::string entry = run_entry.empty() ? m.entry.value_or("") : run_entry;
      if (entry.empty()) throw Error("module has no declarations to run");
      const Decl* entry_decl = m.find(entry);
      if (!entry_decl) throw Error("no declaration '" + entry + "' in " + run_path);
      if (!entry_decl->params.empty())
        throw Error("entry '" + entry + "' takes parameters; run needs a parameterless one");
      RunOptions opts;
      opts.width_bits = run_width;
      opts.budget = run_budget ? run_budget : default_budget();
      RunResult r = run(m, entry, opts);
      if (r.outcome.errored()) err << r.outcome.as_error().report.render();
      std::string text;
      if (records) {
        if (r.outcome.halted()) {
          text = "outcome=halted steps=" + std::to_string(r.outcome.as_halted().steps);
          if (r.outcome.as_halted().result)
            text += " result=" + r.outcome.as_halted().result->text();
        } else if (r.outcome.errored()) {
          const ErrorReport& rep = r.outcome.as_error().report;
          text = "outcome=error site=" + rep.site + " reporter=" + rep.reporter +
                 " message=\"" + rep.message + "\"";
        } else {
          text = "outcome=budget steps=" + std::to_string(r.outcome.as_exhausted().steps);
        }
        text += "\n";
      } else {
        text = r.outcome.describe() + "\n";
      }
      if (run_trace) text += r.trace.render();
      emit(text, out_path, out);
      return kExitOk;
    }

    if (cmd_encode->parsed()) {
      ModuleAst m = parse(read_file(enc_path), enc_path);
      std::string text;
      for (const auto& d : m.decls) {
        if (!enc_decl.empty() && d.name != enc_decl) continue;
        if (records)
          text += "decl=" + d.name + " code=" + encode(d).hex() + "\n";
        else
          text += d.name + " " + encode(d).hex() + "\n";
      }
      if (text.empty()) throw Error("no declaration named '" + enc_decl + "'");
      emit(text, out_path, out);
      return kExitOk;
    }

    if (cmd_decide->parsed()) {
      ModuleAst m = parse(read_file(dec_path), dec_path);
      std::string entry = dec_entry.empty() ? m.entry.value_or("") : dec_entry;
      if (entry.empty()) throw Error("module has no declarations to analyze");
      const Decl* entry_decl = m.find(entry);
      if (!entry_decl) throw Error("no declaration '" + entry + "' in " + dec_path);
      if (!entry_decl->params.empty())
        throw Error("entry '" + entry + "' takes parameters; decide needs a parameterless one");
      CheckedModule cm = check(m, dec_width);
      AnalyzerOptions opts;
      if (dec_cap) opts.visited_cap = dec_cap;
      Verdict v = dec_method == "counter" ? counter_oracle(cm, entry, opts)
                                          : decide_halting(cm, entry, opts);
      std::string text;
      if (records) {
        text = "verdict=" + v.record_word();
        if (v.halts()) text += " steps=" + std::to_string(v.as_halts().steps);
        if (v.diverges() && v.as_diverges().evidence)
          text += " first=" + std::to_string(v.as_diverges().evidence->first) +
                  " second=" + std::to_string(v.as_diverges().evidence->second);
        if (v.undecided()) text += " cap=" + std::to_string(v.as_undecided().cap);
        text += "\n";
      } else {
        text = v.describe() + "\n";
      }
      emit(text, out_path, out);
      return kExitOk;
    }

    if (cmd_models->parsed()) {
      ModuleAst merged;
      merged.source_name = "<models>";
      for (const auto& p : model_paths) {
        ModuleAst part = parse_module(read_file(p), p);
        for (auto& d : part.decls) merged.decls.push_back(std::move(d));
      }
      check(merged);  // resolve across files before selecting programs
      std::vector<Decl> programs;
      for (const auto& d : merged.decls)
        if (d.kind == DeclKind::Procedure && d.params.empty()) programs.push_back(clone(d));
      if (programs.empty()) throw Error("no parameterless procedures to model");
      auto all = enumerate_models(programs);
      ModelPrintout p = render_models(programs, all, records);
      emit(p.text, out_path, out);
      return p.consistent == 0 ? kExitFinding : kExitOk;
    }

    if (cmd_paradox->parsed()) {
      trm::SAnalysis a = trm::derive_s_contradiction(!without_trm_h);
      emit(render_derivation(a, records), out_path, out);
      return kExitOk;
    }

    if (cmd_search->parsed()) {
      SearchReport r = search_kind == "fermat"
                           ? fermat_search(f_max_base, f_max_exp, f_min_exp)
                           : goldbach_search(g_max);
      std::string text = records ? r.render_records() : r.render_text();
      if (timings) {
        text += "elapsed_ns=" + std::to_string(r.elapsed.count()) + "\n";
      }
      emit(text, out_path, out);
      return r.counterexample.empty() ? kExitOk : kExitFinding;
    }

    if (cmd_beta->parsed()) {
      std::size_t family = beta_family ? beta_family : beta_k;
      auto machines = enumerate_machines(family);
      BetaPrefix p = beta(machines, beta_k, beta_budget);
      emit(records ? p.render_records() : p.render_text(), out_path, out);
      return kExitOk;
    }
  } catch (const SearchOverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetOverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FamilyTooLargeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NameError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const KindError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RuntimeError& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace haltlab
