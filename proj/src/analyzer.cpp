#include "haltlab/analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace haltlab {

std::string Verdict::describe() const {
  switch (v.index()) {
    case 0: {
      std::uint64_t k = as_halts().steps;
      return "Halts in " + std::to_string(k) + (k == 1 ? " step" : " steps");
    }
    case 1: {
      const auto& d = as_diverges();
      if (d.evidence)
        return "Diverges: state at step " + std::to_string(d.evidence->first) +
               " revisited at step " + std::to_string(d.evidence->second);
      return "Diverges (pigeonhole: ran past the configuration bound)";
    }
    case 2:
      return "ErrorNontermination: " + as_error().report.message;
    default:
      return "Undecided (visited-set cap " + std::to_string(as_undecided().cap) +
             " reached)";
  }
}

std::string Verdict::record_word() const {
  switch (v.index()) {
    case 0: return "halts";
    case 1: return "diverges";
    case 2: return "error";
    default: return "undecided";
  }
}

namespace {

RunOptions to_run_options(const CheckedModule& cm, const AnalyzerOptions& opts) {
  RunOptions r;
  r.width_bits = cm.width_bits();
  r.frame_cap = opts.frame_cap;
  r.halt_table = opts.halt_table;
  r.purity_check = opts.purity_check;
  return r;
}

}  // namespace

Verdict decide_halting(const CheckedModule& cm, const std::string& entry,
                       const AnalyzerOptions& opts, std::vector<Value> args) {
  Machine mc(cm, entry, to_run_options(cm, opts), std::move(args));
  if (mc.done()) return Verdict{Halts{0}};
  std::unordered_map<std::string, std::uint64_t> visited;
  visited.emplace(mc.serialize(), 0);
  for (;;) {
    std::optional<Outcome> out = mc.step();
    if (out) {
      if (out->halted()) return Verdict{Halts{out->as_halted().steps}};
      return Verdict{ErrorNontermination{out->as_error().report}};
    }
    std::string s = mc.serialize();
    auto [it, fresh] = visited.emplace(std::move(s), mc.steps());
    if (!fresh)
      return Verdict{Diverges{CycleEvidence{it->second, mc.steps(), it->first}}};
    if (opts.visited_cap && visited.size() > *opts.visited_cap)
      return Verdict{Undecided{*opts.visited_cap}};
  }
}

Verdict decide_halting_applied(const CheckedModule& cm, const std::string& entry, Word d,
                               const AnalyzerOptions& opts) {
  std::vector<Value> args;
  args.push_back(int_value(d, cm.width_bits()));
  return decide_halting(cm, entry, opts, std::move(args));
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a + b < a ? UINT64_MAX : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp--) {
    r = sat_mul(r, base);
    if (r == UINT64_MAX) return r;
  }
  return r;
}

int bits_for(std::uint64_t states) {
  int b = 0;
  std::uint64_t span = 1;
  while (span < states) {
    span = sat_mul(span, 2);
    ++b;
  }
  return b;
}

int slot_bits(VarType t, int width_bits, std::size_t decl_count) {
  std::uint64_t ints =
      width_bits >= 64 ? UINT64_MAX : (std::uint64_t{1} << width_bits);
  switch (t) {
    case VarType::Int: return width_bits;
    case VarType::Bool: return 1;
    case VarType::Code: return bits_for(std::max<std::uint64_t>(2, decl_count));
    default: return bits_for(sat_add(ints, 2 + decl_count));
  }
}

// Longest frame chain through the call graph; recursion-free modules have
// an acyclic graph, so a depth-first walk with a path marker suffices.
std::uint64_t chain_depth(const CheckedModule& cm, const Decl* d,
                          std::set<const Decl*>& path, int frame_cap, bool& cyclic) {
  if (path.count(d)) {
    cyclic = true;
    return static_cast<std::uint64_t>(frame_cap);
  }
  path.insert(d);
  std::uint64_t best = 1;
  for (const Decl* callee : cm.info(d).callees) {
    std::uint64_t inner = 1 + chain_depth(cm, callee, path, frame_cap, cyclic);
    best = std::max(best, inner);
    if (cyclic) break;
  }
  path.erase(d);
  return best;
}

void reachable_decls(const CheckedModule& cm, const Decl* d, std::set<const Decl*>& out) {
  if (!out.insert(d).second) return;
  for (const Decl* callee : cm.info(d).callees) reachable_decls(cm, callee, out);
}

}  // namespace

StateBudget state_budget(const CheckedModule& cm, const std::string& entry,
                         const AnalyzerOptions& opts) {
  const Decl* d = cm.find_decl(entry);
  if (!d) throw NameError("no declaration '" + entry + "'");

  std::set<const Decl*> reach;
  reachable_decls(cm, d, reach);

  StateBudget sb;
  bool cyclic = false;
  std::set<const Decl*> path;
  sb.depth = chain_depth(cm, d, path, opts.frame_cap, cyclic);
  if (cyclic) sb.depth = static_cast<std::uint64_t>(opts.frame_cap);

  std::uint64_t points = 1;  // the padded empty-slot symbol
  std::uint64_t bits = 0;
  for (const Decl* r : reach) {
    const DeclInfo& di = cm.info(r);
    points = sat_add(points, sat_add(di.control_states, di.suspension_states));
    for (VarType t : di.slot_type)
      bits = sat_add(bits,
                     static_cast<std::uint64_t>(
                         slot_bits(t, cm.width_bits(), cm.module().decls.size())));
  }
  // a cyclic graph may stack the same declaration many times
  if (cyclic) bits = sat_mul(bits, sb.depth);
  sb.store_bits = bits;
  sb.program_points = points;
  std::uint64_t store_states = bits >= 64 ? UINT64_MAX : (std::uint64_t{1} << bits);
  sb.bound = sat_mul(sat_pow(points, sb.depth), store_states);
  if (sb.bound == 0) sb.bound = 1;
  return sb;
}

Verdict counter_oracle(const CheckedModule& cm, const std::string& entry,
                       const AnalyzerOptions& opts, std::vector<Value> args) {
  StateBudget sb = state_budget(cm, entry, opts);
  if (sb.bound > opts.max_bound)
    throw BudgetOverflowError("configuration bound " + std::to_string(sb.bound) +
                              " exceeds the maximum " + std::to_string(opts.max_bound));
  Machine mc(cm, entry, to_run_options(cm, opts), std::move(args));
  if (mc.done()) return Verdict{Halts{0}};
  for (std::uint64_t i = 0; i <= sb.bound; ++i) {
    std::optional<Outcome> out = mc.step();
    if (out) {
      if (out->halted()) return Verdict{Halts{out->as_halted().steps}};
      return Verdict{ErrorNontermination{out->as_error().report}};
    }
  }
  // bound + 1 steps without halting: some configuration repeated
  return Verdict{Diverges{std::nullopt}};
}

bool replay_cycle(const CheckedModule& cm, const std::string& entry, const CycleEvidence& ev,
                  const AnalyzerOptions& opts, std::vector<Value> args) {
  if (ev.first >= ev.second) return false;
  Machine mc(cm, entry, to_run_options(cm, opts), std::move(args));
  std::string at_first;
  for (std::uint64_t idx = 0; idx <= ev.second; ++idx) {
    if (mc.done()) return false;
    std::string cur = mc.serialize();
    if (idx == ev.first) at_first = cur;
    if (idx == ev.second) return cur == at_first && cur == ev.fingerprint;
    if (mc.step().has_value()) return false;
  }
  return false;
}

std::string ConsistencyReport::render_records() const {
  std::string out;
  for (const auto& e : entries) {
    out += "code=";
    out += e.code.hex();
    out += " claimed=";
    out += e.claimed ? "true" : "false";
    out += " observed=";
    out += e.observed.record_word();
    out += " consistent=";
    out += e.consistent ? "true" : "false";
    out += '\n';
  }
  return out;
}

ConsistencyReport check_model(const std::vector<Decl>& programs, const HaltMap& candidate,
                              const AnalyzerOptions& opts) {
  ModuleAst m;
  m.source_name = "<model-check>";
  for (const auto& p : programs) m.decls.push_back(clone(p));
  CheckedModule cm = check(m);

  std::vector<std::pair<std::string, ProgramCode>> keys;
  for (const auto& p : programs) {
    ProgramCode code = encode(p);
    if (!candidate.count(code))
      throw MissingKeyError("no claim for program '" + p.name + "' (code " + code.hex() +
                            ")");
    keys.emplace_back(p.name, std::move(code));
  }

  AnalyzerOptions inner = opts;
  inner.halt_table = &candidate;

  ConsistencyReport report;
  for (const auto& [name, code] : keys) {
    ConsistencyEntry e;
    e.name = name;
    e.code = code;
    e.claimed = candidate.at(code);
    e.observed = decide_halting(cm, name, inner);
    e.consistent = e.observed.decisive() && (e.claimed == e.observed.classifies_halting());
    report.consistent = report.consistent && e.consistent;
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<std::pair<HaltMap, ConsistencyReport>> enumerate_models(
    const std::vector<Decl>& programs, const AnalyzerOptions& opts) {
  if (programs.size() > kMaxModelPrograms)
    throw TooManyProgramsError("model enumeration over " + std::to_string(programs.size()) +
                               " programs; the cap is " +
                               std::to_string(kMaxModelPrograms));
  std::vector<ProgramCode> codes;
  for (const auto& p : programs) codes.push_back(encode(p));

  std::vector<std::pair<HaltMap, ConsistencyReport>> out;
  std::uint64_t total = std::uint64_t{1} << programs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    HaltMap candidate;
    for (std::size_t i = 0; i < programs.size(); ++i)
      candidate[codes[i]] = (mask >> i) & 1;
    ConsistencyReport report = check_model(programs, candidate, opts);
    out.emplace_back(std::move(candidate), std::move(report));
  }
  return out;
}

Decl wrap_data(const Decl& p1, Word d, const std::string& name) {
  if (p1.kind != DeclKind::Procedure || p1.params.size() != 1)
    throw ArityError("wrap_data needs a procedure with exactly one parameter; '" + p1.name +
                     "' does not qualify");
  Decl t;
  t.name = name;
  t.kind = DeclKind::Procedure;
  std::vector<Expr> args;
  args.push_back(int_lit(d));
  t.body.push_back(call_stmt(p1.name, std::move(args)));
  return t;
}

Decl wrap_ignore(const Decl& p0, const std::string& fresh, const std::string& name) {
  if (p0.kind != DeclKind::Procedure || !p0.params.empty())
    throw ArityError("wrap_ignore needs a parameterless procedure; '" + p0.name +
                     "' does not qualify");
  if (fresh.empty()) throw NameError("fresh parameter name must be nonempty");
  if (occurs_in(p0, fresh))
    throw NameCaptureError("name '" + fresh + "' already occurs in '" + p0.name + "'");
  Decl u;
  u.name = name;
  u.kind = DeclKind::Procedure;
  u.params.push_back(fresh);
  u.body.push_back(call_stmt(p0.name, {}));
  return u;
}

}  // namespace haltlab
