#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "haltlab/interp.hpp"

namespace haltlab {

/// Proof of divergence: the configuration serialized identically at two
/// step indices. Deterministic execution makes everything after `first`
/// periodic, so the program can never halt.
struct CycleEvidence {
  std::uint64_t first = 0;
  std::uint64_t second = 0;
  std::string fingerprint;  // full serialization, equal at both indices
};

struct Halts {
  std::uint64_t steps = 0;
};

/// evidence is absent when divergence was concluded by the pigeonhole
/// counter rather than an observed revisit.
struct Diverges {
  std::optional<CycleEvidence> evidence;
};

struct ErrorNontermination {
  ErrorReport report;
};

struct Undecided {
  std::uint64_t cap = 0;
};

struct Verdict {
  std::variant<Halts, Diverges, ErrorNontermination, Undecided> v;

  bool halts() const { return v.index() == 0; }
  bool diverges() const { return v.index() == 1; }
  bool errored() const { return v.index() == 2; }
  bool undecided() const { return v.index() == 3; }

  /// Errors count as non-termination; true when the verdict is decisive.
  bool decisive() const { return !undecided(); }
  /// The two-way classification used by model checks: halts or not.
  bool classifies_halting() const { return halts(); }

  const Halts& as_halts() const { return std::get<Halts>(v); }
  const Diverges& as_diverges() const { return std::get<Diverges>(v); }
  const ErrorNontermination& as_error() const { return std::get<ErrorNontermination>(v); }
  const Undecided& as_undecided() const { return std::get<Undecided>(v); }

  std::string describe() const;
  std::string record_word() const;  // halts / diverges / error / undecided
};

/// Pigeonhole bound on distinct boundary configurations:
/// bound = program_points ^ depth * 2 ^ store_bits, saturating at 2^64-1.
struct StateBudget {
  std::uint64_t store_bits = 0;     // n
  std::uint64_t program_points = 0; // L, control states across declarations
  std::uint64_t depth = 0;          // d, frame chain bound
  std::uint64_t bound = 0;
};

struct AnalyzerOptions {
  int frame_cap = 64;
  const HaltMap* halt_table = nullptr;
  std::optional<std::uint64_t> visited_cap;          // explicit resource cap
  std::uint64_t max_bound = std::uint64_t{1} << 32;  // counter oracle refusal point
  bool purity_check = true;
};

/// Runs with a visited-configuration set; sound and complete within the
/// finite configuration space. Width comes from the checked module.
Verdict decide_halting(const CheckedModule& cm, const std::string& entry,
                       const AnalyzerOptions& opts = {}, std::vector<Value> args = {});

/// H2-style direct analysis: the entry applied to one data value.
Verdict decide_halting_applied(const CheckedModule& cm, const std::string& entry, Word d,
                               const AnalyzerOptions& opts = {});

StateBudget state_budget(const CheckedModule& cm, const std::string& entry,
                         const AnalyzerOptions& opts = {});

/// The counter method: run StateBudget.bound + 1 steps with no state
/// tracking; not halting by then proves divergence. Throws
/// BudgetOverflowError when the bound exceeds opts.max_bound.
Verdict counter_oracle(const CheckedModule& cm, const std::string& entry,
                       const AnalyzerOptions& opts = {}, std::vector<Value> args = {});

/// Re-executes the program and confirms the evidence: equal configuration
/// serializations at the two recorded indices.
bool replay_cycle(const CheckedModule& cm, const std::string& entry,
                  const CycleEvidence& ev, const AnalyzerOptions& opts = {},
                  std::vector<Value> args = {});

struct ConsistencyEntry {
  std::string name;
  ProgramCode code;
  bool claimed = false;
  Verdict observed;
  bool consistent = false;
};

struct ConsistencyReport {
  std::vector<ConsistencyEntry> entries;
  bool consistent = true;  // conjunction of the entries

  std::string render_records() const;  // line per entry: code, claimed, observed, consistent
};

/// Checks one candidate halt map over a program set: each program runs
/// with H bound to the candidate, and the claim must match the observed
/// verdict. Throws MissingKeyError when a program's code has no claim.
ConsistencyReport check_model(const std::vector<Decl>& programs, const HaltMap& candidate,
                              const AnalyzerOptions& opts = {});

constexpr std::size_t kMaxModelPrograms = 20;

/// All 2^n candidate maps over the program set, each with its report,
/// in mask order (program i halting corresponds to bit i).
std::vector<std::pair<HaltMap, ConsistencyReport>> enumerate_models(
    const std::vector<Decl>& programs, const AnalyzerOptions& opts = {});

/// T := p1(d): folds the data into a parameterless program, so a
/// one-argument halt test can answer two-argument questions.
Decl wrap_data(const Decl& p1, Word d, const std::string& name = "T");

/// U(x) := p0 with x unused: pads a parameterless program to one
/// parameter, the other direction of the reduction.
Decl wrap_ignore(const Decl& p0, const std::string& fresh, const std::string& name = "U");

}  // namespace haltlab
