#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haltlab/check.hpp"
#include "haltlab/encode.hpp"

namespace haltlab {

using Word = std::uint64_t;

/// Runtime value: a w-bit unsigned integer, a boolean, or a program code.
struct Value {
  std::variant<Word, bool, ProgramCode> v;

  bool is_int() const { return v.index() == 0; }
  bool is_bool() const { return v.index() == 1; }
  bool is_code() const { return v.index() == 2; }
  Word as_int() const { return std::get<Word>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  const ProgramCode& as_code() const { return std::get<ProgramCode>(v); }

  std::string text() const;  // decimal / true / false / hex
  bool operator==(const Value& o) const { return v == o.v; }
};

Value int_value(Word w, int width_bits);
Value bool_value(bool b);
Value code_value(ProgramCode c);

struct ErrorReport {
  std::string site;      // innermost non-intrinsic declaration
  std::string message;
  std::string reporter;  // intrinsic or declaration that raised the error
  std::string file;
  SourceLoc loc;

  /// The exact three-line block:
  ///   Error at <site>
  ///   <message>
  ///   reported at <reporter> in <file>
  std::string render() const;
};

struct Halted {
  std::uint64_t steps = 0;
  std::optional<Value> result;
};

struct ErrorStop {
  ErrorReport report;
  std::uint64_t steps = 0;
};

struct BudgetExhausted {
  std::uint64_t steps = 0;
};

/// Terminal result of a run. An ErrorStop ends execution but counts as
/// non-termination for halting purposes.
struct Outcome {
  std::variant<Halted, ErrorStop, BudgetExhausted> v;

  bool halted() const { return v.index() == 0; }
  bool errored() const { return v.index() == 1; }
  bool exhausted() const { return v.index() == 2; }
  const Halted& as_halted() const { return std::get<Halted>(v); }
  const ErrorStop& as_error() const { return std::get<ErrorStop>(v); }
  const BudgetExhausted& as_exhausted() const { return std::get<BudgetExhausted>(v); }

  std::uint64_t steps() const;
  std::string describe() const;  // single line, for reports
};

struct TraceEntry {
  std::uint64_t step = 0;
  std::uint64_t fingerprint = 0;
  std::string decl;
};

/// Boundary-configuration fingerprints, one per step plus the initial one.
struct Trace {
  std::vector<TraceEntry> entries;
  std::uint64_t steps = 0;

  std::string render() const;  // line per entry: index, hex fingerprint, decl
};

/// Candidate model of a halt test: code of a program -> claimed halting.
using HaltMap = std::map<ProgramCode, bool>;

struct RunOptions {
  // w; arithmetic wraps at 2^w. Used when checking a plain ModuleAst; a
  // Machine over a CheckedModule always masks at the checked width.
  int width_bits = 8;
  std::uint64_t budget = 100000;
  int frame_cap = 64;
  const HaltMap* halt_table = nullptr;  // binds the enquiry H when present
  bool purity_check = true;    // assert caller frames unchanged across enquiry calls
};

struct RunResult {
  Outcome outcome;
  Trace trace;
};

std::uint64_t fnv1a(const std::string& s);

/// The interpreter. One charged step is one statement execution or one
/// enquiry entry; expression work between charge points is part of the
/// step that triggered it. A Machine owns the full configuration; its
/// canonical serialization determines its behaviour.
class Machine {
public:
  Machine(const CheckedModule& cm, const std::string& entry, const RunOptions& opts,
          std::vector<Value> args = {});

  /// Executes one step. Returns the Outcome when the run ends, nullopt
  /// while it continues. Must not be called after completion.
  std::optional<Outcome> step();

  bool done() const { return outcome_.has_value(); }
  std::uint64_t steps() const { return steps_; }

  /// Canonical configuration text. Two machines with equal serializations
  /// behave identically from here on.
  std::string serialize() const;
  std::uint64_t fingerprint() const { return fnv1a(serialize()); }

  /// Declaration name of the active frame (for traces).
  std::string current_decl() const;

private:
  struct EvalItem {
    const Expr* expr = nullptr;
    std::uint32_t next = 0;  // next child to evaluate; arity+1 = awaiting entry
    std::vector<Value> vals;
  };

  struct CtrlEntry {
    enum class Kind : std::uint8_t { Seq, Loop };
    Kind kind = Kind::Seq;
    const std::vector<Stmt>* seq = nullptr;
    std::size_t idx = 0;
    const Stmt* loop = nullptr;
  };

  struct StmtWork {
    const Stmt* stmt = nullptr;
    std::uint32_t phase = 0;       // if: arm index; call: argument index
    std::vector<Value> out;        // completed root values (call arguments)
    std::vector<EvalItem> eval;    // expression evaluation stack
  };

  struct Frame {
    const Decl* decl = nullptr;        // null for a transient intrinsic frame
    Intrinsic intr = Intrinsic::None;
    std::vector<CtrlEntry> ctrl;
    std::optional<StmtWork> work;
    std::vector<std::optional<Value>> locals;
    std::string purity_snapshot;       // derived; excluded from serialize()
  };

  struct PendingCall {
    CalleeRef ref;
    std::string name;
    std::vector<Value> args;
    const Expr* site = nullptr;
  };

  // execution
  void push_user_frame(const Decl* decl, std::vector<Value> args, bool snapshot);
  void begin_statement();
  void micro_continue();
  bool progress_eval();  // true when the step must end (pending or terminal)
  void on_root_value(Value v);
  void statement_done();
  void do_return(Value v);
  void perform_entry();
  std::optional<Value> run_intrinsic(const PendingCall& pc);  // nullopt when it raised
  bool in_s1_scan(const std::string& target) const;
  void raise_language_error(const std::string& message, const std::string& reporter,
                            SourceLoc loc);
  void finish(Outcome o) { outcome_ = std::move(o); }

  Value eval_leaf(const Expr& e);
  Value apply_binary(BinOp op, const Value& a, const Value& b, SourceLoc loc) const;
  Word mask(Word w) const;

  std::string serialize_frames(std::size_t count) const;  // frames [0, count)

  const CheckedModule& cm_;
  RunOptions opts_;
  std::vector<Frame> frames_;
  std::optional<PendingCall> pending_;
  std::uint64_t steps_ = 0;
  std::optional<Outcome> outcome_;
};

/// Runs entry to completion or budget exhaustion, recording the trace.
RunResult run(const CheckedModule& cm, const std::string& entry, const RunOptions& opts,
              std::vector<Value> args = {});

/// Convenience overload that checks the module first.
RunResult run(const ModuleAst& m, const std::string& entry, const RunOptions& opts);

}  // namespace haltlab
