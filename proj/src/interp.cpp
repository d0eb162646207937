#include "haltlab/interp.hpp"

#include <stdexcept>

#include "haltlab/programs.hpp"

namespace haltlab {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Value::text() const {
  if (is_int()) return std::to_string(as_int());
  if (is_bool()) return as_bool() ? "true" : "false";
  return as_code().hex();
}

Value int_value(Word w, int width_bits) {
  Word m = width_bits >= 64 ? ~Word{0} : ((Word{1} << width_bits) - 1);
  return Value{w & m};
}

Value bool_value(bool b) { return Value{b}; }

Value code_value(ProgramCode c) { return Value{std::move(c)}; }

std::string ErrorReport::render() const {
  return "Error at " + site + "\n" + message + "\nreported at " + reporter + " in " + file +
         "\n";
}

std::uint64_t Outcome::steps() const {
  if (halted()) return as_halted().steps;
  if (errored()) return as_error().steps;
  return as_exhausted().steps;
}

std::string Outcome::describe() const {
  if (halted()) {
    const Halted& h = as_halted();
    std::string s = "Halted(steps=" + std::to_string(h.steps);
    if (h.result) s += ", result=" + h.result->text();
    return s + ")";
  }
  if (errored()) {
    const ErrorStop& e = as_error();
    return "ErrorStop(site=" + e.report.site + ", message=\"" + e.report.message + "\")";
  }
  return "BudgetExhausted(" + std::to_string(as_exhausted().steps) + ")";
}

std::string Trace::render() const {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  for (const auto& e : entries) {
    out += std::to_string(e.step);
    out += ' ';
    for (int shift = 60; shift >= 0; shift -= 4)
      out.push_back(digits[(e.fingerprint >> shift) & 0xf]);
    out += ' ';
    out += e.decl;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Machine

namespace {

// Canonical encodings of the three programs H1 is specified over.
const ProgramCode& canon_skip() {
  static const ProgramCode c = encode(programs::skip_decl());
  return c;
}
const ProgramCode& canon_loop() {
  static const ProgramCode c = encode(programs::loop_decl());
  return c;
}
const ProgramCode& canon_s1() {
  static const ProgramCode c = encode(programs::build_s1());
  return c;
}

const char* intrinsic_name(Intrinsic i) {
  switch (i) {
    case Intrinsic::H: return "H";
    case Intrinsic::H1: return "H1";
    case Intrinsic::InS1: return "InS1";
    default: return "?";
  }
}

}  // namespace

Machine::Machine(const CheckedModule& cm, const std::string& entry, const RunOptions& opts,
                 std::vector<Value> args)
    : cm_(cm), opts_(opts) {
  // the width the module was checked with governs masking; anything else
  // would desynchronize the analyzer's configuration bound
  opts_.width_bits = cm.width_bits();
  const Decl* d = cm.find_decl(entry);
  if (!d) throw RuntimeError("no declaration '" + entry + "' to run");
  if (d->params.size() != args.size())
    throw RuntimeError("entry '" + entry + "' expects " + std::to_string(d->params.size()) +
                       " argument(s), got " + std::to_string(args.size()));
  push_user_frame(d, std::move(args), false);
  micro_continue();  // settle empty bodies; charges nothing
}

Word Machine::mask(Word w) const {
  Word m = opts_.width_bits >= 64 ? ~Word{0} : ((Word{1} << opts_.width_bits) - 1);
  return w & m;
}

void Machine::push_user_frame(const Decl* decl, std::vector<Value> args, bool snapshot) {
  if (frames_.size() >= static_cast<std::size_t>(opts_.frame_cap))
    throw RuntimeError("call depth exceeds the frame cap (" +
                       std::to_string(opts_.frame_cap) + ")");
  Frame f;
  f.decl = decl;
  const DeclInfo& di = cm_.info(decl);
  f.locals.assign(di.slots.size(), std::nullopt);
  for (std::size_t i = 0; i < decl->params.size(); ++i) {
    Value v = args[i];
    if (v.is_int()) v = int_value(v.as_int(), opts_.width_bits);
    f.locals[static_cast<std::size_t>(di.slot_of.at(decl->params[i]))] = std::move(v);
  }
  if (snapshot && opts_.purity_check) f.purity_snapshot = serialize_frames(frames_.size());
  f.ctrl.push_back(CtrlEntry{CtrlEntry::Kind::Seq, &decl->body, 0, nullptr});
  frames_.push_back(std::move(f));
}

std::optional<Outcome> Machine::step() {
  if (outcome_) throw RuntimeError("step() after the run ended");
  ++steps_;
  if (pending_) {
    perform_entry();
  } else {
    begin_statement();
  }
  if (!outcome_) micro_continue();
  return outcome_;
}

// Starts executing the statement the control stack points at. The caller
// guarantees there is one (boundaries only rest at a pending statement,
// a loop re-test, or a pending enquiry entry).
void Machine::begin_statement() {
  Frame& f = frames_.back();
  if (f.work) throw std::logic_error("statement already active at a boundary");
  const Stmt* stmt = nullptr;
  CtrlEntry& top = f.ctrl.back();
  if (top.kind == CtrlEntry::Kind::Loop) {
    stmt = top.loop;  // re-test of a while guard
  } else {
    stmt = &(*top.seq)[top.idx];
  }
  StmtWork w;
  w.stmt = stmt;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          f.work = std::move(w);
          statement_done();
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          w.eval.push_back(EvalItem{x.value.get(), 0, {}});
          f.work = std::move(w);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          w.eval.push_back(EvalItem{x.arms[0].guard.get(), 0, {}});
          f.work = std::move(w);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          w.eval.push_back(EvalItem{x.guard.get(), 0, {}});
          f.work = std::move(w);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          if (x.args.empty()) {
            f.work = std::move(w);
            const CalleeRef& ref = cm_.callee_at(&x);
            push_user_frame(ref.decl, {}, false);
          } else {
            w.eval.push_back(EvalItem{x.args[0].get(), 0, {}});
            f.work = std::move(w);
          }
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          w.eval.push_back(EvalItem{x.value.get(), 0, {}});
          f.work = std::move(w);
        } else {
          static_assert(std::is_same_v<T, ErrorStmt>);
          f.work = std::move(w);
          raise_language_error(x.message, f.decl->name, stmt->loc);
        }
      },
      stmt->node);
}

// Runs expression evaluation and control flow until the next boundary:
// a statement pending, a loop re-test pending, an enquiry entry pending,
// or a terminal outcome.
void Machine::micro_continue() {
  while (!outcome_ && !pending_) {
    Frame& f = frames_.back();
    if (f.work) {
      if (progress_eval()) return;
      continue;
    }
    // no active statement: resolve exhausted sequences and finished frames
    if (f.ctrl.empty()) {
      // frame body ran out; procedures return to their caller
      if (f.decl->kind == DeclKind::Enquiry)
        throw std::logic_error("enquiry fell off the end despite return-path check");
      frames_.pop_back();
      if (frames_.empty()) {
        finish(Outcome{Halted{steps_, std::nullopt}});
        return;
      }
      statement_done();  // the call statement in the caller completes
      continue;
    }
    CtrlEntry& top = f.ctrl.back();
    if (top.kind == CtrlEntry::Kind::Loop) return;  // boundary: re-test next step
    if (top.idx >= top.seq->size()) {
      // an exhausted block belongs to the statement of the sequence
      // below it (an if-branch); that statement is now done. A loop
      // marker below means a while body finished instead: re-test.
      f.ctrl.pop_back();
      if (!f.ctrl.empty() && f.ctrl.back().kind == CtrlEntry::Kind::Seq)
        ++f.ctrl.back().idx;
      continue;
    }
    return;  // boundary: statement pending
  }
}

// Advances the active statement's expression work. Returns true when the
// step ends here (enquiry entry pending or terminal outcome).
//
// A completed root value is handed to on_root_value, which may retire the
// statement and reset the frame's work; control then goes back to
// micro_continue rather than touching the (possibly gone) work state.
bool Machine::progress_eval() {
  Frame& f = frames_.back();
  StmtWork& w = *f.work;

  enum { kKeepGoing, kEndStep, kBackToMicro };
  auto deliver = [&](Value v) -> int {
    w.eval.pop_back();
    if (w.eval.empty()) {
      on_root_value(std::move(v));
      return (outcome_ || pending_) ? kEndStep : kBackToMicro;
    }
    w.eval.back().vals.push_back(std::move(v));
    return kKeepGoing;
  };

  while (!w.eval.empty()) {
    EvalItem& item = w.eval.back();
    const Expr& e = *item.expr;
    int verdict = kKeepGoing;

    if (const auto* bin = std::get_if<BinaryExpr>(&e.node)) {
      bool shortcut = bin->op == BinOp::And || bin->op == BinOp::Or;
      if (item.next == 0) {
        item.next = 1;
        w.eval.push_back(EvalItem{bin->lhs.get(), 0, {}});
        continue;
      }
      if (item.next == 1) {
        if (shortcut) {
          if (!item.vals[0].is_bool())
            throw RuntimeError("operand of '" + std::string(bin_op_text(bin->op)) +
                               "' is not boolean");
          bool l = item.vals[0].as_bool();
          if ((bin->op == BinOp::And && !l) || (bin->op == BinOp::Or && l)) {
            verdict = deliver(bool_value(l));
            if (verdict == kKeepGoing) continue;
            return verdict == kEndStep;
          }
        }
        item.next = 2;
        w.eval.push_back(EvalItem{bin->rhs.get(), 0, {}});
        continue;
      }
      Value v;
      if (shortcut) {
        if (!item.vals[1].is_bool())
          throw RuntimeError("operand of '" + std::string(bin_op_text(bin->op)) +
                             "' is not boolean");
        v = item.vals[1];
      } else {
        v = apply_binary(bin->op, item.vals[0], item.vals[1], e.loc);
      }
      verdict = deliver(std::move(v));
      if (verdict == kKeepGoing) continue;
      return verdict == kEndStep;
    }

    if (const auto* neg = std::get_if<NotExpr>(&e.node)) {
      if (item.next == 0) {
        item.next = 1;
        w.eval.push_back(EvalItem{neg->operand.get(), 0, {}});
        continue;
      }
      if (!item.vals[0].is_bool()) throw RuntimeError("operand of 'not' is not boolean");
      verdict = deliver(bool_value(!item.vals[0].as_bool()));
      if (verdict == kKeepGoing) continue;
      return verdict == kEndStep;
    }

    if (const auto* call = std::get_if<EnquiryCall>(&e.node)) {
      if (item.next < call->args.size()) {
        const Expr* arg = call->args[item.next].get();
        ++item.next;
        w.eval.push_back(EvalItem{arg, 0, {}});
        continue;
      }
      if (item.next == call->args.size()) {
        // arguments ready: suspend here, charge the entry next step
        item.next = static_cast<std::uint32_t>(call->args.size()) + 1;
        pending_ = PendingCall{cm_.callee_at(call), call->callee, item.vals, &e};
        return true;
      }
      throw std::logic_error("enquiry call progressed past suspension");
    }

    verdict = deliver(eval_leaf(e));
    if (verdict == kKeepGoing) continue;
    return verdict == kEndStep;
  }
  return false;
}

Value Machine::eval_leaf(const Expr& e) {
  if (const auto* i = std::get_if<IntLit>(&e.node)) return int_value(i->value, opts_.width_bits);
  if (const auto* b = std::get_if<BoolLit>(&e.node)) return bool_value(b->value);
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    Frame& f = frames_.back();
    const DeclInfo& di = cm_.info(f.decl);
    const auto& slot = f.locals[static_cast<std::size_t>(di.slot_of.at(v->name))];
    if (!slot) throw RuntimeError("variable '" + v->name + "' read before assignment");
    return *slot;
  }
  if (const auto* c = std::get_if<CodeLit>(&e.node)) return code_value(cm_.code_of(c->decl_name));
  throw std::logic_error("eval_leaf on a non-leaf node");
}

Value Machine::apply_binary(BinOp op, const Value& a, const Value& b, SourceLoc loc) const {
  auto ints = [&](const char* what) {
    if (!a.is_int() || !b.is_int())
      throw RuntimeError(std::string("operand of '") + what + "' is not an integer (" +
                         std::to_string(loc.line) + ":" + std::to_string(loc.col) + ")");
  };
  switch (op) {
    case BinOp::Add: ints("+"); return int_value(a.as_int() + b.as_int(), opts_.width_bits);
    case BinOp::Sub: ints("-"); return int_value(a.as_int() - b.as_int(), opts_.width_bits);
    case BinOp::Mul: ints("*"); return int_value(a.as_int() * b.as_int(), opts_.width_bits);
    case BinOp::Mod: {
      ints("mod");
      Word d = b.as_int();
      return int_value(d == 0 ? a.as_int() : a.as_int() % d, opts_.width_bits);
    }
    case BinOp::Lt: ints("<"); return bool_value(a.as_int() < b.as_int());
    case BinOp::Le: ints("<="); return bool_value(a.as_int() <= b.as_int());
    case BinOp::Eq:
    case BinOp::Ne: {
      if (a.v.index() != b.v.index())
        throw RuntimeError("comparison of values of different kinds (" +
                           std::to_string(loc.line) + ":" + std::to_string(loc.col) + ")");
      bool eq = a == b;
      return bool_value(op == BinOp::Eq ? eq : !eq);
    }
    default:
      throw std::logic_error("apply_binary on and/or");
  }
}

// A root expression of the active statement finished evaluating.
void Machine::on_root_value(Value v) {
  Frame& f = frames_.back();
  StmtWork& w = *f.work;
  const Stmt* stmt = w.stmt;
  if (const auto* as = std::get_if<AssignStmt>(&stmt->node)) {
    const DeclInfo& di = cm_.info(f.decl);
    f.locals[static_cast<std::size_t>(di.slot_of.at(as->target))] = std::move(v);
    statement_done();
    return;
  }
  if (const auto* ifs = std::get_if<IfStmt>(&stmt->node)) {
    if (!v.is_bool()) throw RuntimeError("guard is not boolean");
    if (v.as_bool()) {
      const auto& body = ifs->arms[w.phase].body;
      f.work.reset();
      f.ctrl.push_back(CtrlEntry{CtrlEntry::Kind::Seq, &body, 0, nullptr});
      return;
    }
    if (w.phase + 1 < ifs->arms.size()) {
      ++w.phase;
      w.eval.push_back(EvalItem{ifs->arms[w.phase].guard.get(), 0, {}});
      return;
    }
    if (ifs->else_body) {
      const auto& body = *ifs->else_body;
      f.work.reset();
      f.ctrl.push_back(CtrlEntry{CtrlEntry::Kind::Seq, &body, 0, nullptr});
      return;
    }
    statement_done();
    return;
  }
  if (const auto* wh = std::get_if<WhileStmt>(&stmt->node)) {
    if (!v.is_bool()) throw RuntimeError("guard is not boolean");
    bool retest = f.ctrl.back().kind == CtrlEntry::Kind::Loop;
    if (v.as_bool()) {
      f.work.reset();
      if (!retest) f.ctrl.push_back(CtrlEntry{CtrlEntry::Kind::Loop, nullptr, 0, stmt});
      f.ctrl.push_back(CtrlEntry{CtrlEntry::Kind::Seq, &wh->body, 0, nullptr});
      return;
    }
    if (retest) f.ctrl.pop_back();  // leave the loop
    statement_done();
    return;
  }
  if (const auto* call = std::get_if<CallStmt>(&stmt->node)) {
    w.out.push_back(std::move(v));
    if (w.out.size() < call->args.size()) {
      w.eval.push_back(EvalItem{call->args[w.out.size()].get(), 0, {}});
      return;
    }
    const CalleeRef& ref = cm_.callee_at(call);
    push_user_frame(ref.decl, std::move(w.out), false);
    return;
  }
  if (std::get_if<ReturnStmt>(&stmt->node)) {
    do_return(std::move(v));
    return;
  }
  throw std::logic_error("root value for a statement without expressions");
}

// The active statement finished; advance control past it.
void Machine::statement_done() {
  Frame& f = frames_.back();
  f.work.reset();
  CtrlEntry& top = f.ctrl.back();
  if (top.kind == CtrlEntry::Kind::Loop) {
    // a while guard evaluated false during re-test was popped already;
    // reaching here with a Loop on top means the guard came back false
    throw std::logic_error("statement_done with a loop marker on top");
  }
  ++top.idx;
}

void Machine::do_return(Value v) {
  Frame& f = frames_.back();
  if (opts_.purity_check && !f.purity_snapshot.empty()) {
    std::string now = serialize_frames(frames_.size() - 1);
    if (now != f.purity_snapshot)
      throw std::logic_error("enquiry evaluation disturbed its caller's state");
  }
  frames_.pop_back();
  if (frames_.empty()) {
    finish(Outcome{Halted{steps_, std::move(v)}});
    return;
  }
  // deliver into the suspended enquiry-call item
  Frame& caller = frames_.back();
  if (!caller.work || caller.work->eval.empty())
    throw std::logic_error("return with no suspended caller expression");
  StmtWork& w = *caller.work;
  w.eval.pop_back();
  if (w.eval.empty()) {
    on_root_value(std::move(v));
    return;
  }
  w.eval.back().vals.push_back(std::move(v));
}

void Machine::perform_entry() {
  PendingCall pc = std::move(*pending_);
  pending_.reset();
  if (pc.ref.intr != Intrinsic::None) {
    std::string snapshot;
    if (opts_.purity_check) snapshot = serialize_frames(frames_.size());
    std::optional<Value> result = run_intrinsic(pc);
    if (!result) return;  // the intrinsic raised
    if (opts_.purity_check && serialize_frames(frames_.size()) != snapshot)
      throw std::logic_error("intrinsic evaluation disturbed its caller's state");
    Frame& caller = frames_.back();
    StmtWork& w = *caller.work;
    w.eval.pop_back();  // the awaiting enquiry-call item
    if (w.eval.empty()) {
      on_root_value(std::move(*result));
      return;
    }
    w.eval.back().vals.push_back(std::move(*result));
    return;
  }
  push_user_frame(pc.ref.decl, std::move(pc.args), true);
}

bool Machine::in_s1_scan(const std::string& target) const {
  // frames strictly below the current intrinsic frame
  for (std::size_t i = 0; i + 1 < frames_.size(); ++i)
    if (frames_[i].decl && frames_[i].decl->name == target) return true;
  return false;
}

// Executes an intrinsic enquiry inside the current step. Transient frames
// keep the dynamic chain honest for InS1. Returns nullopt after raising.
std::optional<Value> Machine::run_intrinsic(const PendingCall& pc) {
  Frame intr;
  intr.intr = pc.ref.intr;
  frames_.push_back(std::move(intr));
  std::optional<Value> out;
  switch (pc.ref.intr) {
    case Intrinsic::InS1:
      out = bool_value(in_s1_scan("S1"));
      break;
    case Intrinsic::H1: {
      if (!pc.args[0].is_code())
        throw RuntimeError("H1 expects a program code");
      const ProgramCode& p = pc.args[0].as_code();
      if (p == canon_skip()) {
        out = bool_value(true);
      } else if (p == canon_loop()) {
        out = bool_value(false);
      } else if (p == canon_s1()) {
        Frame ins1;
        ins1.intr = Intrinsic::InS1;
        frames_.push_back(std::move(ins1));
        bool within = in_s1_scan("S1");
        frames_.pop_back();
        if (within) {
          raise_language_error("Cannot terminate", "H1", pc.site->loc);
        } else {
          out = bool_value(false);
        }
      } else {
        raise_language_error("Invalid program", "H1", pc.site->loc);
      }
      break;
    }
    case Intrinsic::H: {
      if (!opts_.halt_table)
        throw RuntimeError("the enquiry H needs a halt map for this run");
      if (!pc.args[0].is_code()) throw RuntimeError("H expects a program code");
      auto it = opts_.halt_table->find(pc.args[0].as_code());
      if (it == opts_.halt_table->end())
        throw MissingKeyError("program code " + pc.args[0].as_code().hex() +
                              " is not in the halt map");
      out = bool_value(it->second);
      break;
    }
    default:
      throw std::logic_error("unknown intrinsic");
  }
  if (!outcome_) frames_.pop_back();
  return out;
}

void Machine::raise_language_error(const std::string& message, const std::string& reporter,
                                   SourceLoc loc) {
  ErrorReport r;
  r.message = message;
  r.reporter = reporter;
  r.file = cm_.module().source_name;
  r.loc = loc;
  r.site = "?";
  for (std::size_t i = frames_.size(); i-- > 0;) {
    if (frames_[i].decl) {
      r.site = frames_[i].decl->name;
      break;
    }
  }
  finish(Outcome{ErrorStop{std::move(r), steps_}});
}

std::string Machine::current_decl() const {
  for (std::size_t i = frames_.size(); i-- > 0;)
    if (frames_[i].decl) return frames_[i].decl->name;
  return "-";
}

// ---------------------------------------------------------------------------
// Serialization. Everything behaviour-relevant goes in: frames with their
// control stacks, active statement work, evaluation stacks with partial
// values, locals in sorted slot order, and any pending enquiry entry.

namespace {

void put_value(std::string& out, const Value& v) {
  if (v.is_int()) {
    out += 'i';
    out += std::to_string(v.as_int());
  } else if (v.is_bool()) {
    out += v.as_bool() ? "bt" : "bf";
  } else {
    out += 'c';
    out += v.as_code().hex();
  }
}

}  // namespace

std::string Machine::serialize_frames(std::size_t count) const {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    const Frame& f = frames_[i];
    out += "f(";
    out += f.decl ? f.decl->name : intrinsic_name(f.intr);
    out += ")[";
    for (const auto& c : f.ctrl) {
      if (c.kind == CtrlEntry::Kind::Seq) {
        out += 's';
        out += std::to_string(cm_.node_id(c.seq));
        out += '@';
        out += std::to_string(c.idx);
      } else {
        out += 'L';
        out += std::to_string(cm_.node_id(c.loop));
      }
      out += ',';
    }
    out += '|';
    if (f.work) {
      out += 'w';
      out += std::to_string(cm_.node_id(f.work->stmt));
      out += 'p';
      out += std::to_string(f.work->phase);
      out += '(';
      for (const auto& v : f.work->out) {
        put_value(out, v);
        out += ',';
      }
      out += ')';
      for (const auto& item : f.work->eval) {
        out += 'e';
        out += std::to_string(cm_.node_id(item.expr));
        out += '@';
        out += std::to_string(item.next);
        out += '(';
        for (const auto& v : item.vals) {
          put_value(out, v);
          out += ',';
        }
        out += ')';
      }
    }
    out += '|';
    for (const auto& slot : f.locals) {
      if (slot) put_value(out, *slot);
      else out += '_';
      out += ',';
    }
    out += ']';
  }
  return out;
}

std::string Machine::serialize() const {
  if (outcome_) {
    if (outcome_->halted()) return "terminal:halted";
    if (outcome_->errored()) return "terminal:error";
    return "terminal:budget";
  }
  std::string out = serialize_frames(frames_.size());
  if (pending_) {
    out += "pending:";
    out += pending_->name;
    out += std::to_string(cm_.node_id(pending_->site));
    out += '(';
    for (const auto& v : pending_->args) {
      put_value(out, v);
      out += ',';
    }
    out += ')';
  }
  return out;
}

// ---------------------------------------------------------------------------

RunResult run(const CheckedModule& cm, const std::string& entry, const RunOptions& opts,
              std::vector<Value> args) {
  if (opts.budget < 1) throw RuntimeError("budget must be at least 1");
  Machine mc(cm, entry, opts, std::move(args));
  Trace trace;
  auto record = [&]() {
    trace.entries.push_back(TraceEntry{mc.steps(), mc.fingerprint(), mc.current_decl()});
  };
  if (mc.done()) {
    // degenerate entry (empty body): halted before the first step
    trace.steps = 0;
    trace.entries.push_back(TraceEntry{0, fnv1a("terminal:halted"), "-"});
    return RunResult{Outcome{Halted{0, std::nullopt}}, std::move(trace)};
  }
  record();
  while (mc.steps() < opts.budget) {
    std::optional<Outcome> out = mc.step();
    if (out) {
      trace.steps = mc.steps();
      trace.entries.push_back(TraceEntry{mc.steps(), fnv1a(mc.serialize()), "-"});
      return RunResult{std::move(*out), std::move(trace)};
    }
    record();
  }
  trace.steps = mc.steps();
  return RunResult{Outcome{BudgetExhausted{mc.steps()}}, std::move(trace)};
}

RunResult run(const ModuleAst& m, const std::string& entry, const RunOptions& opts) {
  CheckedModule cm = check(m, opts.width_bits);
  return run(cm, entry, opts);
}

}  // namespace haltlab
