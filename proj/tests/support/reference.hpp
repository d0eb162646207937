#pragma once

// A deliberately naive tree-walking evaluator for the call-free corpus
// fragment, written independently of the library's machine. It mirrors the
// step accounting (one per statement execution, while re-tests included)
// so outcomes, final stores and step counts can be compared exactly.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "haltlab/ast.hpp"

namespace haltlab {
namespace testref {

struct RefResult {
  enum class Kind { Halted, Exhausted, Error } kind = Kind::Halted;
  std::map<std::string, std::uint64_t> ints;
  std::map<std::string, bool> bools;
  std::uint64_t steps = 0;
  std::string error_message;
};

class RefEval {
public:
  RefEval(int width_bits, std::uint64_t max_steps)
      : mask_(width_bits >= 64 ? ~std::uint64_t{0}
                               : ((std::uint64_t{1} << width_bits) - 1)),
        max_steps_(max_steps) {}

  RefResult run(const ModuleAst& m, const std::string& entry) {
    const Decl* d = m.find(entry);
    if (!d || !d->params.empty()) throw std::logic_error("reference: bad entry");
    out_ = RefResult{};
    try {
      exec_body(d->body);
      out_.kind = RefResult::Kind::Halted;
    } catch (const StopBudget&) {
      out_.kind = RefResult::Kind::Exhausted;
    } catch (const StopError& e) {
      out_.kind = RefResult::Kind::Error;
      out_.error_message = e.message;
    }
    return out_;
  }

private:
  struct StopBudget {};
  struct StopError {
    std::string message;
  };
  using V = std::variant<std::uint64_t, bool>;

  void charge() {
    if (out_.steps == max_steps_) throw StopBudget{};
    ++out_.steps;
  }

  void exec_body(const std::vector<Stmt>& body) {
    for (const auto& s : body) exec_stmt(s);
  }

  void exec_stmt(const Stmt& s) {
    if (std::holds_alternative<SkipStmt>(s.node)) {
      charge();
      return;
    }
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      charge();
      V v = eval(*a->value);
      if (std::holds_alternative<std::uint64_t>(v))
        out_.ints[a->target] = std::get<std::uint64_t>(v);
      else
        out_.bools[a->target] = std::get<bool>(v);
      return;
    }
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      charge();
      for (const auto& arm : i->arms) {
        if (std::get<bool>(eval(*arm.guard))) {
          exec_body(arm.body);
          return;
        }
      }
      if (i->else_body) exec_body(*i->else_body);
      return;
    }
    if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
      charge();  // first guard test
      while (std::get<bool>(eval(*w->guard))) {
        exec_body(w->body);
        charge();  // re-test
      }
      return;
    }
    if (const auto* e = std::get_if<ErrorStmt>(&s.node)) {
      charge();
      throw StopError{e->message};
    }
    throw std::logic_error("reference: unsupported statement for this corpus");
  }

  V eval(const Expr& e) {
    if (const auto* i = std::get_if<IntLit>(&e.node)) return V{i->value & mask_};
    if (const auto* b = std::get_if<BoolLit>(&e.node)) return V{b->value};
    if (const auto* v = std::get_if<VarRef>(&e.node)) {
      auto it = out_.ints.find(v->name);
      if (it != out_.ints.end()) return V{it->second};
      return V{out_.bools.at(v->name)};
    }
    if (const auto* n = std::get_if<NotExpr>(&e.node))
      return V{!std::get<bool>(eval(*n->operand))};
    const auto& bin = std::get<BinaryExpr>(e.node);
    if (bin.op == BinOp::And) {
      bool l = std::get<bool>(eval(*bin.lhs));
      return V{l && std::get<bool>(eval(*bin.rhs))};
    }
    if (bin.op == BinOp::Or) {
      bool l = std::get<bool>(eval(*bin.lhs));
      return V{l || std::get<bool>(eval(*bin.rhs))};
    }
    V lv = eval(*bin.lhs);
    V rv = eval(*bin.rhs);
    switch (bin.op) {
      case BinOp::Add:
        return V{(std::get<std::uint64_t>(lv) + std::get<std::uint64_t>(rv)) & mask_};
      case BinOp::Sub:
        return V{(std::get<std::uint64_t>(lv) - std::get<std::uint64_t>(rv)) & mask_};
      case BinOp::Mul:
        return V{(std::get<std::uint64_t>(lv) * std::get<std::uint64_t>(rv)) & mask_};
      case BinOp::Mod: {
        std::uint64_t l = std::get<std::uint64_t>(lv), r = std::get<std::uint64_t>(rv);
        return V{r == 0 ? l : l % r};
      }
      case BinOp::Lt:
        return V{std::get<std::uint64_t>(lv) < std::get<std::uint64_t>(rv)};
      case BinOp::Le:
        return V{std::get<std::uint64_t>(lv) <= std::get<std::uint64_t>(rv)};
      case BinOp::Eq:
        return V{lv == rv};
      case BinOp::Ne:
        return V{lv != rv};
      default:
        throw std::logic_error("reference: unreachable operator");
    }
  }

  std::uint64_t mask_;
  std::uint64_t max_steps_;
  RefResult out_;
};

}  // namespace testref
}  // namespace haltlab
