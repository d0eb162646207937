#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "haltlab/ast.hpp"
#include "haltlab/encode.hpp"

namespace haltlab {

enum class Intrinsic : std::uint8_t { None, H, H1, InS1 };

/// Static type of a variable or expression. Mixed means both worlds were
/// observed; Unknown means nothing constrained it yet.
enum class VarType : std::uint8_t { Unknown, Int, Bool, Code, Mixed };

VarType join_types(VarType a, VarType b);

namespace detail {
struct ModuleChecker;
}

struct CalleeRef {
  const Decl* decl = nullptr;  // null for intrinsics
  Intrinsic intr = Intrinsic::None;
  DeclKind kind = DeclKind::Procedure;
  size_t arity = 0;
};

/// Per-declaration facts computed by check(): slot layout (sorted name
/// order), inferred slot types, and the control-state counts backing the
/// analyzer's pigeonhole bound.
struct DeclInfo {
  const Decl* decl = nullptr;
  std::vector<std::string> slots;
  std::unordered_map<std::string, int> slot_of;
  std::vector<VarType> slot_type;
  VarType return_type = VarType::Unknown;  // enquiries only

  // Static counts for the configuration-space bound:
  std::uint64_t control_states = 0;     // statement-boundary control states
  std::uint64_t suspension_states = 0;  // pending-enquiry states, value slots included
  std::vector<const Decl*> callees;     // user declarations invoked anywhere
};

/// A module that passed all static checks, with resolution results and
/// stable node numbering for configuration serialization. Owns its own
/// copy of the AST, so the argument to check() may be discarded.
class CheckedModule {
public:
  const ModuleAst& module() const { return *module_; }

  const DeclInfo& info(const std::string& name) const;
  const DeclInfo& info(const Decl* d) const { return info(d->name); }
  const Decl* find_decl(const std::string& name) const { return module_->find(name); }

  /// Resolution for a call site (CallStmt or EnquiryCall node address).
  const CalleeRef& callee_at(const void* site) const;

  /// Precomputed encoding for code(Name) literals and model keys.
  const ProgramCode& code_of(const std::string& decl_name) const;

  /// Stable id for a statement, expression, or statement list.
  int node_id(const void* node) const;

  int width_bits() const { return width_bits_; }

private:
  friend struct detail::ModuleChecker;
  std::shared_ptr<const ModuleAst> module_;
  int width_bits_ = 8;
  std::map<std::string, DeclInfo> infos_;
  std::unordered_map<const void*, CalleeRef> callees_;
  std::unordered_map<const void*, int> node_ids_;
  std::map<std::string, ProgramCode> codes_;
};

/// Runs every static check and builds the resolved view. The module must
/// outlive the result. Throws NameError / KindError.
///
/// width_bits only affects the suspension-state counts used for the
/// pigeonhole bound; the checks themselves are width-independent.
CheckedModule check(const ModuleAst& m, int width_bits = 8);

}  // namespace haltlab
