#pragma once

#include <string>

#include "haltlab/ast.hpp"
#include "haltlab/encode.hpp"

namespace haltlab {
namespace programs {

// The canonical program set. Skip halts at once; Loop never does; the
// self-referential programs observe their own halting verdict and do the
// opposite. S invokes an abstract halt test named by the caller; S1
// invokes the built-in H1 and actually runs.

Decl skip_decl();
Decl loop_decl();

/// procedure S if h_name(code(S)) then loop_name() end end
Decl build_s(const std::string& h_name, const std::string& loop_name);

/// procedure S1 if H1(code(S1)) then Loop() end end
Decl build_s1();

/// {Skip, Loop}: the homely set with one consistent halt map.
ModuleAst l0_module();

/// {Skip, Loop, S}: adding self-reference removes every model.
ModuleAst l1_module();

/// {Skip, Loop, S1}: the executable variant with the amended halt test.
ModuleAst l2_module();

}  // namespace programs
}  // namespace haltlab
