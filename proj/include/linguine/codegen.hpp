#pragma once

#include <string>

#include "linguine/ssa.hpp"

namespace linguine {

struct EmitOptions {
    bool annotate = false;  // append "# line N" source-line trailers
};

// Emits readable Python from verified SSA. Variable versions of the same
// base collapse to one snake_case identifier; phi nodes become copies at the
// predecessor ends (almost always self-copies, which are dropped). Output is
// deterministic: identical SSA yields identical text.
std::string emit_python(const ssa::SsaProgram& prog,
                        const EmitOptions& opts = {});

}  // namespace linguine
