#pragma once

#include "manakov/system.hpp"

namespace manakov {

// Three-component benchmark on [-4 pi, 4 pi]: unit dispersion, banded
// coupling, real cosine-modulated initial data.  The first two components
// carry equal mass; the third twice as much.
ManakovProblem problem_manakov1();

// Three-component vector-soliton benchmark on [-20, 85]: half dispersion,
// uniform coupling 5/3, sech profiles travelling with speeds (1, 0.1, -1).
ManakovProblem problem_manakov2();

// Lookup by name ("manakov1" | "manakov2"); throws std::invalid_argument
// for anything else.
ManakovProblem problem_by_name(const std::string& name);

}  // namespace manakov
