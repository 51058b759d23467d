#pragma once

#include "architecture.hpp"
#include "condition.hpp"
#include "ising.hpp"
#include "reduction.hpp"
#include "solver.hpp"
#include "truth_table.hpp"

namespace bent {

inline constexpr const char* version = "0.1.0";

}  // namespace bent
