#pragma once

#include <string>

#include "rgrad/engine.hpp"

namespace rgrad {

/// Path of the first field where the two records differ, empty if equal.
std::string record_difference(const StageRecord& expected, const StageRecord& actual);

}  // namespace rgrad
