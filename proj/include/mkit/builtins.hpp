#pragma once

#include <string>
#include <vector>

#include "mkit/algebra.hpp"

namespace mkit {

/// Names of the built-in algebras.
std::vector<std::string> builtin_names();

/// Look up a built-in algebra by name; throws ValidationError when unknown.
FiniteAlgebra builtin_algebra(const std::string& name);

}  // namespace mkit
