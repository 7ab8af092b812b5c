#pragma once

#include <vector>

#include "qmem/harness/registry.hpp"

namespace qmem::harness {

std::vector<ExperimentInfo> builtin_experiments();

}  // namespace qmem::harness
