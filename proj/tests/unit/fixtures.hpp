#pragma once

#include "shankslab/zeros.hpp"

namespace fixtures {

// Computed once per process.
const shankslab::ZeroTable& table_1000();
const shankslab::ZeroTable& table_10k();

}  // namespace fixtures
