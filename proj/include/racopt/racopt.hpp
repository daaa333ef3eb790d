// racopt.hpp -- umbrella header

#pragma once

#include "core.hpp"        // IWYU pragma: export
#include "improve.hpp"     // IWYU pragma: export
#include "json_io.hpp"     // IWYU pragma: export
#include "optimality.hpp"  // IWYU pragma: export
#include "rational.hpp"    // IWYU pragma: export
#include "value.hpp"       // IWYU pragma: export
