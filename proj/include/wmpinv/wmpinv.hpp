#pragma once

// Weighted Moore-Penrose inverses by column-partitioning recursions.

#include "error.hpp"       // IWYU pragma: export
#include "field.hpp"       // IWYU pragma: export
#include "matio.hpp"       // IWYU pragma: export
#include "matrix.hpp"      // IWYU pragma: export
#include "partition.hpp"   // IWYU pragma: export
#include "poly_gcd.hpp"    // IWYU pragma: export
#include "polynomial.hpp"  // IWYU pragma: export
#include "ratfun.hpp"      // IWYU pragma: export
#include "rational.hpp"    // IWYU pragma: export
#include "verify.hpp"      // IWYU pragma: export
