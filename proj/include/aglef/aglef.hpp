#pragma once

// Single entry point: exact polynomial arithmetic, apolarity invariants,
// Lefschetz deciders, the binomial classification and the sweep harness.

#include <aglef/harness.hpp>
