#pragma once

#include "decmul/words.hpp"

namespace decmul {

// Fast internal consistency sweep: field identities, transform round trips,
// convolutions against direct summation, CRT recomposition, base division,
// carry recovery, and small end-to-end products. Prints one key=value line per
// suite and returns the number of failed checks (0 = healthy).
//
// corrupt_a_table deliberately flips one root-table entry in a locally built
// plan before checking it, to demonstrate that corruption is caught; the
// expected result is then a nonzero count.
int run_selftest(AdjustStrategy strategy, bool corrupt_a_table);

}  // namespace decmul
