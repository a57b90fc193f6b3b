#pragma once

#include <vector>

namespace alcove {

// Elementary divisors d_1 | d_2 | ... | d_r (nonnegative, divisibility chain)
// of an integer matrix.  Entries stay well inside 64 bits for the matrices we
// feed in (rank <= 16, coefficients O(level * rank)).
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m);

} // namespace alcove
