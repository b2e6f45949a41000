#pragma once

#include <covsys/io.hpp>

namespace covctl::presets
{

/// Heisenberg Z_n x Z_n with the delta state and n copies of the clock-shift
/// representation U(a,b) = X^b Z^a (x) 1.
covsys::io::json heisenberg(long n);

/// Z_2 swapping the two points of C({0,1}), state from the vector e_0 in C^2.
covsys::io::json z2_swap();

/// Dispatches on the --preset name; throws InputError for unknown names.
covsys::io::json system(const std::string &name, long n);

} // namespace covctl::presets
