#pragma once

#include <cstdint>
#include <random>

#include "dcft/random_complex.hpp"

namespace testing_support {

using dcft::KnownComplex;

inline KnownComplex random_known_complex(std::mt19937& rng, std::size_t top, std::size_t max_pieces = 3, long bound = 10,
                                         int steps = 4)
{
    dcft::ComplexRng r(rng());
    return dcft::random_known_complex(r, top, max_pieces, bound, steps);
}

}  // namespace testing_support
