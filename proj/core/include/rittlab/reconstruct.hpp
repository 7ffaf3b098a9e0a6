#pragma once

/**
 * @file reconstruct.hpp
 * @brief Continued-fraction reconstruction of exact rationals from
 *        floating-point approximations.
 *
 * Returns nothing unless a convergent with denominator within the bound
 * lands inside the tolerance; callers re-verify every reconstructed value
 * exactly, so a miss only costs a candidate, never correctness.
 */

#include <complex>
#include <cstdint>
#include <optional>

#include "rittlab/gq.hpp"

namespace rittlab {

std::optional<BigRat> reconstruct_rational(long double x, std::int64_t den_bound,
                                           long double tol);

std::optional<GQ> reconstruct_gq(const std::complex<long double>& z, std::int64_t den_bound,
                                 long double tol);

} // namespace rittlab
