#pragma once

#include "toeplitz/core.hpp"

namespace toeplitz {

/// F_n(t) = 1 + t + ... + t^{n-1}. Closed form (1 - t^n)/(1 - t) away from
/// t = 1, direct Horner summation within 1e-6 of it, so F_n(1) = n exactly.
Complex F_geom(int n, Complex t);

/// Real-argument version, used by the norm bounds.
double F_geom(int n, double t);

}  // namespace toeplitz
