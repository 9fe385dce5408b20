#pragma once

// Constants the theory leaves as "O(1)" or "large enough". Each value below
// was produced by the calibrate utility (tests/calibrate.cpp) and frozen.

namespace toeplitz::constants {

/// ||Q||_HS <= C1 N is treated as the typical event.
inline constexpr double kC1 = 2.0;

/// Additive constant C in phi(z) = ln|a| + max(ln|zeta_-|, 0) + C/N.
/// Pilot: N = 100, 1000 trials, delta = N^-2.6, a = 1+i, b = 0.5; largest
/// excess of ln|det(P_delta - z)| over N phi with C = 0 was 0.387.
inline constexpr double kPhiC = 1.0;

/// delta_0 in the counting error N^{delta_0}(1/r + ln N) and in eps = 2 N^{delta_0}/N.
inline constexpr double kDelta0 = 0.2;

/// O(1) in the gate |zeta_-| <= 1 - (kappa/N)(ln N + O(1)) for interior lower bounds.
inline constexpr double kGateOffset = 1.0;

/// Constant in the smallness hypothesis |E_mp^0| <= C delta F_N(|zeta_-|).
inline constexpr double kSmallnessC = 1.0;

/// Acceptance constant for the counting error bound: twice the largest
/// |count - N/4| / (N^0.2 (1/r + ln N)) over 50 trials at N = 100 and 200,
/// delta = N^-2.6, quarter arc, r = max(0.15, 4 ln N / N). Pilot maximum 0.7539.
inline constexpr double kCAcc = 1.508;

/// c0 in c0^{-1} F_N(|zeta_-|) <= |Z| <= c0 F_N(|zeta_-|). Sweep over
/// N in {20, 50, 100, 200}, |zeta_-| in [0.75, 1), interior z at distance
/// >= 0.1 from the focal segment: largest two-sided ratio 7.0847.
inline constexpr double kZNormC0 = 7.085;

/// c0 in |zeta_+ - zeta_-| >= c0 (|z-c| + |z+c| - 2|c|)^{1/2} on |z| <= 3(|a|+|b|)
/// minus the 0.1-neighbourhood of the focal segment; minimum over a 200 x 200
/// grid for a = 1+i, b = 0.5 was 0.93929.
inline constexpr double kRootGapC0 = 0.9392;

}  // namespace toeplitz::constants
