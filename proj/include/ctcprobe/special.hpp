#pragma once

namespace ctcprobe {

/// Complementary error function, relative accuracy <= 1e-12 over |x| <= 10.
double erfc(double x);

/// Trigamma psi_1(x) = sum_{k>=0} 1/(k+x)^2 for x > 0. Used for exact tails of
/// flat-space image sums, sum_{n>N} (nL - z)^{-2} = psi_1(N+1 - z/L)/L^2.
double trigamma(double x);

}  // namespace ctcprobe
