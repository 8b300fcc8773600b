#pragma once

namespace reliab {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// a > 0, x >= 0. Series / continued-fraction split at x = a + 1.
double reg_gamma_lower(double a, double x);
double reg_gamma_upper(double a, double x);

// Survivor of the standard normal at z, i.e. P(Z > z).
double normal_survivor(double z);

}  // namespace reliab
