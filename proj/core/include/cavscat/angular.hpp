#pragma once

namespace cavscat {

// Wigner 3j symbol by the closed Racah sum. Arguments may be half-integral;
// anything that is not a half-integer is rejected. Symbols violating the
// selection rules evaluate to exactly zero.
double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3);

}  // namespace cavscat
