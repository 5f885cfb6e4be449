#ifndef PTNORM_SPECIAL_FUNCTIONS_HPP
#define PTNORM_SPECIAL_FUNCTIONS_HPP

#include <complex>

namespace ptnorm::specfn {

/// Real Gamma function. Lanczos rational approximation, reflection formula
/// for x < 1/2. Relative error <= 1e-13 over |x| <= 50.
/// Throws PoleError at zero and negative integers.
double gamma(double x);

/// sin(pi x) and cos(pi x) with exact integer/half-integer range reduction.
double sin_pi(double x);
double cos_pi(double x);

/// Generalized Laguerre polynomial L_n^(a)(z), forward recurrence.
/// Any real a is accepted, including negative non-integers. n <= 64.
std::complex<double> laguerre(int n, double a, std::complex<double> z);

/// Jacobi polynomial P_n^(lam,mu)(z), forward recurrence. n <= 64.
/// Throws DegenerateRecurrence if an intermediate denominator vanishes.
std::complex<double> jacobi(int n, double lam, double mu,
                            std::complex<double> z);

}  // namespace ptnorm::specfn

#endif  // PTNORM_SPECIAL_FUNCTIONS_HPP
