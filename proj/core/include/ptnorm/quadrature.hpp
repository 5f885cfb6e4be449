#ifndef PTNORM_QUADRATURE_HPP
#define PTNORM_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace ptnorm {

/// Complex integral value with an estimated absolute error bound and the
/// number of integrand evaluations spent.
struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double abs_err = 0.0;
    long evaluations = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive bisection with an embedded 7/15 Gauss-Kronrod rule per panel;
/// the panel error is the modulus of the difference between the two orders.
/// Throws NoConvergence if the target is not met within max_evals.
QuadResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                              double abs_tol, long max_evals = 2'000'000);

}  // namespace ptnorm

#endif  // PTNORM_QUADRATURE_HPP
