// Test-only oracles, kept independent of the library's evaluation paths:
// direct monomial expansions for the polynomial kernels, a tanh-sinh rule
// for singular-endpoint integrals, and an independent potential evaluation.
#ifndef PTNORM_TESTS_ORACLES_HPP
#define PTNORM_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

// generalized binomial coefficient C(nu, k) as a product
inline double binom(double nu, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= (nu - k + j) / j;
    return r;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// L_n^(a)(z) = sum_k (-1)^k / k! * C(n + a, n - k) z^k
inline std::complex<double> laguerre_expansion(int n, double a,
                                               std::complex<double> z) {
    std::complex<double> total{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        double coef = 1.0 / factorial(k);
        for (int j = 1; j <= n - k; ++j) coef *= (a + k + j) / j;
        std::complex<double> zk{1.0, 0.0};
        for (int j = 0; j < k; ++j) zk *= z;
        total += ((k % 2 == 0) ? coef : -coef) * zk;
    }
    return total;
}

// P_n^(lam,mu)(z) = 2^-n sum_k C(n+lam, k) C(n+mu, n-k) (z-1)^(n-k) (z+1)^k
inline std::complex<double> jacobi_expansion(int n, double lam, double mu,
                                             std::complex<double> z) {
    std::complex<double> total{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        std::complex<double> term{binom(n + lam, k) * binom(n + mu, n - k),
                                  0.0};
        for (int j = 0; j < n - k; ++j) term *= z - 1.0;
        for (int j = 0; j < k; ++j) term *= z + 1.0;
        total += term;
    }
    return total * std::pow(2.0, -n);
}

// tanh-sinh (double exponential) quadrature on (0, 1); tolerates integrable
// endpoint singularities. Refines the trapezoid step until two consecutive
// levels agree.
inline double tanh_sinh_01(const std::function<double(double)>& f,
                           double rel_tol = 1e-12) {
    const double umax = 3.8;
    double prev = 0.0;
    for (int level = 4; level <= 11; ++level) {
        const int half_n = 1 << level;
        const double h = umax / half_n;
        double sum = 0.0;
        for (int k = -half_n; k <= half_n; ++k) {
            const double u = k * h;
            const double s = std::sinh(u) * (M_PI / 2.0);
            const double x = 0.5 * (1.0 + std::tanh(s));
            const double w =
                (M_PI / 4.0) * std::cosh(u) / std::pow(std::cosh(s), 2);
            if (x <= 0.0 || x >= 1.0 || w == 0.0) continue;
            sum += w * f(x);
        }
        sum *= h;
        if (level > 4 && std::fabs(sum - prev) <=
                             rel_tol * (std::fabs(sum) + 1e-300)) {
            return sum;
        }
        prev = sum;
    }
    return prev;
}

// gpt potential assembled from real hyperbolic identities:
// sinh(x - ig) = sinh x cos g - i cosh x sin g,
// cosh(x - ig) = cosh x cos g - i sinh x sin g.
inline std::complex<double> gpt_potential_independent(double A, double B,
                                                      double g, double x) {
    const std::complex<double> sh{std::sinh(x) * std::cos(g),
                                  -std::cosh(x) * std::sin(g)};
    const std::complex<double> ch{std::cosh(x) * std::cos(g),
                                  -std::sinh(x) * std::sin(g)};
    const std::complex<double> csch = 1.0 / sh;
    return (B * B + A * (A + 1.0)) * csch * csch -
           B * (2.0 * A + 1.0) * csch * (ch / sh);
}

}  // namespace oracles

#endif  // PTNORM_TESTS_ORACLES_HPP
