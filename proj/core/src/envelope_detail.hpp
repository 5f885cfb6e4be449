#ifndef PTNORM_SRC_ENVELOPE_DETAIL_HPP
#define PTNORM_SRC_ENVELOPE_DETAIL_HPP

#include <cmath>

namespace ptnorm::detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Sum of |monomial coefficients| of L_n^(a); |L_n^(a)(w)| <= C * max(1,|w|)^n.
inline double laguerre_coeff_bound(int n, double a) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double term = 1.0 / factorial(k);
        for (int j = 1; j <= n - k; ++j) term *= std::fabs((a + k + j) / j);
        sum += term;
    }
    return sum;
}

// Sum over k of |binom(n+lam,k) binom(n+mu,n-k)|;
// |P_n^(lam,mu)(z)| <= C * ((|z|+1)/2)^n.
inline double jacobi_coeff_bound(int n, double lam, double mu) {
    auto abs_binom = [](double nu, int k) {
        double r = 1.0;
        for (int j = 1; j <= k; ++j) r *= std::fabs((nu - k + j) / j);
        return r;
    };
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        sum += abs_binom(n + lam, k) * abs_binom(n + mu, n - k);
    }
    return sum;
}

}  // namespace ptnorm::detail

#endif  // PTNORM_SRC_ENVELOPE_DETAIL_HPP
