#ifndef PTNORM_PSEUDO_NORM_HPP
#define PTNORM_PSEUDO_NORM_HPP

#include <complex>
#include <functional>
#include <vector>

#include "ptnorm/models.hpp"
#include "ptnorm/quadrature.hpp"

namespace ptnorm {

/// Outcome of the three-case analysis for a pair of (possibly complex)
/// energies under the conservation law.
enum class PairClass {
    OrthogonalityForced,    ///< integral must vanish
    NormLike,               ///< equal real energies: normalization integral
    ConjugatePairNormLike,  ///< E2 = E1* complex: role-swapped normalization
};

PairClass classify_pair(std::complex<double> E1, std::complex<double> E2,
                        double tol);

/// A decaying complex function on the real line together with a log-scale
/// envelope bound used for truncation.
struct LineFunction {
    std::function<std::complex<double>(double)> value;
    std::function<double(double)> log_envelope;  // bound on log |f| at |x|
};

LineFunction as_line_function(const Eigenstate& state);

/// Integral over the real line of u2*(-x) u1(x), truncated where both
/// envelopes fall below tol/100 (radius inflated 1.5x) and integrated
/// adaptively to estimated absolute error <= tol. Throws Divergent when the
/// decay pre-scan fails and NoConvergence on budget exhaustion.
QuadResult pseudo_inner(const LineFunction& u1, const LineFunction& u2,
                        double tol);
QuadResult pseudo_inner(const Eigenstate& u1, const Eigenstate& u2,
                        double tol);

/// Truncation radius that pseudo_inner would use for this pair.
double pseudo_inner_cutoff(const Eigenstate& u1, const Eigenstate& u2,
                           double tol);

/// Throws NonRealNorm unless |Im raw| <= 100 tol |Re raw|.
void ensure_real_norm(std::complex<double> raw, double tol);

/// Returns a copy of the state with norm_mag set so that the pseudo-norm
/// equals the quasi-parity q. Throws SignMismatch if the measured sign of
/// the raw pseudo-norm differs from q, NonRealNorm if it is not real.
Eigenstate normalize(const Eigenstate& state, double tol);

/// Gram matrix of pairwise pseudo-inner-products of normalized states,
/// G[i][j] = <u_i, u_j>_PT with rows indexing the conjugated-reflected
/// factor. Entries may be computed in parallel with jobs > 1.
struct GramResult {
    int size = 0;
    std::vector<std::complex<double>> entries;  // row-major
    std::vector<double> errors;                 // per-entry abs_err

    std::complex<double> at(int i, int j) const {
        return entries[static_cast<size_t>(i) * size + j];
    }
    double max_offdiag() const;
};

GramResult gram(const ModelSpec& model, const std::vector<StateLabel>& labels,
                double tol, int jobs = 1);

/// I = integral over (1, inf) of (t-1)^lam (t+1)^mu [P_n^(lam,mu)(t)]^2 dt.
/// Requires lam > -1 and lam + mu + 2n < -1; throws Divergent otherwise.
double jacobi_weight_integral(double lam, double mu, int n, double tol);

/// |pseudo-norm at the state's own shift c  -  pseudo-norm at shift c2|
/// for an oscillator state with coefficient 1. Analyticity predicts 0.
double contour_shift_check(const Eigenstate& state, double c2, double tol);

}  // namespace ptnorm

#endif  // PTNORM_PSEUDO_NORM_HPP
