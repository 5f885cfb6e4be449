#ifndef PTNORM_MODELS_HPP
#define PTNORM_MODELS_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>

namespace ptnorm {

// Three exactly solvable complex potentials with PT symmetry V*(-x) = V(x),
// units hbar = 2m = 1 throughout. Each parameter set is validated at
// construction; constructors throw ValidationError naming the violated
// inequality.

/// V(x) = (x - ic)^2 + (alpha^2 - 1/4)/(x - ic)^2.
struct OscillatorParams {
    double alpha;
    double c;

    OscillatorParams(double alpha_in, double c_in);

    /// Closed-form |N| additionally requires 0 < alpha < 1.
    bool norm_valid() const { return alpha < 1.0; }
};

/// V(x) = [B^2 + A(A+1)] cosech^2(tau) - B(2A+1) cosech(tau) coth(tau),
/// tau = x - i gamma. Negative gamma is handled by the conjugation
/// symmetry u_{-gamma}(x) = [u_{gamma}(x)]*.
struct GptParams {
    double A;
    double B;
    double gamma;

    GptParams(double A_in, double B_in, double gamma_in);

    /// Closed-form |N| sign analysis requires A + 1/2 < B < A + 3/2.
    bool norm_valid() const { return A + 0.5 < B && B < A + 1.5; }
};

/// V(x) = -[B^2 + A(A+1)] sech^2 x + i B(2A+1) sech x tanh x.
struct ScarfParams {
    double A;
    double B;

    ScarfParams(double A_in, double B_in);
};

enum class Family { oscillator, gpt, scarf };

using ModelSpec = std::variant<OscillatorParams, GptParams, ScarfParams>;

Family family(const ModelSpec& model);
std::string family_name(const ModelSpec& model);

/// One bound state: quasi-parity q = +1/-1 and quantum number n >= 0.
struct StateLabel {
    int q;
    int n;
};

/// Largest admissible n for the given quasi-parity; unbounded (nullopt)
/// for the oscillator family.
std::optional<int> n_max(const ModelSpec& model, int q);

/// Closed-form real eigenvalue. Throws LabelOutOfRange past n_max.
double energy(const ModelSpec& model, StateLabel label);

/// Potential sampled on the real line.
std::complex<double> potential(const ModelSpec& model, double x);

/// A bound state, evaluable at real x. norm_mag is empty until resolved
/// (analytically or by pseudonorm quadrature); the phase convention is
/// nu = 0 (real positive N). pt_rotation is the extra unit-modulus phase
/// applied by to_pt_eigenform.
struct Eigenstate {
    ModelSpec model;
    StateLabel label;
    double energy;
    std::optional<double> norm_mag;
    double lam = 0.0;   // Jacobi parameters; unused for oscillator
    double mu = 0.0;
    double phase_nu = 0.0;
    double pt_rotation = 0.0;
};

Eigenstate make_state(const ModelSpec& model, StateLabel label);

/// u(x) with coefficient 1 (normalized = false) or |N| e^{i nu}
/// (normalized = true; throws UnresolvedNorm if |N| is unresolved).
/// Any pt_rotation phase is always applied.
std::complex<double> eigenfunction(const Eigenstate& state, double x,
                                   bool normalized);

/// State evaluated with whatever coefficient it currently carries:
/// |N| e^{i(nu + rotation)} when resolved, e^{i rotation} otherwise.
std::complex<double> evaluate(const Eigenstate& state, double x);

/// Analytic phase phi in [0, 2 pi) of the relation u*(-x) = e^{i phi} u(x).
double pt_phase(const Eigenstate& state);

/// Least-squares fit of e^{i phi} from u*(-x)/u(x) over a grid. Returns the
/// fitted phase in [0, 2 pi); if unit_deviation is non-null it receives
/// | |c_fit| - 1 |.
double fitted_pt_phase(const Eigenstate& state, double* unit_deviation = nullptr);

/// Rotated copy v(x) = e^{(i/2)(phi - pi/2 + sigma pi/2)} u(x) with the
/// PT-parity sigma identified with the quasi-parity q; satisfies
/// v*(-x) = sigma v(x).
Eigenstate to_pt_eigenform(const Eigenstate& state);

/// Closed-form |N| where available:
///  - oscillator: (n! / (Gamma(-q alpha + n + 1) cos pi(-alpha + 1/2)))^{1/2},
///    requires 0 < alpha < 1 (NormInvalid otherwise);
///  - gpt: {2 cos[pi(A - B + 1)] I_n}^{-1/2} with I_0 in closed form and
///    I_n (n > 0) taken from `aux` (jacobi_weight_integral); nullopt when
///    n > 0 and no aux is supplied; requires A + 1/2 < B < A + 3/2;
///  - scarf: n = 0 only, from the Gamma closed forms; SignViolation for
///    q = -1 when A lies outside every window (B - 1/2 + 2k, B + 1/2 + 2k),
///    k = 0, 1, 2, ...; nullopt for n > 0.
std::optional<double> analytic_norm_mag(const ModelSpec& model,
                                        StateLabel label,
                                        std::optional<double> aux = {});

/// log of a decreasing bound on |u(x)| for |x| >= 1, including the state's
/// current coefficient magnitude.
double log_decay_envelope(const Eigenstate& state, double absx);

/// Smallest radius X >= 2 with envelope(X) <= threshold (no safety factor).
/// Throws Divergent if the envelope never decays below the threshold.
double decay_cutoff(const Eigenstate& state, double threshold);

}  // namespace ptnorm

#endif  // PTNORM_MODELS_HPP
