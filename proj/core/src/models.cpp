#include "ptnorm/models.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ptnorm/errors.hpp"
#include "ptnorm/special_functions.hpp"

#include "envelope_detail.hpp"

namespace ptnorm {

namespace {

using std::complex;
using detail::factorial;
using detail::jacobi_coeff_bound;
using detail::laguerre_coeff_bound;
using specfn::cos_pi;
using specfn::sin_pi;

constexpr double kTwoPi = 2.0 * M_PI;

bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

double require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
    return x;
}


double reduce_mod_two_pi(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    // collapse values within roundoff of 2 pi back to 0
    if (kTwoPi - phi < 1e-12) phi = 0.0;
    return phi;
}

void check_label(StateLabel label) {
    if (label.q != 1 && label.q != -1) {
        throw ValidationError("quasi-parity q must be +1 or -1");
    }
    if (label.n < 0) {
        throw ValidationError("quantum number n must be >= 0");
    }
}

int bounded_n_max(double edge) {
    // largest integer n with n < edge, given edge > 0
    return static_cast<int>(std::ceil(edge)) - 1;
}

}  // namespace

OscillatorParams::OscillatorParams(double alpha_in, double c_in)
    : alpha(require_finite(alpha_in, "alpha")), c(require_finite(c_in, "c")) {
    if (!(alpha > 0.0)) {
        throw ValidationError("oscillator requires alpha > 0 (got " +
                              std::to_string(alpha) + ")");
    }
    if (near_integer(alpha)) {
        throw ValidationError(
            "oscillator requires alpha different from an integer (got " +
            std::to_string(alpha) + ")");
    }
    if (!(c > 0.0)) {
        throw ValidationError("oscillator requires c > 0 (got " +
                              std::to_string(c) + ")");
    }
}

GptParams::GptParams(double A_in, double B_in, double gamma_in)
    : A(require_finite(A_in, "A")),
      B(require_finite(B_in, "B")),
      gamma(require_finite(gamma_in, "gamma")) {
    if (!(A + 0.5 > 0.0)) {
        throw ValidationError("gpt requires A + 1/2 > 0 (got A = " +
                              std::to_string(A) + ")");
    }
    if (!(B > A + 0.5)) {
        throw ValidationError("gpt requires B > A + 1/2 (got B = " +
                              std::to_string(B) + ", A + 1/2 = " +
                              std::to_string(A + 0.5) + ")");
    }
    if (near_integer(B - A - 0.5)) {
        throw ValidationError(
            "gpt requires B - A - 1/2 different from an integer (got " +
            std::to_string(B - A - 0.5) + ")");
    }
    const double g = std::fabs(gamma);
    const bool in_range =
        g > 0.0 && (gamma < 0.0 ? g <= M_PI / 4.0 : g < M_PI / 4.0);
    if (!in_range) {
        throw ValidationError(
            "gpt requires gamma in [-pi/4, 0) or (0, pi/4) (got " +
            std::to_string(gamma) + ")");
    }
}

ScarfParams::ScarfParams(double A_in, double B_in)
    : A(require_finite(A_in, "A")), B(require_finite(B_in, "B")) {
    if (!(B - 0.5 > 0.0)) {
        throw ValidationError("scarf requires B - 1/2 > 0 (got B = " +
                              std::to_string(B) + ")");
    }
    if (!(A > B - 0.5)) {
        throw ValidationError("scarf requires A > B - 1/2 (got A = " +
                              std::to_string(A) + ", B - 1/2 = " +
                              std::to_string(B - 0.5) + ")");
    }
    if (near_integer(A - B + 0.5)) {
        throw ValidationError(
            "scarf requires A - B + 1/2 different from an integer (got " +
            std::to_string(A - B + 0.5) + ")");
    }
}

Family family(const ModelSpec& model) {
    return std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                return Family::oscillator;
            } else if constexpr (std::is_same_v<T, GptParams>) {
                return Family::gpt;
            } else {
                return Family::scarf;
            }
        },
        model);
}

std::string family_name(const ModelSpec& model) {
    switch (family(model)) {
        case Family::oscillator: return "oscillator";
        case Family::gpt: return "gpt";
        case Family::scarf: return "scarf";
    }
    return "?";
}

std::optional<int> n_max(const ModelSpec& model, int q) {
    if (q != 1 && q != -1) {
        throw ValidationError("quasi-parity q must be +1 or -1");
    }
    return std::visit(
        [q](const auto& p) -> std::optional<int> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, GptParams>) {
                return q > 0 ? bounded_n_max(p.B - 0.5) : bounded_n_max(p.A);
            } else {
                return q > 0 ? bounded_n_max(p.A) : bounded_n_max(p.B - 0.5);
            }
        },
        model);
}

double energy(const ModelSpec& model, StateLabel label) {
    check_label(label);
    if (auto nm = n_max(model, label.q); nm && label.n > *nm) {
        throw LabelOutOfRange(
            family_name(model) + " admits n <= " + std::to_string(*nm) +
            " for q = " + std::to_string(label.q) + " (got n = " +
            std::to_string(label.n) + ")");
    }
    return std::visit(
        [&label](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                return 4.0 * label.n + 2.0 - 2.0 * label.q * p.alpha;
            } else if constexpr (std::is_same_v<T, GptParams>) {
                if (label.q > 0) {
                    const double k = p.B - 0.5 - label.n;
                    return -k * k;
                }
                const double k = p.A - label.n;
                return -k * k;
            } else {
                if (label.q > 0) {
                    const double k = p.A - label.n;
                    return -k * k;
                }
                const double k = p.B - 0.5 - label.n;
                return -k * k;
            }
        },
        model);
}

std::complex<double> potential(const ModelSpec& model, double x) {
    require_finite(x, "x");
    return std::visit(
        [x](const auto& p) -> complex<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                const complex<double> z{x, -p.c};
                const complex<double> z2 = z * z;
                return z2 + (p.alpha * p.alpha - 0.25) / z2;
            } else if constexpr (std::is_same_v<T, GptParams>) {
                const complex<double> tau{x, -std::fabs(p.gamma)};
                const complex<double> csch = 1.0 / std::sinh(tau);
                const complex<double> v =
                    (p.B * p.B + p.A * (p.A + 1.0)) * csch * csch -
                    p.B * (2.0 * p.A + 1.0) * csch * std::cosh(tau) * csch;
                return p.gamma < 0.0 ? std::conj(v) : v;
            } else {
                const double sech = 1.0 / std::cosh(x);
                const double th = std::tanh(x);
                return complex<double>(
                    -(p.B * p.B + p.A * (p.A + 1.0)) * sech * sech,
                    p.B * (2.0 * p.A + 1.0) * sech * th);
            }
        },
        model);
}

Eigenstate make_state(const ModelSpec& model, StateLabel label) {
    Eigenstate s{model, label, energy(model, label), std::nullopt};
    std::visit(
        [&s, &label](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GptParams>) {
                s.lam = label.q * (p.A - p.B + 0.5);
                s.mu = -p.A - p.B - 0.5;
            } else if constexpr (std::is_same_v<T, ScarfParams>) {
                s.lam = label.q * (-p.A + p.B - 0.5);
                s.mu = -p.A - p.B - 0.5;
            }
        },
        model);
    return s;
}

namespace {

// Bare eigenfunction, coefficient 1, principal-branch complex powers.
complex<double> bare_value(const Eigenstate& s, double x) {
    return std::visit(
        [&s, x](const auto& p) -> complex<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                const complex<double> z{x, -p.c};
                const complex<double> z2 = z * z;
                const double e0 = -s.label.q * p.alpha + 0.5;
                return std::exp(-0.5 * z2) * std::pow(z, e0) *
                       specfn::laguerre(s.label.n, -s.label.q * p.alpha, z2);
            } else if constexpr (std::is_same_v<T, GptParams>) {
                const complex<double> tau{x, -std::fabs(p.gamma)};
                const complex<double> w =
                    std::pow(2.0, 0.5 * (s.lam + s.mu + 1.0)) *
                    std::pow(std::sinh(0.5 * tau), s.lam + 0.5) *
                    std::pow(std::cosh(0.5 * tau), s.mu + 0.5) *
                    specfn::jacobi(s.label.n, s.lam, s.mu, std::cosh(tau));
                return p.gamma < 0.0 ? std::conj(w) : w;
            } else {
                const double sh = std::sinh(x);
                const complex<double> arg{0.0, sh};
                const double wexp = -0.5 * (s.lam + s.mu + 1.0);
                return std::exp(-wexp * std::log(std::cosh(x))) *
                       std::exp(complex<double>(
                           0.0, -0.5 * (s.lam - s.mu) * std::atan(sh))) *
                       specfn::jacobi(s.label.n, s.lam, s.mu, arg);
            }
        },
        s.model);
}

complex<double> coefficient(const Eigenstate& s, bool normalized) {
    const double mag = normalized ? *s.norm_mag : 1.0;
    const double phase =
        (normalized ? s.phase_nu : 0.0) + s.pt_rotation;
    return std::polar(mag, phase);
}

}  // namespace

std::complex<double> eigenfunction(const Eigenstate& state, double x,
                                   bool normalized) {
    require_finite(x, "x");
    if (normalized && !state.norm_mag) {
        throw UnresolvedNorm(
            "normalization magnitude unresolved for this state; run "
            "normalize() or supply the analytic value");
    }
    return coefficient(state, normalized) * bare_value(state, x);
}

std::complex<double> evaluate(const Eigenstate& state, double x) {
    return eigenfunction(state, x, state.norm_mag.has_value());
}

double pt_phase(const Eigenstate& state) {
    const double nu_eff = state.phase_nu + state.pt_rotation;
    double phi = 0.0;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                phi = M_PI * (-state.label.q * p.alpha + 0.5);
            } else if constexpr (std::is_same_v<T, GptParams>) {
                phi = M_PI * (state.lam + 0.5);
                if (p.gamma < 0.0) phi = -phi;  // conjugated realization
            } else {
                phi = 0.0;
            }
        },
        state.model);
    return reduce_mod_two_pi(phi - 2.0 * nu_eff);
}

double fitted_pt_phase(const Eigenstate& state, double* unit_deviation) {
    const int npts = 321;
    const double half = 4.0;
    complex<double> num{0.0, 0.0};
    double den = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double x = -half + 2.0 * half * i / (npts - 1);
        const complex<double> u = evaluate(state, x);
        const complex<double> mirrored = std::conj(evaluate(state, -x));
        num += std::conj(u) * mirrored;
        den += std::norm(u);
    }
    const complex<double> c_fit = num / den;
    if (unit_deviation) *unit_deviation = std::fabs(std::abs(c_fit) - 1.0);
    return reduce_mod_two_pi(std::arg(c_fit));
}

Eigenstate to_pt_eigenform(const Eigenstate& state) {
    Eigenstate v = state;
    const double sigma = state.label.q;  // PT-parity identified with q
    const double phi = pt_phase(state);
    v.pt_rotation = reduce_mod_two_pi(
        state.pt_rotation + 0.5 * (phi - 0.5 * M_PI + sigma * 0.5 * M_PI));
    return v;
}

std::optional<double> analytic_norm_mag(const ModelSpec& model,
                                        StateLabel label,
                                        std::optional<double> aux) {
    check_label(label);
    const Eigenstate probe = make_state(model, label);  // range-checks label
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                if (!p.norm_valid()) {
                    throw NormInvalid(
                        "oscillator closed-form |N| requires 0 < alpha < 1 "
                        "(got alpha = " + std::to_string(p.alpha) + ")");
                }
                // cos pi(-alpha + 1/2) = sin(pi alpha), positive on (0,1)
                const double g =
                    specfn::gamma(-label.q * p.alpha + label.n + 1.0);
                return std::sqrt(factorial(label.n) /
                                 (g * sin_pi(p.alpha)));
            } else if constexpr (std::is_same_v<T, GptParams>) {
                if (!p.norm_valid()) {
                    throw NormInvalid(
                        "gpt closed-form |N| requires A + 1/2 < B < A + 3/2 "
                        "(got B - A = " + std::to_string(p.B - p.A) + ")");
                }
                double integral;
                if (label.n == 0) {
                    integral = std::pow(2.0, probe.lam + probe.mu + 1.0) *
                               specfn::gamma(-probe.lam - probe.mu - 1.0) *
                               specfn::gamma(probe.lam + 1.0) /
                               specfn::gamma(-probe.mu);
                } else if (aux) {
                    integral = *aux;
                } else {
                    return std::nullopt;  // needs jacobi_weight_integral
                }
                return 1.0 /
                       std::sqrt(2.0 * cos_pi(p.A - p.B + 1.0) * integral);
            } else {
                if (label.n > 0) return std::nullopt;
                const double A = p.A;
                const double B = p.B;
                if (label.q > 0) {
                    const double r = M_PI * specfn::gamma(2.0 * A) /
                                     (std::pow(2.0, 2.0 * A - 1.0) *
                                      specfn::gamma(A - B + 0.5) *
                                      specfn::gamma(A + B + 0.5));
                    return 1.0 / std::sqrt(r);
                }
                // q = -1: Gamma(B - A - 1/2) must be negative, which holds
                // exactly when A - B + 1/2 lies in (2k, 2k + 1).
                const double w = A - B + 0.5;
                const double frac = w - 2.0 * std::floor(0.5 * w);
                if (!(frac < 1.0)) {
                    throw SignViolation(
                        "scarf q = -1 sign condition requires A in "
                        "(B - 1/2 + 2k, B + 1/2 + 2k) for some k >= 0 "
                        "(got A - B + 1/2 = " + std::to_string(w) + ")");
                }
                const double r = M_PI * specfn::gamma(2.0 * B - 1.0) /
                                 (std::pow(2.0, 2.0 * B - 2.0) *
                                  specfn::gamma(B - A - 0.5) *
                                  specfn::gamma(B + A + 0.5));
                return 1.0 / std::sqrt(-r);
            }
        },
        model);
}

double log_decay_envelope(const Eigenstate& state, double absx) {
    absx = std::max(absx, 1.0);
    const double coeff_mag =
        state.norm_mag ? *state.norm_mag : 1.0;  // phases are unit modulus
    double log_env = std::log(coeff_mag);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            const int n = state.label.n;
            if constexpr (std::is_same_v<T, OscillatorParams>) {
                const double zbound =
                    absx * std::sqrt(1.0 + p.c * p.c / (absx * absx));
                const double e0 = -state.label.q * p.alpha + 0.5;
                log_env += -0.5 * (absx * absx - p.c * p.c);
                if (e0 > 0.0) log_env += e0 * std::log(zbound);
                log_env += 2.0 * n * std::log(std::max(1.0, zbound)) +
                           std::log(laguerre_coeff_bound(
                               n, -state.label.q * p.alpha));
            } else {
                // gpt and scarf share the cosh(x/2) envelope
                const double lch = std::log(std::cosh(0.5 * absx));
                log_env += (state.lam + state.mu + 1.0 + 2.0 * n) * lch +
                           std::log(jacobi_coeff_bound(n, state.lam, state.mu));
                if constexpr (std::is_same_v<T, GptParams>) {
                    // slack for |sinh(tau/2)|, |cosh(tau/2)| lower bounds
                    const double slack = std::log(1.0 / std::tanh(0.5));
                    if (state.lam + 0.5 < 0.0) {
                        log_env += -(state.lam + 0.5) * slack;
                    }
                    if (state.mu + 0.5 < 0.0) {
                        log_env += -(state.mu + 0.5) * slack;
                    }
                    log_env += 0.5 * (state.lam + state.mu + 1.0) * M_LN2;
                }
            }
        },
        state.model);
    return log_env;
}

double decay_cutoff(const Eigenstate& state, double threshold) {
    if (!(threshold > 0.0)) {
        throw ValidationError("decay threshold must be > 0");
    }
    if (family(state.model) != Family::oscillator) {
        const double rate = -0.5 * (state.lam + state.mu + 1.0) - state.label.n;
        if (!(rate > 0.0)) {
            throw Divergent(
                "state does not decay: exponential rate " +
                std::to_string(rate) + " <= 0 (label outside bound range)");
        }
    }
    const double target = std::log(threshold);
    for (double x = 2.0; x <= 400.0; x += 0.25) {
        if (log_decay_envelope(state, x) <= target) return x;
    }
    throw Divergent("decay envelope stays above the threshold out to x = 400");
}

}  // namespace ptnorm
