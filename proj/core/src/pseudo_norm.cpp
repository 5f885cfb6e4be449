#include "ptnorm/pseudo_norm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "ptnorm/errors.hpp"
#include "ptnorm/special_functions.hpp"

namespace ptnorm {

namespace {

using std::complex;

bool is_real_energy(complex<double> E, double tol) {
    return std::fabs(E.imag()) <= tol * (1.0 + std::abs(E));
}

// Smallest radius X >= 2 with log_envelope(X) <= log(threshold).
double envelope_cutoff(const LineFunction& f, double threshold) {
    const double target = std::log(threshold);
    for (double x = 2.0; x <= 400.0; x += 0.25) {
        if (f.log_envelope(x) <= target) return x;
    }
    throw Divergent(
        "decay pre-scan failed: envelope stays above the truncation "
        "threshold out to x = 400");
}

double joint_cutoff(const LineFunction& u1, const LineFunction& u2,
                    double tol) {
    const double threshold = tol / 100.0;
    const double base =
        std::max(envelope_cutoff(u1, threshold), envelope_cutoff(u2, threshold));
    return 1.5 * base;  // safety inflation
}

// Reject integrands whose sampled tail is not actually small: defends the
// truncation against envelopes that do not reflect the function passed in.
void decay_prescan(const ComplexIntegrand& f, double x_cut, double tol) {
    double interior_scale = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double x = -x_cut + 2.0 * x_cut * i / 32.0;
        interior_scale = std::max(interior_scale, std::abs(f(x)));
    }
    const double bound = std::max(tol / 100.0, 1e-12 * interior_scale);
    for (double s : {1.0, 0.97, 0.94}) {
        if (std::abs(f(s * x_cut)) > bound || std::abs(f(-s * x_cut)) > bound) {
            throw Divergent(
                "decay pre-scan failed: integrand magnitude exceeds the "
                "truncation bound at |x| = " + std::to_string(s * x_cut));
        }
    }
}

}  // namespace

PairClass classify_pair(complex<double> E1, complex<double> E2, double tol) {
    const bool r1 = is_real_energy(E1, tol);
    const bool r2 = is_real_energy(E2, tol);
    if (r1 && r2) {
        return std::abs(E1 - E2) > tol ? PairClass::OrthogonalityForced
                                       : PairClass::NormLike;
    }
    if (r1 != r2) return PairClass::OrthogonalityForced;
    // both genuinely complex: only the conjugate pairing survives
    if (std::abs(E2 - std::conj(E1)) <= tol * (1.0 + std::abs(E1))) {
        return PairClass::ConjugatePairNormLike;
    }
    return PairClass::OrthogonalityForced;
}

LineFunction as_line_function(const Eigenstate& state) {
    return LineFunction{
        [state](double x) { return evaluate(state, x); },
        [state](double absx) { return log_decay_envelope(state, absx); }};
}

QuadResult pseudo_inner(const LineFunction& u1, const LineFunction& u2,
                        double tol) {
    if (!(tol > 0.0)) throw ValidationError("pseudo_inner: tol must be > 0");
    const double x_cut = joint_cutoff(u1, u2, tol);
    const ComplexIntegrand f = [&u1, &u2](double x) {
        return std::conj(u2.value(-x)) * u1.value(x);
    };
    decay_prescan(f, x_cut, tol);
    QuadResult r = integrate_adaptive(f, -x_cut, x_cut, tol);
    r.evaluations += 33 + 6;  // pre-scan samples
    return r;
}

QuadResult pseudo_inner(const Eigenstate& u1, const Eigenstate& u2,
                        double tol) {
    return pseudo_inner(as_line_function(u1), as_line_function(u2), tol);
}

double pseudo_inner_cutoff(const Eigenstate& u1, const Eigenstate& u2,
                           double tol) {
    return joint_cutoff(as_line_function(u1), as_line_function(u2), tol);
}

void ensure_real_norm(complex<double> raw, double tol) {
    if (std::fabs(raw.imag()) > 100.0 * tol * std::fabs(raw.real())) {
        throw NonRealNorm(
            "raw pseudo-norm is not real within tolerance: " +
            std::to_string(raw.real()) + " + " + std::to_string(raw.imag()) +
            "i");
    }
}

Eigenstate normalize(const Eigenstate& state, double tol) {
    const QuadResult raw = pseudo_inner(state, state, tol);
    ensure_real_norm(raw.value, tol);
    const double re = raw.value.real();
    const int measured_sign = re > 0.0 ? 1 : -1;
    if (measured_sign != state.label.q) {
        throw SignMismatch(
            "measured pseudo-norm sign " + std::to_string(measured_sign) +
            " differs from quasi-parity q = " + std::to_string(state.label.q) +
            " (raw = " + std::to_string(re) + ")");
    }
    Eigenstate out = state;
    const double current = state.norm_mag.value_or(1.0);
    out.norm_mag = current / std::sqrt(std::fabs(re));
    return out;
}

double GramResult::max_offdiag() const {
    double worst = 0.0;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (i != j) worst = std::max(worst, std::abs(at(i, j)));
        }
    }
    return worst;
}

GramResult gram(const ModelSpec& model, const std::vector<StateLabel>& labels,
                double tol, int jobs) {
    if (labels.empty()) throw ValidationError("gram: label list is empty");
    if (jobs < 1) throw ValidationError("gram: jobs must be >= 1");

    const int n = static_cast<int>(labels.size());
    std::vector<Eigenstate> states;
    states.reserve(labels.size());
    for (const StateLabel& label : labels) {
        states.push_back(make_state(model, label));
    }

    // normalize first so every entry uses |N|-scaled integrands
    for (int i = 0; i < n; ++i) {
        try {
            states[i] = normalize(states[i], tol);
        } catch (const Error& e) {
            throw GramEntryError("gram: normalize failed for state " +
                                     std::to_string(i) + ": " + e.what(),
                                 i, i);
        }
    }

    GramResult result;
    result.size = n;
    result.entries.assign(static_cast<size_t>(n) * n, {0.0, 0.0});
    result.errors.assign(static_cast<size_t>(n) * n, 0.0);

    std::vector<std::exception_ptr> failures(result.entries.size());
    auto compute_entry = [&](int i, int j) {
        try {
            // rows index the conjugated-reflected factor
            const QuadResult r = pseudo_inner(states[j], states[i], tol);
            result.entries[static_cast<size_t>(i) * n + j] = r.value;
            result.errors[static_cast<size_t>(i) * n + j] = r.abs_err;
        } catch (...) {
            failures[static_cast<size_t>(i) * n + j] = std::current_exception();
        }
    };

    if (jobs == 1) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) compute_entry(i, j);
        }
    } else {
        std::vector<std::thread> pool;
        const int total = n * n;
        const int workers = std::min(jobs, total);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int k = w; k < total; k += workers) {
                    compute_entry(k / n, k % n);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (failures[static_cast<size_t>(i) * n + j]) {
                try {
                    std::rethrow_exception(
                        failures[static_cast<size_t>(i) * n + j]);
                } catch (const std::exception& e) {
                    throw GramEntryError("gram entry (" + std::to_string(i) +
                                             ", " + std::to_string(j) +
                                             "): " + e.what(),
                                         i, j);
                }
            }
        }
    }
    return result;
}

double jacobi_weight_integral(double lam, double mu, int n, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("jacobi_weight_integral: tol must be > 0");
    }
    if (!(lam > -1.0)) {
        throw Divergent(
            "jacobi_weight_integral requires lam > -1 for integrability at "
            "t = 1 (got lam = " + std::to_string(lam) + ")");
    }
    const double p = lam + mu + 2.0 * n;
    if (!(p < -1.0)) {
        throw Divergent(
            "jacobi_weight_integral requires lam + mu + 2n < -1 for "
            "convergence at infinity (got " + std::to_string(p) + ")");
    }

    const auto f = [lam, mu, n](double t) -> double {
        const complex<double> poly = specfn::jacobi(n, lam, mu, {t, 0.0});
        return std::pow(t - 1.0, lam) * std::pow(t + 1.0, mu) *
               std::norm(poly);
    };

    // numeric decay pre-scan, sampled deep in the asymptotic power-law
    // regime (past the polynomial roots, where t |f(t)| ~ t^{p+1})
    {
        const double t0 = 4096.0 * (1.0 + n);
        double prev = t0 * std::fabs(f(t0));
        for (double t = 2.0 * t0; t <= 8.0 * t0; t *= 2.0) {
            const double cur = t * std::fabs(f(t));
            if (cur > prev * 1.01 + 1e-300) {
                throw Divergent(
                    "jacobi_weight_integral: tail t|f(t)| is not decreasing");
            }
            prev = cur;
        }
    }

    // near region (1, 2]: substitute t = 1 + w^m to flatten the endpoint.
    // The singular factor (t-1)^lam is kept as a power of w so that no
    // cancellation occurs when w^m drops below machine epsilon.
    const int m = std::clamp(
        static_cast<int>(std::ceil(4.0 / (1.0 + lam))), 1, 64);
    const ComplexIntegrand near = [lam, mu, n, m](double w) -> complex<double> {
        if (w <= 0.0) return {0.0, 0.0};
        const double s = std::pow(w, m);
        const complex<double> poly =
            specfn::jacobi(n, lam, mu, {1.0 + s, 0.0});
        const double value = m * std::pow(w, m * (1.0 + lam) - 1.0) *
                             std::pow(2.0 + s, mu) * std::norm(poly);
        return {value, 0.0};
    };
    const QuadResult near_part = integrate_adaptive(near, 0.0, 1.0, 0.5 * tol);

    // far region [2, inf): map t = 1/s, then flatten the s = 0 endpoint
    // (the integrand behaves like s^(-p-2) there) with s = w^m2
    const int m2 = std::clamp(
        static_cast<int>(std::ceil(4.0 / (-p - 1.0))), 1, 64);
    const ComplexIntegrand far = [&f, m2](double w) -> complex<double> {
        double s = 1.0;
        double jac = m2;
        for (int k = 0; k < m2; ++k) s *= w;
        for (int k = 0; k < m2 - 1; ++k) jac *= w;
        if (s <= 0.0) return {0.0, 0.0};
        const double t = 1.0 / s;
        return {f(t) * t * t * jac, 0.0};
    };
    const double w_end = std::pow(0.5, 1.0 / m2);
    const QuadResult far_part = integrate_adaptive(far, 0.0, w_end, 0.5 * tol);

    return near_part.value.real() + far_part.value.real();
}

double contour_shift_check(const Eigenstate& state, double c2, double tol) {
    if (family(state.model) != Family::oscillator) {
        throw ValidationError(
            "contour_shift_check applies to the oscillator family only");
    }
    const auto& params = std::get<OscillatorParams>(state.model);
    if (!(c2 > 0.0)) {
        throw ValidationError("contour_shift_check requires c2 > 0");
    }
    if (c2 == params.c) {
        throw ValidationError(
            "contour_shift_check requires c2 different from the state's c");
    }
    const Eigenstate bare1 =
        make_state(OscillatorParams(params.alpha, params.c), state.label);
    const Eigenstate bare2 =
        make_state(OscillatorParams(params.alpha, c2), state.label);
    const QuadResult v1 = pseudo_inner(bare1, bare1, tol);
    const QuadResult v2 = pseudo_inner(bare2, bare2, tol);
    return std::abs(v1.value - v2.value);
}

}  // namespace ptnorm
