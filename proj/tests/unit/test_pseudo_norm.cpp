#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ptnorm/errors.hpp"
#include "ptnorm/models.hpp"
#include "ptnorm/pseudo_norm.hpp"
#include "ptnorm/quadrature.hpp"
#include "ptnorm/special_functions.hpp"
#include "support/oracles.hpp"

using namespace ptnorm;
using std::complex;

TEST_CASE("classify_pair covers the three cases") {
    const double tol = 1e-9;
    CHECK(classify_pair({1.4, 0.0}, {1.4, 0.0}, tol) == PairClass::NormLike);
    CHECK(classify_pair({1.4, 0.0}, {3.0, 0.0}, tol) ==
          PairClass::OrthogonalityForced);
    CHECK(classify_pair({2.0, 0.5}, {2.0, -0.5}, tol) ==
          PairClass::ConjugatePairNormLike);
    CHECK(classify_pair({1.4, 0.0}, {2.0, 0.5}, tol) ==
          PairClass::OrthogonalityForced);
    // equal complex energies are not a conjugate pair
    CHECK(classify_pair({2.0, 0.5}, {2.0, 0.5}, tol) ==
          PairClass::OrthogonalityForced);
    // realness is judged relative to the magnitude; the difference is not
    CHECK(classify_pair({100.0, 1e-10}, {100.0, -1e-10}, 1e-9) ==
          PairClass::NormLike);
    CHECK(classify_pair({100.0, 1e-8}, {100.0, -1e-8}, 1e-9) ==
          PairClass::OrthogonalityForced);
}

TEST_CASE("quadrature error estimate is honest under refinement") {
    const ComplexIntegrand f = [](double x) -> complex<double> {
        return {std::exp(-x * x) * std::cos(3.0 * x), std::sin(x) / (1.0 + x * x)};
    };
    const QuadResult coarse = integrate_adaptive(f, -8.0, 8.0, 1e-6);
    const QuadResult fine = integrate_adaptive(f, -8.0, 8.0, 1e-12);
    CHECK(std::abs(coarse.value - fine.value) <= 10.0 * coarse.abs_err);
    CHECK(coarse.evaluations > 0);
    CHECK(fine.abs_err <= 1e-12);
}

TEST_CASE("pseudo-orthogonality of distinct states") {
    const ModelSpec osc = OscillatorParams(0.3, 1.0);
    const double tol = 1e-10;
    const QuadResult r = pseudo_inner(make_state(osc, {+1, 0}),
                                      make_state(osc, {+1, 1}), tol);
    CHECK(std::abs(r.value) <= tol);
}

TEST_CASE("oscillator raw pseudo-norm matches the cosine-Gamma form") {
    const ModelSpec osc = OscillatorParams(0.3, 1.0);
    const double tol = 1e-11;

    const QuadResult plus = pseudo_inner(make_state(osc, {+1, 0}),
                                         make_state(osc, {+1, 0}), tol);
    const double want_plus =
        specfn::cos_pi(-0.3 + 0.5) * specfn::gamma(0.7);  // |N| = 1
    CHECK(std::abs(plus.value.real() - want_plus) < 1e-9);
    CHECK(std::abs(plus.value.real() - 1.0501488237508997) < 1e-9);
    CHECK(std::fabs(plus.value.imag()) < 1e-10);

    const QuadResult minus = pseudo_inner(make_state(osc, {-1, 0}),
                                          make_state(osc, {-1, 0}), tol);
    const double want_minus = specfn::cos_pi(0.3 + 0.5) * specfn::gamma(1.3);
    CHECK(std::abs(minus.value.real() - want_minus) < 1e-9);
    CHECK(std::abs(minus.value.real() - (-0.72606904526529558)) < 1e-9);
}

TEST_CASE("scarf raw pseudo-norm matches the Gamma closed form") {
    const ModelSpec scarf = ScarfParams(2.2, 1.9);
    const double tol = 1e-11;
    const QuadResult r = pseudo_inner(make_state(scarf, {+1, 0}),
                                      make_state(scarf, {+1, 0}), tol);
    const double want = M_PI * specfn::gamma(4.4) /
                        (std::pow(2.0, 3.4) * specfn::gamma(0.8) *
                         specfn::gamma(4.6));
    CHECK(std::abs(r.value.real() - want) < 1e-9);
    CHECK(std::abs(r.value.real() - 0.193634315750785) < 1e-9);
}

TEST_CASE("normalize fixes the pseudo-norm to the quasi-parity") {
    const double tol = 1e-12;

    const Eigenstate osc =
        normalize(make_state(OscillatorParams(0.3, 1.0), {+1, 0}), tol);
    REQUIRE(osc.norm_mag.has_value());
    CHECK(std::fabs(*osc.norm_mag - 0.97583091977134791) < 1e-9);
    const auto closed = analytic_norm_mag(osc.model, osc.label);
    CHECK(std::fabs(*osc.norm_mag - *closed) < 1e-8 * *closed);
    const QuadResult diag = pseudo_inner(osc, osc, tol);
    CHECK(std::abs(diag.value - complex<double>(1.0, 0.0)) < 1e-9);

    // reduces to the linear oscillator as c -> 0
    const Eigenstate lin =
        normalize(make_state(OscillatorParams(0.5, 1e-9), {+1, 0}), tol);
    CHECK(std::fabs(*lin.norm_mag - 0.75112554446494248) < 1e-9);

    // scarf q = -1 ground state inside the k = 0 sign window
    const Eigenstate sc =
        normalize(make_state(ScarfParams(1.6, 1.4), {-1, 0}), tol);
    CHECK(std::fabs(*sc.norm_mag - 2.9071090573705702) < 1e-8);
    const QuadResult sdiag = pseudo_inner(sc, sc, tol);
    CHECK(std::abs(sdiag.value - complex<double>(-1.0, 0.0)) < 1e-9);

    // idempotent
    const Eigenstate again = normalize(sc, tol);
    CHECK(std::fabs(*again.norm_mag - *sc.norm_mag) < 1e-9 * *sc.norm_mag);
}

TEST_CASE("normalize rejects a sign that contradicts the quasi-parity") {
    // A - B + 1/2 = 1.5 lies between the k = 0 and k = 1 windows
    CHECK_THROWS_AS(
        normalize(make_state(ScarfParams(2.4, 1.4), {-1, 0}), 1e-10),
        SignMismatch);
}

TEST_CASE("non-real raw pseudo-norms are rejected") {
    CHECK_THROWS_AS(ensure_real_norm({1.0, 0.5}, 1e-10), NonRealNorm);
    CHECK_NOTHROW(ensure_real_norm({1.0, 1e-9}, 1e-10));
}

TEST_CASE("gram matrix: diagonal quasi-parities, vanishing off-diagonal") {
    const ModelSpec osc = OscillatorParams(0.3, 1.0);
    std::vector<StateLabel> labels;
    for (int n = 0; n < 3; ++n) {
        labels.push_back({+1, n});
        labels.push_back({-1, n});
    }
    const double tol = 1e-10;
    const GramResult g = gram(osc, labels, tol);
    REQUIRE(g.size == 6);
    for (int i = 0; i < 6; ++i) {
        const double qi = labels[i].q;
        CHECK(std::abs(g.at(i, i) - complex<double>(qi, 0.0)) < 1e-8);
    }
    CHECK(g.max_offdiag() <= 1e-9);

    // parallel execution returns the same matrix
    const GramResult g4 = gram(osc, labels, tol, 4);
    for (size_t k = 0; k < g.entries.size(); ++k) {
        CHECK(std::abs(g.entries[k] - g4.entries[k]) < 1e-12);
    }
}

TEST_CASE("gram edge cases") {
    const ModelSpec osc = OscillatorParams(0.3, 1.0);
    const GramResult single = gram(osc, {{-1, 0}}, 1e-10);
    CHECK(single.size == 1);
    CHECK(std::abs(single.at(0, 0) - complex<double>(-1.0, 0.0)) < 1e-8);

    const GramResult same_q = gram(osc, {{+1, 0}, {+1, 1}}, 1e-10);
    CHECK(same_q.max_offdiag() <= 1e-9);

    CHECK_THROWS_AS(gram(osc, {}, 1e-10), ValidationError);

    try {
        gram(ScarfParams(2.4, 1.4), {{+1, 0}, {-1, 0}}, 1e-10);
        FAIL("expected GramEntryError");
    } catch (const GramEntryError& e) {
        CHECK(e.row == 1);
        CHECK(e.col == 1);
    }
}

TEST_CASE("jacobi weight integral: closed form, elementary case, two methods") {
    const double tol = 1e-11;

    // n = 0 closed form via the Gamma oracle
    const double lam = 0.3, mu = -4.3;
    const double got0 = jacobi_weight_integral(lam, mu, 0, tol);
    const double want0 = std::pow(2.0, lam + mu + 1.0) *
                         specfn::gamma(-lam - mu - 1.0) *
                         specfn::gamma(lam + 1.0) / specfn::gamma(-mu);
    CHECK(std::fabs(got0 - want0) < 1e-9);
    CHECK(std::fabs(got0 - 0.025336981858720989) < 1e-9);

    // elementary: integral of (t+1)^-2 over (1, inf) = 1/2
    CHECK(std::fabs(jacobi_weight_integral(0.0, -2.0, 0, tol) - 0.5) < 1e-9);

    // n = 1: cross-check with an independent tanh-sinh discretization of the
    // s = 1/t transform over (0, 1)
    const double got1 = jacobi_weight_integral(lam, mu, 1, tol);
    const auto transformed = [lam, mu](double s) {
        const double t = 1.0 / s;
        const complex<double> p = specfn::jacobi(1, lam, mu, {t, 0.0});
        return std::pow(s, -lam - mu - 2.0) * std::pow(1.0 - s, lam) *
               std::pow(1.0 + s, mu) * std::norm(p);
    };
    const double oracle1 = oracles::tanh_sinh_01(transformed);
    CHECK(std::fabs(got1 - oracle1) < 1e-9);
    CHECK(std::fabs(got1 - 0.10869565217391304) < 1e-9);

    CHECK(got0 > 0.0);
    CHECK(got1 > 0.0);
}

TEST_CASE("jacobi weight integral rejects divergent parameters") {
    CHECK_THROWS_AS(jacobi_weight_integral(-1.2, -4.3, 0, 1e-10), Divergent);
    CHECK_THROWS_AS(jacobi_weight_integral(0.3, -0.5, 0, 1e-10), Divergent);
    CHECK_THROWS_AS(jacobi_weight_integral(0.3, -4.3, 2, 1e-10), Divergent);
}

TEST_CASE("contour shift invariance of the oscillator pseudo-norm") {
    const double tol = 1e-11;
    const Eigenstate a =
        make_state(OscillatorParams(0.3, 0.5), {+1, 0});
    CHECK(contour_shift_check(a, 1.5, tol) <= 1e-9);

    const Eigenstate b = make_state(OscillatorParams(0.3, 1.0), {-1, 2});
    CHECK(contour_shift_check(b, 2.0, tol) <= 1e-9);

    CHECK_THROWS_AS(contour_shift_check(a, 0.5, tol), ValidationError);
    CHECK_THROWS_AS(contour_shift_check(a, -1.0, tol), ValidationError);
    CHECK_THROWS_AS(
        contour_shift_check(make_state(ScarfParams(2.2, 1.9), {+1, 0}), 1.0,
                            tol),
        ValidationError);
}

TEST_CASE("sign law across parameter sweeps") {
    const double tol = 1e-8;
    // oscillator: 10 alphas x both parities
    for (int k = 0; k < 10; ++k) {
        const double alpha = 0.015 + 0.97 * k / 9.0;
        for (int q : {+1, -1}) {
            const Eigenstate s =
                make_state(OscillatorParams(alpha, 1.0), {q, 0});
            const QuadResult r = pseudo_inner(s, s, tol);
            CHECK((r.value.real() > 0.0 ? +1 : -1) == q);
        }
    }
    // gpt inside the window A + 1/2 < B < A + 3/2
    for (int k = 0; k < 10; ++k) {
        const double B = 1.56 + 0.88 * k / 9.0;
        for (int q : {+1, -1}) {
            const Eigenstate s =
                make_state(GptParams(1.0, B, 0.2), {q, 0});
            const QuadResult r = pseudo_inner(s, s, tol);
            CHECK((r.value.real() > 0.0 ? +1 : -1) == q);
        }
    }
    // scarf q = -1: negative exactly inside the k-windows over A
    const double B = 1.4;
    for (double A : {1.0, 1.6, 2.4, 3.2, 4.4}) {
        const Eigenstate s = make_state(ScarfParams(A, B), {-1, 0});
        const QuadResult r = pseudo_inner(s, s, tol);
        const double w = A - B + 0.5;
        const bool in_window = (w - 2.0 * std::floor(0.5 * w)) < 1.0;
        CHECK((r.value.real() < 0.0) == in_window);
    }
}

TEST_CASE("hermitian degeneration at alpha = 1/2, c -> 0") {
    const ModelSpec osc = OscillatorParams(0.5, 1e-6);
    const std::vector<StateLabel> labels = {{+1, 0}, {-1, 0}, {+1, 1}};
    const double tol = 1e-10;
    const GramResult pt_gram = gram(osc, labels, tol);

    // the exact L2 Gram of normalized linear-oscillator states is the
    // identity; rows pick up their parity under the reflected conjugation
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = 0; j < labels.size(); ++j) {
            const complex<double> expected =
                i == j ? complex<double>(labels[i].q, 0.0)
                       : complex<double>(0.0, 0.0);
            CHECK(std::abs(pt_gram.at(i, j) - expected) <= 1e-6);
        }
    }

    // and the shifted states' ordinary L2 Gram approaches it linearly in c
    std::vector<Eigenstate> states;
    for (const auto& label : labels) {
        states.push_back(normalize(make_state(osc, label), tol));
    }
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = 0; j < labels.size(); ++j) {
            const ComplexIntegrand f = [&](double x) {
                return std::conj(evaluate(states[i], x)) *
                       evaluate(states[j], x);
            };
            const complex<double> l2 =
                integrate_adaptive(f, -12.0, 12.0, tol).value;
            const double delta = i == j ? 1.0 : 0.0;
            CHECK(std::abs(l2 - delta) <= 1e-5);
        }
    }
}

TEST_CASE("divergent integrands are rejected by the pre-scan") {
    // flat function with a lying envelope: the numeric pre-scan catches it
    const LineFunction flat{
        [](double) { return complex<double>(1.0, 0.0); },
        [](double absx) { return -absx; }};
    CHECK_THROWS_AS(pseudo_inner(flat, flat, 1e-8), Divergent);

    // envelope that never decays is rejected before any sampling
    const LineFunction growing{
        [](double x) { return complex<double>(std::exp(0.1 * x * x), 0.0); },
        [](double) { return 1.0; }};
    CHECK_THROWS_AS(pseudo_inner(growing, growing, 1e-8), Divergent);

    // out-of-range gpt label never reaches quadrature
    Eigenstate bad = make_state(GptParams(1.2, 2.0, 0.2), {+1, 1});
    bad.label.n = 3;  // forced past n_max; decay rate goes negative
    CHECK_THROWS_AS(pseudo_inner(bad, bad, 1e-8), Divergent);
}
