#include "ptnorm/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "ptnorm/errors.hpp"

namespace ptnorm {

namespace {

// 15-point Kronrod nodes on [-1, 1] (symmetric; last entry is the center)
// and weights, with the embedded 7-point Gauss weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    std::complex<double> value;
    double err;
    double resabs;  // integral of |f| over the panel
    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel evaluate_panel(const ComplexIntegrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);

    const std::complex<double> fc = f(center);
    std::complex<double> kronrod = kWgk[7] * fc;
    std::complex<double> gauss = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = halfwidth * kXgk[j];
        const std::complex<double> lo = f(center - dx);
        const std::complex<double> hi = f(center + dx);
        kronrod += kWgk[j] * (lo + hi);
        resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    kronrod *= halfwidth;
    gauss *= halfwidth;
    resabs *= halfwidth;
    return Panel{a, b, kronrod, std::abs(kronrod - gauss), resabs};
}

}  // namespace

QuadResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                              double abs_tol, long max_evals) {
    if (!(abs_tol > 0.0)) {
        throw ValidationError("quadrature tolerance must be > 0");
    }
    if (!(b > a)) {
        throw ValidationError("quadrature interval must have b > a");
    }

    const double min_width = 1e-13 * (b - a);

    QuadResult result;
    std::priority_queue<Panel> queue;
    queue.push(evaluate_panel(f, a, b));
    result.evaluations = 15;

    std::complex<double> total = queue.top().value;
    double total_err = queue.top().err;
    double total_resabs = queue.top().resabs;
    double frozen_err = 0.0;  // panels at the roundoff width floor

    // cancellation-heavy integrands cannot beat roundoff of the |f| mass
    const auto target = [&total_resabs, abs_tol] {
        return std::max(abs_tol, 50.0 * 1.1e-16 * total_resabs);
    };

    while (total_err > target() && !queue.empty()) {
        const Panel worst = queue.top();
        queue.pop();
        if (worst.b - worst.a <= min_width) {
            frozen_err += worst.err;
            if (frozen_err > target()) break;  // irreducible
            continue;
        }
        if (result.evaluations + 30 > max_evals) {
            throw NoConvergence(
                "adaptive quadrature: error target " + std::to_string(abs_tol) +
                " not reached within " + std::to_string(max_evals) +
                " evaluations (estimate " + std::to_string(total_err) + ")");
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_resabs += left.resabs + right.resabs - worst.resabs;
        queue.push(left);
        queue.push(right);
    }

    result.value = total;
    result.abs_err = total_err;
    return result;
}

}  // namespace ptnorm
