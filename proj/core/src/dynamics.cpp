#include "ptnorm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptnorm/errors.hpp"

namespace ptnorm {

namespace {

using std::complex;

constexpr double kBlowUpFactor = 1e6;

double max_abs(const std::vector<complex<double>>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Thomas algorithm for a constant-off-diagonal tridiagonal system
// (diag d[i], off-diagonals e) acting on the interior points.
void solve_tridiagonal(const std::vector<complex<double>>& d,
                       complex<double> e, std::vector<complex<double>>& rhs,
                       std::vector<complex<double>>& scratch) {
    const size_t n = d.size();
    scratch.resize(n);
    complex<double> beta = d[0];
    rhs[0] /= beta;
    for (size_t i = 1; i < n; ++i) {
        scratch[i] = e / beta;
        beta = d[i] - e * scratch[i];
        rhs[i] = (rhs[i] - e * rhs[i - 1]) / beta;
    }
    for (size_t i = n - 1; i-- > 0;) {
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
    }
}

void check_same_grid(const GridWavefunction& a, const GridWavefunction& b) {
    if (!(a.grid == b.grid)) {
        throw GridMismatch("wavefunctions live on different grids");
    }
}

// first derivative, centered inside, one-sided second order at the ends
void differentiate(const std::vector<complex<double>>& f, double dx,
                   std::vector<complex<double>>& out) {
    const size_t n = f.size();
    out.resize(n);
    const double inv2 = 1.0 / (2.0 * dx);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

}  // namespace

Grid::Grid(double half_width, int points)
    : x_min(-half_width),
      x_max(half_width),
      num_points(points),
      dx(2.0 * half_width / (points - 1)) {
    if (!(half_width > 0.0)) {
        throw ValidationError("grid half-width must be > 0");
    }
    if (points < 16) {
        throw ValidationError("grid requires num_points >= 16");
    }
}

GridWavefunction sample_state(const Eigenstate& state, const Grid& grid) {
    GridWavefunction w{grid, {}, 0.0};
    w.samples.resize(grid.num_points);
    for (int i = 0; i < grid.num_points; ++i) {
        w.samples[i] = evaluate(state, grid.x(i));
    }
    return w;
}

GridWavefunction sample_superposition(
    const std::vector<std::pair<complex<double>, Eigenstate>>& terms,
    const Grid& grid) {
    if (terms.empty()) {
        throw ValidationError("superposition needs at least one term");
    }
    GridWavefunction w{grid, std::vector<complex<double>>(grid.num_points),
                       0.0};
    for (const auto& [coef, state] : terms) {
        for (int i = 0; i < grid.num_points; ++i) {
            w.samples[i] += coef * evaluate(state, grid.x(i));
        }
    }
    return w;
}

std::vector<complex<double>> potential_samples(const ModelSpec& model,
                                               const Grid& grid) {
    std::vector<complex<double>> v(grid.num_points);
    for (int i = 0; i < grid.num_points; ++i) v[i] = potential(model, grid.x(i));
    return v;
}

std::vector<GridWavefunction> evolve(const GridWavefunction& psi0,
                                     std::span<const complex<double>> v,
                                     double dt, int steps, int stride) {
    const Grid& grid = psi0.grid;
    if (!(dt > 0.0)) throw ValidationError("evolve requires dt > 0");
    if (steps < 1) throw ValidationError("evolve requires steps >= 1");
    if (stride < 1) throw ValidationError("evolve requires stride >= 1");
    if (static_cast<int>(v.size()) != grid.num_points) {
        throw GridMismatch("potential sample count differs from the grid");
    }
    if (static_cast<int>(psi0.samples.size()) != grid.num_points) {
        throw GridMismatch("initial state sample count differs from the grid");
    }
    const double initial_max = max_abs(psi0.samples);
    if (initial_max <= 0.0) {
        throw ValidationError("evolve requires a nonzero initial state");
    }
    const double edge =
        std::max(std::abs(psi0.samples.front()), std::abs(psi0.samples.back()));
    if (edge > 1e-8 * initial_max) {
        throw ValidationError(
            "initial state does not vanish at the box edge (|psi| = " +
            std::to_string(edge / initial_max) +
            " of max); enlarge the grid half-width");
    }

    const double dx = grid.dx;
    const int n = grid.num_points;
    const complex<double> half_idt{0.0, 0.5 * dt};

    // interior system: (1 + i dt/2 H) psi_next = (1 - i dt/2 H) psi
    const complex<double> off = half_idt * (-1.0 / (dx * dx));
    std::vector<complex<double>> diag_plus(n - 2), diag_minus(n - 2);
    for (int i = 0; i < n - 2; ++i) {
        const complex<double> h = 2.0 / (dx * dx) + v[i + 1];
        diag_plus[i] = 1.0 + half_idt * h;
        diag_minus[i] = 1.0 - half_idt * h;
    }

    std::vector<GridWavefunction> snapshots;
    snapshots.reserve(static_cast<size_t>(steps / stride) + 2);
    GridWavefunction current = psi0;
    current.samples.front() = 0.0;
    current.samples.back() = 0.0;
    snapshots.push_back(current);

    std::vector<complex<double>> rhs(n - 2), scratch;
    for (int k = 1; k <= steps; ++k) {
        const auto& s = current.samples;
        for (int i = 0; i < n - 2; ++i) {
            rhs[i] = diag_minus[i] * s[i + 1] - off * (s[i] + s[i + 2]);
        }
        solve_tridiagonal(diag_plus, off, rhs, scratch);
        for (int i = 0; i < n - 2; ++i) current.samples[i + 1] = rhs[i];
        current.t = psi0.t + k * dt;

        if (max_abs(current.samples) > kBlowUpFactor * initial_max) {
            throw BlowUp("evolution amplitude grew beyond 1e6x the initial "
                         "maximum at step " + std::to_string(k),
                         k);
        }
        if (k % stride == 0 || k == steps) snapshots.push_back(current);
    }
    return snapshots;
}

std::vector<GridWavefunction> evolve(const GridWavefunction& psi0,
                                     const ModelSpec& model, double dt,
                                     int steps, int stride) {
    const std::vector<complex<double>> v = potential_samples(model, psi0.grid);
    return evolve(psi0, v, dt, steps, stride);
}

DensityPair densities(const GridWavefunction& psi) {
    const int n = psi.grid.num_points;
    DensityPair d;
    d.t = psi.t;
    d.p_pt.resize(n);
    d.j_pt.resize(n);

    // psi(-x) is the reversed array on the symmetric grid
    std::vector<complex<double>> reflected(n);
    for (int i = 0; i < n; ++i) {
        reflected[i] = std::conj(psi.samples[n - 1 - i]);
    }
    for (int i = 0; i < n; ++i) d.p_pt[i] = reflected[i] * psi.samples[i];

    std::vector<complex<double>> dpsi, drefl;
    differentiate(psi.samples, psi.grid.dx, dpsi);
    differentiate(reflected, psi.grid.dx, drefl);
    const complex<double> inv_i{0.0, -1.0};  // 1/i, with hbar/2m = 1
    for (int i = 0; i < n; ++i) {
        d.j_pt[i] =
            inv_i * (reflected[i] * dpsi[i] - psi.samples[i] * drefl[i]);
    }
    return d;
}

double continuity_residual(const GridWavefunction& prev,
                           const GridWavefunction& mid,
                           const GridWavefunction& next) {
    check_same_grid(prev, mid);
    check_same_grid(mid, next);
    const double dt1 = mid.t - prev.t;
    const double dt2 = next.t - mid.t;
    if (!(dt1 > 0.0) || std::fabs(dt1 - dt2) > 1e-12 * dt1) {
        throw ValidationError(
            "continuity_residual requires equally spaced snapshot times");
    }

    const DensityPair d_prev = densities(prev);
    const DensityPair d_mid = densities(mid);
    const DensityPair d_next = densities(next);

    const int n = mid.grid.num_points;
    const double dx = mid.grid.dx;
    double worst = 0.0;
    // interior only: J uses centered first differences, so its own centered
    // difference is valid for i in [2, n-3]
    for (int i = 2; i <= n - 3; ++i) {
        const complex<double> dpdt =
            (d_next.p_pt[i] - d_prev.p_pt[i]) / (2.0 * dt1);
        const complex<double> djdx =
            (d_mid.j_pt[i + 1] - d_mid.j_pt[i - 1]) / (2.0 * dx);
        worst = std::max(worst, std::abs(dpdt + djdx));
    }
    return worst;
}

std::complex<double> grid_overlap(const GridWavefunction& psi1,
                                  const GridWavefunction& psi2) {
    check_same_grid(psi1, psi2);
    const int n = psi1.grid.num_points;
    complex<double> sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        sum += std::conj(psi2.samples[n - 1 - i]) * psi1.samples[i];
    }
    return sum * psi1.grid.dx;
}

double OverlapSeries::max_drift() const {
    double worst = 0.0;
    for (const auto& s : value) worst = std::max(worst, std::abs(s - value[0]));
    return worst;
}

OverlapSeries conserved_overlap(const std::vector<GridWavefunction>& run1,
                                const std::vector<GridWavefunction>& run2) {
    if (run1.size() != run2.size()) {
        throw GridMismatch("snapshot sequences differ in length");
    }
    OverlapSeries series;
    series.t.reserve(run1.size());
    series.value.reserve(run1.size());
    for (size_t k = 0; k < run1.size(); ++k) {
        if (std::fabs(run1[k].t - run2[k].t) > 1e-12 * (1.0 + run1[k].t)) {
            throw GridMismatch("snapshot time stamps differ at index " +
                               std::to_string(k));
        }
        series.t.push_back(run1[k].t);
        series.value.push_back(grid_overlap(run1[k], run2[k]));
    }
    return series;
}

}  // namespace ptnorm
