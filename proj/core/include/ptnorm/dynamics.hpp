#ifndef PTNORM_DYNAMICS_HPP
#define PTNORM_DYNAMICS_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "ptnorm/models.hpp"

namespace ptnorm {

/// Uniform symmetric grid x_min = -x_max, so that psi(-x) is the reversed
/// sample array.
struct Grid {
    double x_min;
    double x_max;
    int num_points;
    double dx;

    Grid(double half_width, int points);

    double x(int i) const { return x_min + dx * i; }
    bool operator==(const Grid& other) const {
        return x_max == other.x_max && num_points == other.num_points;
    }
};

struct GridWavefunction {
    Grid grid;
    std::vector<std::complex<double>> samples;
    double t = 0.0;
};

/// P_PT[i] = psi*(-x_i) psi(x_i) and the matching current from centered
/// differences; both are complex in general.
struct DensityPair {
    std::vector<std::complex<double>> p_pt;
    std::vector<std::complex<double>> j_pt;
    double t = 0.0;
};

GridWavefunction sample_state(const Eigenstate& state, const Grid& grid);

/// Sum of coefficient * state over the grid. States are evaluated with
/// their current coefficients.
GridWavefunction sample_superposition(
    const std::vector<std::pair<std::complex<double>, Eigenstate>>& terms,
    const Grid& grid);

std::vector<std::complex<double>> potential_samples(const ModelSpec& model,
                                                    const Grid& grid);

/// Time-centered implicit (trapezoidal) evolution of
/// i d psi/dt = -psi'' + V psi with Dirichlet zero boundaries; second order
/// in dt and dx, unconditionally stable, valid for complex V. Returns
/// snapshots at t0 + k*dt for k = 0, stride, 2*stride, ..., steps.
/// Throws BlowUp if max|psi| grows by more than 1e6.
std::vector<GridWavefunction> evolve(const GridWavefunction& psi0,
                                     std::span<const std::complex<double>> v,
                                     double dt, int steps, int stride = 1);
std::vector<GridWavefunction> evolve(const GridWavefunction& psi0,
                                     const ModelSpec& model, double dt,
                                     int steps, int stride = 1);

DensityPair densities(const GridWavefunction& psi);

/// Max over interior grid points of |centered-time-difference of P_PT +
/// centered-space-difference of J_PT| for three equally spaced snapshots.
double continuity_residual(const GridWavefunction& prev,
                           const GridWavefunction& mid,
                           const GridWavefunction& next);

/// Discrete overlap S = sum_i psi2*(-x_i) psi1(x_i) dx.
std::complex<double> grid_overlap(const GridWavefunction& psi1,
                                  const GridWavefunction& psi2);

struct OverlapSeries {
    std::vector<double> t;
    std::vector<std::complex<double>> value;

    double max_drift() const;
};

/// S(t) across two snapshot sequences sharing grid and time stamps.
OverlapSeries conserved_overlap(const std::vector<GridWavefunction>& run1,
                                const std::vector<GridWavefunction>& run2);

}  // namespace ptnorm

#endif  // PTNORM_DYNAMICS_HPP
