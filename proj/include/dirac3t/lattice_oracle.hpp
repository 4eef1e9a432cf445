#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dirac3t/spectrum_engine.hpp"
#include "dirac3t/torus_geometry.hpp"
#include "dirac3t/vec.hpp"

namespace dirac3t {

// U(1) flux lattice on an N x N torus of area `area`: Landau gauge
// U2(x) = exp(i phi x1) with one twisted column U1(N-1, x2) = exp(-i phi N x2)
// carrying the flux around the torus; every plaquette holds phi = 2 pi h / N^2.
struct FluxLattice {
    std::int64_t N = 0;
    std::int64_t h = 0;
    double area = 0.0;
    double spacing = 0.0;                  // sqrt(area) / N
    std::vector<std::complex<double>> U1;  // link in +e1, row-major site index
    std::vector<std::complex<double>> U2;  // link in +e2
    std::vector<double> plaquette_fluxes;

    std::int64_t sites() const { return N * N; }
};

struct SparseEntry {
    std::int64_t row = 0, col = 0;
    std::complex<double> value;
};

struct OracleReport {
    std::int64_t h = 0, N = 0;
    double norm_k = 0.0, area = 0.0;
    std::vector<double> computed_levels;        // cluster means, n = 0..n_max
    std::vector<std::int64_t> cluster_sizes;    // states per cluster in T^dag T
    std::vector<double> predicted_levels;       // 2 pi h |k| n
    std::int64_t zero_modes = 0;
    double max_rel_error = 0.0;
    double zero_mode_scale = 0.0;               // |D| scale used for the 1e-6 test
    bool conclusive = true;
    std::string message;
};

struct BlockOracleReport {
    std::int64_t count = 0;
    double max_clifford_eig_dev = 0.0;   // vs +-|beta|
    double max_clifford_proj_dev = 0.0;  // negative eigenprojector vs (1 + u.E)/2
    double max_block_eig_dev = 0.0;      // vs +-sqrt(lambda^2+mu^2)
    double max_block_angle = 0.0;        // eigenvector angle to closed-form vplus (rad)
};

FluxLattice build_flux_lattice(std::int64_t h, std::int64_t N, double area);

// Full two-component Dirac matrix D = [[0, T^dag], [T, 0]] of dimension
// 2 N^2 as sparse triplets; chirality block ordering (upper = +, lower = -).
std::vector<SparseEntry> build_flux_dirac(const FluxLattice& fl);

void apply_T(const FluxLattice& fl, const std::complex<double>* x, std::complex<double>* y);
void apply_Tdag(const FluxLattice& fl, const std::complex<double>* x, std::complex<double>* y);

// Upper bound for the spectrum of T^dag T (stencil norm bound).
double tdagt_upper_bound(const FluxLattice& fl);

// Lowest `count` eigenvalues of T^dag T, ascending.  Dense solve for small
// lattices, Chebyshev-filtered subspace iteration (deterministic seed) for
// larger ones; `window_hint` is an upper estimate for the wanted eigenvalues
// used only to place the filter window.
std::vector<double> lowest_tdagt_eigenvalues(const FluxLattice& fl, int count, double window_hint);

// Count of +-pairs of numerically-zero Dirac eigenvalues, threshold
// |lambda| < 1e-6 * |D|-scale.
std::int64_t count_zero_modes(std::int64_t h, std::int64_t N, double area);

OracleReport landau_check(std::int64_t h, double norm_k, std::int64_t N, int n_max);

// Combines exact fiber eigenvalues lambda_l with oracle transverse levels
// (cluster means, index = Landau n).  Requires cutoff^2 below the first
// missing level so the enumeration is complete.
SpectrumSlice assemble_3d_spectrum(const SpincStructure& spinc, const Vec3d& alpha, double cutoff,
                                   const std::vector<double>& oracle_levels);

BlockOracleReport mode_block_oracle(std::int64_t count, std::uint64_t seed = 0x5eed);

// Conjugates the links by a site-local U(1) gauge transformation (test hook:
// the spectrum must not move).
FluxLattice gauge_transform(const FluxLattice& fl, const std::vector<double>& site_phases);

}  // namespace dirac3t
