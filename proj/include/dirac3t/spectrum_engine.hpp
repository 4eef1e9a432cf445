#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dirac3t/torus_geometry.hpp"
#include "dirac3t/vec.hpp"

namespace dirac3t {

using Mat2c = std::array<std::complex<double>, 4>;  // row-major 2x2

enum class SpectralCase { Nontrivial, Trivial };

// Branch bookkeeping: nontrivial branches are indexed by the fiber mode l,
// the Landau index n = floor(|m|/h) and a sign (0 only for the n = 0
// branch); trivial branches by the Fourier mode b and a sign.
struct BranchLabel {
    SpectralCase kase = SpectralCase::Nontrivial;
    std::int64_t l = 0;
    std::int64_t n = 0;
    int sign = 0;  // -1, 0, +1
    Vec3i b{0, 0, 0};

    friend bool operator==(const BranchLabel&, const BranchLabel&) = default;
};

bool label_less(const BranchLabel& a, const BranchLabel& b);

struct SpectrumEntry {
    double value = 0.0;
    std::int64_t mult = 1;
    BranchLabel label;
};

struct SpectrumSlice {
    Vec3d alpha{0, 0, 0};
    std::vector<SpectrumEntry> entries;  // sorted by (value, label)

    // multiset of eigenvalues with multiplicities expanded, sorted
    std::vector<double> expanded() const;
};

// Eigen data of the 2x2 block [[lambda, mu], [mu, -lambda]].
struct BlockEigenData {
    double lambda = 0.0;
    double mu = 0.0;
    double s = 0.0;                       // sqrt(lambda^2 + mu^2)
    std::array<double, 2> vplus{0, 0};    // (lambda+mu+s, -lambda+mu+s)
    std::array<double, 2> vminus{0, 0};   // (lambda+mu-s, -lambda+mu-s)
};

// Harmonic one-form alpha with its split against the fiber direction k.
struct HarmonicForm {
    Vec3d alpha{0, 0, 0};
    Vec3d alpha_par{0, 0, 0};
    Vec3d alpha_perp{0, 0, 0};
};

HarmonicForm split_harmonic_form(const SpincStructure& spinc, const Vec3d& alpha);

// lambda_l = (2 pi l + <k, alpha>) / |k|; nontrivial structures only.
double lambda_l(const SpincStructure& spinc, const Vec3d& alpha, std::int64_t l);

// mu_m = sgn(m) sqrt(2 pi h |k| floor(|m|/h)); nontrivial structures only.
double mu_m(const SpincStructure& spinc, std::int64_t m);

// 2x2 real symmetric block [[lambda, mu], [mu, -lambda]] and its closed-form
// eigen data (eigenvalues +-sqrt(lambda^2+mu^2), eigenvectors vplus/vminus).
std::array<double, 4> block_matrix(double lambda, double mu);
BlockEigenData block_eigen_data(double lambda, double mu);

// Hermitian Clifford block beta . E for the fixed Pauli triple
//   E1 = [[0,1],[1,0]], E2 = [[0,-i],[i,0]], E3 = [[1,0],[0,-1]].
// The Dirac operator restricted to a trivial-case block acts as
// -clifford_block(beta); its positive spectral projector is therefore the
// negative eigenprojector of clifford_block(beta).
Mat2c clifford_block(const Vec3d& beta);

SpectrumSlice enumerate_spectrum(const SpincStructure& spinc, const Vec3d& alpha, double cutoff);

std::int64_t kernel_dimension(const SpincStructure& spinc, const Vec3d& alpha);

}  // namespace dirac3t
