#pragma once

#include <string>
#include <vector>

#include "dirac3t/flow_index.hpp"
#include "dirac3t/spectrum_engine.hpp"
#include "dirac3t/torus_geometry.hpp"

namespace dirac3t {

enum class SectionCase { Nontrivial, Trivial };

// Small-R spectral-section class: (rank, Chern) over the base torus for
// khat != 0, or a degree per coset of ell_Z/ell for khat = 0.
struct SectionDescriptor {
    SectionCase kase = SectionCase::Nontrivial;
    double R = 0.0;
    std::int64_t rank = 0;
    std::int64_t chern = 0;
    std::vector<std::int64_t> degrees;  // ordered like ParameterLattice::cosets
};

struct KDifference {
    std::int64_t delta_rank = 0;
    std::int64_t delta_c1 = 0;
};

// Orthonormal frame adapted to the plane (or line) ell ox R; projector
// fields for the trivial case are written in the spinor basis in which
// Clifford multiplication by the frame axes is the fixed Pauli triple.
struct PlaneFrame {
    Vec3d u1{0, 0, 0};
    Vec3d u2{0, 0, 0};
    Vec3d nrm{0, 0, 0};
};

PlaneFrame plane_frame(const ParameterLattice& lattice);

// 2x2 projector samples on a polar grid over a disc of radius r_outer in
// beta coordinates; ring i sits at r_outer * i/(nr-1).  ntheta = 2 encodes
// the one-dimensional base (two rays of an interval).
struct DiscField {
    double R = 0.0;
    double r_outer = 0.0;
    std::int64_t nr = 0, ntheta = 0;
    Vec3i block{0, 0, 0};
    bool in_plane = true;
    std::vector<Mat2c> values;

    const Mat2c& at(std::int64_t i, std::int64_t j) const { return values[i * ntheta + j]; }
};

// h x h projector samples on the (offset) N1 x N2 grid of the base torus.
struct TorusField {
    std::int64_t n1 = 0, n2 = 0, h = 0;
    std::vector<std::complex<double>> values;  // per sample row-major h*h

    const std::complex<double>* at(std::int64_t i, std::int64_t j) const {
        return values.data() + (i * n2 + j) * h * h;
    }
};

struct SmallRClassification {
    SectionCase kase = SectionCase::Nontrivial;
    int base_rank = 0;
    double R_inf = 0.0;
    double epsilon = 0.0;
    // nontrivial: admissible ranks are 0..h; for a rank-2 base every rank
    // 0 < r < h carries a free Chern integer
    std::int64_t h = 0;
    bool chern_free = false;
    // trivial: one degree per coset; the minimal system pins every coset to
    // the reference value 0 except the free one
    std::vector<Vec3i> cosets;
    std::int64_t free_coset = 0;
    bool degree_free = false;
};

struct SectionBuild {
    SectionCase kase = SectionCase::Nontrivial;
    int base_rank = 0;
    SectionDescriptor descriptor;
    PlaneFrame frame;
    std::vector<DiscField> disc_fields;  // trivial case: per coset, then forced out-of-plane samples
    TorusField torus_field;              // nontrivial case
};

struct SectionVerifyReport {
    bool ok = true;
    double max_idem = 0.0;
    double max_herm = 0.0;
    double max_forced = 0.0;  // worst violation of the outside-[-R,R] action
    double max_jump = 0.0;    // max neighbor operator-norm jump
    double jump_constant = 0.0;  // max_jump * grid size
    std::int64_t rank = -1;
    double epsilon = 0.0;
    std::vector<std::string> failures;
};

// Largest admissible epsilon_P for the given pair: the smallest positive
// eigenvalue of the (constant) spectrum when khat != 0, and 2 pi times the
// minimal distance from out-of-plane integer points to ell ox R when
// khat = 0.  Requires sections_exist.
double epsilon_bound(const SpincStructure& spinc, const ParameterLattice& lattice);

SmallRClassification classify_small_R(const SpincStructure& spinc, const ParameterLattice& lattice);

// Negative eigenprojector of clifford_block of the in-plane vector beta;
// equals (1 + u.E)/2 with Bloch vector u = -beta/|beta|.  This is the value
// a spectral section is forced to take outside the gap region.
Mat2c boundary_projector(double beta1, double beta2);

Mat2c bloch_to_projector(const Vec3d& u);
Vec3d projector_to_bloch(const Mat2c& p);

// Reference continuation family on the disc of radius R: meridian collar on
// [R/2, R] and a degree-n bubble on [0, R/2]; boundary values match
// boundary_projector's Bloch vectors pointwise.
Vec3d bubble_continuation(std::int64_t n, double R, double r, double theta);

SectionBuild build_projector_field_trivial(const SpincStructure& spinc,
                                           const ParameterLattice& lattice, double R,
                                           const std::vector<std::int64_t>& degrees,
                                           std::int64_t grid);

SectionBuild build_projector_field_nontrivial(const SpincStructure& spinc,
                                              const ParameterLattice& lattice, double R,
                                              std::int64_t rank, std::int64_t chern,
                                              std::int64_t grid);

// pi_2 class of a rank-1 disc field relative to the reference continuation,
// by signed spherical-triangle area summation.
std::int64_t relative_degree(const DiscField& field);

// First Chern number of a constant-rank projector field over the torus grid
// (plaquette phases of frame-overlap determinants).
std::int64_t chern_number(const TorusField& field);

SectionVerifyReport verify_spectral_section(const SectionBuild& build, const SpincStructure& spinc,
                                            const ParameterLattice& lattice, double R);

KDifference k_difference(const SectionDescriptor& a, const SectionDescriptor& b);

}  // namespace dirac3t
