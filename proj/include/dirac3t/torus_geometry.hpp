#pragma once

#include <optional>
#include <vector>

#include "dirac3t/vec.hpp"

namespace dirac3t {

// Spin^c class khat in H^2(T^3;Z) ~ Z^3, decomposed as khat = h*k with k
// primitive and h = gcd of the components (h = 0 for the trivial class).
struct SpincStructure {
    Vec3i khat{0, 0, 0};
    std::int64_t h = 0;
    Vec3i k{0, 0, 0};  // undefined (zero) when khat = 0
    double norm_k = 0.0;

    bool trivial() const { return h == 0; }
};

// Basis data for the projected 2-torus lattice Lambda = pi_k(Z^3) in the
// plane W orthogonal to k.  w_i = pi_k(z_i) for integer preimages z_i, and
// c_i in [0,1) satisfies w_i - c_i*k in Z^3.
struct ProjectedLattice {
    Vec3i k{0, 0, 0};
    Vec3d w1{0, 0, 0};
    Vec3d w2{0, 0, 0};
    Vec3i z1{0, 0, 0};  // integer preimage of w1
    Vec3i z2{0, 0, 0};  // integer preimage of w2
    double c1 = 0.0;
    double c2 = 0.0;
    double area = 0.0;
};

// Integer sublattice ell of Z^3, rank 1 or 2, with its saturation
// ell_Z = (ell ox R) cap Z^3 and coset representatives of ell_Z / ell.
struct ParameterLattice {
    std::vector<Vec3i> generators;
    std::vector<Vec3i> saturation;       // basis of ell_Z, same rank
    std::vector<std::int64_t> divisors;  // elementary divisors d_i: ell = sum d_i * saturation_i
    std::vector<Vec3i> cosets;           // representatives of ell_Z / ell, cosets[0] = 0
    int rank = 0;

    std::int64_t index() const {
        std::int64_t n = 1;
        for (auto d : divisors) n *= d;
        return n;
    }
};

// Orthogonal split of the fiber covector l*d(circle coordinate) against the
// plane W: omega_par + omega_perp with omega_perp parallel to k.
struct FiberFormSplit {
    std::int64_t l = 0;
    Vec3d omega_par{0, 0, 0};
    Vec3d omega_perp{0, 0, 0};
};

struct TrivializedPoint {
    double t1 = 0.0;     // T_Lambda coordinate along w1, in [0,1)
    double t2 = 0.0;     // T_Lambda coordinate along w2, in [0,1)
    double circle = 0.0; // R/Z fiber coordinate, in [0,1)
};

// Smith normal form U*A*V = D of an integer matrix (row-major, r x c),
// with unimodular U (r x r) and V (c x c); diag entries nonnegative and
// each divides the next.
struct SmithNormalForm {
    std::vector<std::vector<std::int64_t>> U, V, D;
};

SmithNormalForm smith_normal_form(std::vector<std::vector<std::int64_t>> A);

SpincStructure decompose_spinc(const Vec3i& khat);

// Requires k primitive and nonzero.  w1, w2 are Lagrange/Gauss reduced
// (shortest first) with deterministic sign and tie-break conventions.
ProjectedLattice projected_lattice(const Vec3i& k);

// chi = coordinates of a point in the (w1, w2, k) basis.
TrivializedPoint trivialize(const ProjectedLattice& pl, const Vec3d& chi);
Vec3d trivialize_inverse(const ProjectedLattice& pl, const TrivializedPoint& tp);

// Conversion between standard R^3 coordinates and (w1, w2, k) coordinates.
Vec3d basis_coords(const ProjectedLattice& pl, const Vec3d& x);
Vec3d point_from_basis_coords(const ProjectedLattice& pl, const Vec3d& chi);

FiberFormSplit fiber_form_split(const ProjectedLattice& pl, std::int64_t l);

// Rejects rank-0, rank-3 and dependent generator lists.
ParameterLattice saturate_and_cosets(const std::vector<Vec3i>& generators);

// Evaluation of khat cup a against the fundamental class; equals the
// standard dot product under the paper-style identifications.
std::int64_t cup_pairing(const Vec3i& khat, const Vec3i& a);

// Solves M*x = v for integer x when v lies in the column span of M
// (columns = basis vectors); used for coset membership tests.
std::optional<Vec3i> solve_integer_combination(const std::vector<Vec3i>& basis, const Vec3i& v);

}  // namespace dirac3t
