#pragma once

#include <vector>

#include "dirac3t/spectrum_engine.hpp"
#include "dirac3t/torus_geometry.hpp"

namespace dirac3t {

struct Crossing {
    double t = 0.0;  // in [0,1)
    BranchLabel branch;
    int direction = 0;  // +1 / -1
};

struct FlowResult {
    Vec3i loop{0, 0, 0};
    std::int64_t flow = 0;
    std::vector<Crossing> crossings;  // one record per eigenvalue copy
    bool degeneracy_warning = false;  // crossing within 1e-9 of a sample point
};

// Closed form <khat, a> (Lemma-flow value); 0 for the trivial class.
std::int64_t spectral_flow_closed_form(const SpincStructure& spinc, const Vec3i& a);

// Sampled branch tracker along alpha(t) = 2 pi t a, t in [0,1).  Nontrivial
// case: detects sign changes of the affine branches lambda_l(t) on a grid of
// `samples` points and refines each crossing by bisection; trivial case:
// checks the +-|beta| pairing at every sample (no crossings, flow 0).
FlowResult spectral_flow_numeric(const SpincStructure& spinc, const Vec3i& a, int samples = 64);

// values[i] = <khat, generator_i>; the K^1(B) index of the family in the
// dual basis of ell.
struct IndexElement {
    std::vector<std::int64_t> values;

    bool zero() const {
        for (auto v : values)
            if (v != 0) return false;
        return true;
    }
};

IndexElement index_element(const SpincStructure& spinc, const ParameterLattice& lattice);

bool sections_exist(const SpincStructure& spinc, const ParameterLattice& lattice);

}  // namespace dirac3t
