#include <cstdlib>

#include "dirac3t/simd/kernels.hpp"

namespace dirac3t::simd {

namespace {

const KernelTable* select() {
    const char* force = std::getenv("DIRAC3T_FORCE_SCALAR");
    if (force && force[0] == '1') return &scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable* active = select();
    return *active;
}

const char* active_isa() { return kernels().name; }

}  // namespace dirac3t::simd
