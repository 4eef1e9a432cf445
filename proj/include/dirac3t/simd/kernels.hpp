#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace dirac3t::simd {

using cplx = std::complex<double>;

// Data-parallel kernels behind the eigensolver iteration and stencil
// application.  Every entry has a scalar reference implementation and may
// have an AVX2 variant; the active table is chosen once at runtime from
// CPUID (override with DIRAC3T_FORCE_SCALAR=1).  Variants are equivalence
// tested against the scalar reference.
struct KernelTable {
    const char* name;

    // y += a*x
    void (*zaxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    // y = a*x + b*y
    void (*zaxpby)(std::size_t n, cplx a, const cplx* x, cplx b, cplx* y);
    // sum conj(x_i) * y_i
    cplx (*zdotc)(std::size_t n, const cplx* x, const cplx* y);
    // sum |x_i|^2
    double (*znrm2sq)(std::size_t n, const cplx* x);

    // Flux-lattice dbar stencil on an N x N torus, row-major sites
    // s = x2*N + x1:
    //   (T x)[s]    = fac * ( U1[s] x[s+e1] + i U2[s] x[s+e2] - (1+i) x[s] )
    //   (Tdag x)[s] = fac * ( conj(U1[s-e1]) x[s-e1] - i conj(U2[s-e2]) x[s-e2]
    //                         - (1-i) x[s] )
    void (*flux_T)(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                   const cplx* x, cplx* y);
    void (*flux_Tdag)(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                      const cplx* x, cplx* y);
};

const KernelTable& scalar_kernels();

// nullptr when AVX2 is not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

// Runtime-selected table (cached after first call).
const KernelTable& kernels();

const char* active_isa();

}  // namespace dirac3t::simd
