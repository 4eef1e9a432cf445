#include "dirac3t/simd/kernels.hpp"

namespace dirac3t::simd {

namespace {

void zaxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void zaxpby_scalar(std::size_t n, cplx a, const cplx* x, cplx b, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

cplx zdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double znrm2sq_scalar(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void flux_T_scalar(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                   const cplx* x, cplx* y) {
    const cplx one_plus_i(1.0, 1.0);
    const cplx iu(0.0, 1.0);
    for (std::int64_t x2 = 0; x2 < N; ++x2) {
        const std::int64_t row = x2 * N;
        const std::int64_t rowup = ((x2 + 1) % N) * N;
        for (std::int64_t x1 = 0; x1 < N; ++x1) {
            const std::int64_t s = row + x1;
            const cplx xp1 = x[row + (x1 + 1) % N];
            const cplx xp2 = x[rowup + x1];
            y[s] = fac * (U1[s] * xp1 + iu * (U2[s] * xp2) - one_plus_i * x[s]);
        }
    }
}

void flux_Tdag_scalar(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                      const cplx* x, cplx* y) {
    const cplx one_minus_i(1.0, -1.0);
    const cplx iu(0.0, 1.0);
    for (std::int64_t x2 = 0; x2 < N; ++x2) {
        const std::int64_t row = x2 * N;
        const std::int64_t rowdn = ((x2 + N - 1) % N) * N;
        for (std::int64_t x1 = 0; x1 < N; ++x1) {
            const std::int64_t s = row + x1;
            const std::int64_t sm1 = row + (x1 + N - 1) % N;
            const std::int64_t sm2 = rowdn + x1;
            y[s] = fac * (std::conj(U1[sm1]) * x[sm1] - iu * (std::conj(U2[sm2]) * x[sm2]) -
                          one_minus_i * x[s]);
        }
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar",      zaxpy_scalar,  zaxpby_scalar, zdotc_scalar,
                                   znrm2sq_scalar, flux_T_scalar, flux_Tdag_scalar};
    return table;
}

}  // namespace dirac3t::simd
