// AVX2 + FMA kernel variants; this translation unit is compiled with
// -mavx2 -mfma on x86-64 and omitted elsewhere.

#include "dirac3t/simd/kernels.hpp"

#if defined(__x86_64__) && defined(DIRAC3T_COMPILE_AVX2)

#include <immintrin.h>

namespace dirac3t::simd {

namespace {

// One __m256d holds two interleaved complex doubles [re0 im0 re1 im1].

// w * z for a broadcast scalar w
inline __m256d cmul_scalar(__m256d wr, __m256d wi, __m256d z) {
    const __m256d zs = _mm256_permute_pd(z, 0x5);  // [im0 re0 im1 re1]
    return _mm256_fmaddsub_pd(wr, z, _mm256_mul_pd(wi, zs));
}

// elementwise u[i] * z[i]
inline __m256d cmul(__m256d u, __m256d z) {
    const __m256d ur = _mm256_movedup_pd(u);        // [ur0 ur0 ur1 ur1]
    const __m256d ui = _mm256_permute_pd(u, 0xF);   // [ui0 ui0 ui1 ui1]
    const __m256d zs = _mm256_permute_pd(z, 0x5);
    return _mm256_fmaddsub_pd(ur, z, _mm256_mul_pd(ui, zs));
}

// elementwise conj(u[i]) * z[i]
inline __m256d cmul_conj(__m256d u, __m256d z) {
    const __m256d ur = _mm256_movedup_pd(u);
    const __m256d ui = _mm256_permute_pd(u, 0xF);
    const __m256d zs = _mm256_permute_pd(z, 0x5);
    return _mm256_fmsubadd_pd(ur, z, _mm256_mul_pd(ui, zs));
}

// i * z = [-im, re]
inline __m256d cmul_i(__m256d z) {
    const __m256d zs = _mm256_permute_pd(z, 0x5);
    const __m256d mask = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);  // flip lanes 0, 2
    return _mm256_xor_pd(zs, mask);
}

void zaxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul_scalar(ar, ai, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void zaxpby_avx2(std::size_t n, cplx a, const cplx* x, cplx b, cplx* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real());
    const __m256d bi = _mm256_set1_pd(b.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i,
                         _mm256_add_pd(cmul_scalar(ar, ai, xv), cmul_scalar(br, bi, yv)));
    }
    for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

cplx zdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc = _mm256_add_pd(acc, cmul_conj(xv, yv));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double znrm2sq_avx2(std::size_t n, const cplx* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void flux_T_avx2(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                 const cplx* x, cplx* y) {
    const __m256d facv = _mm256_set1_pd(fac);
    const cplx one_plus_i(1.0, 1.0);
    const cplx iu(0.0, 1.0);
    for (std::int64_t x2 = 0; x2 < N; ++x2) {
        const std::int64_t row = x2 * N;
        const std::int64_t rowup = ((x2 + 1) % N) * N;
        const double* xr = reinterpret_cast<const double*>(x + row);
        const double* xu = reinterpret_cast<const double*>(x + rowup);
        const double* u1 = reinterpret_cast<const double*>(U1 + row);
        const double* u2 = reinterpret_cast<const double*>(U2 + row);
        double* yr = reinterpret_cast<double*>(y + row);
        std::int64_t x1 = 0;
        // x1 + 1 must stay inside the row for the vector body
        for (; x1 + 2 <= N - 1; x1 += 2) {
            const __m256d xc = _mm256_loadu_pd(xr + 2 * x1);
            const __m256d xp1 = _mm256_loadu_pd(xr + 2 * (x1 + 1));
            const __m256d xp2 = _mm256_loadu_pd(xu + 2 * x1);
            const __m256d u1v = _mm256_loadu_pd(u1 + 2 * x1);
            const __m256d u2v = _mm256_loadu_pd(u2 + 2 * x1);
            __m256d acc = cmul(u1v, xp1);
            acc = _mm256_add_pd(acc, cmul_i(cmul(u2v, xp2)));
            acc = _mm256_sub_pd(acc, _mm256_add_pd(xc, cmul_i(xc)));  // (1+i) x
            _mm256_storeu_pd(yr + 2 * x1, _mm256_mul_pd(facv, acc));
        }
        for (; x1 < N; ++x1) {
            const std::int64_t s = row + x1;
            const cplx xp1 = x[row + (x1 + 1) % N];
            const cplx xp2 = x[rowup + x1];
            y[s] = fac * (U1[s] * xp1 + iu * (U2[s] * xp2) - one_plus_i * x[s]);
        }
    }
}

void flux_Tdag_avx2(std::int64_t N, double fac, const cplx* U1, const cplx* U2,
                    const cplx* x, cplx* y) {
    const __m256d facv = _mm256_set1_pd(fac);
    const cplx one_minus_i(1.0, -1.0);
    const cplx iu(0.0, 1.0);
    for (std::int64_t x2 = 0; x2 < N; ++x2) {
        const std::int64_t row = x2 * N;
        const std::int64_t rowdn = ((x2 + N - 1) % N) * N;
        const double* xr = reinterpret_cast<const double*>(x + row);
        const double* xd = reinterpret_cast<const double*>(x + rowdn);
        const double* u1 = reinterpret_cast<const double*>(U1 + row);
        const double* u2 = reinterpret_cast<const double*>(U2 + rowdn);
        double* yr = reinterpret_cast<double*>(y + row);
        std::int64_t x1 = 1;
        {
            // x1 = 0 wraps in the e1 direction
            const std::int64_t s = row;
            const std::int64_t sm1 = row + N - 1;
            const std::int64_t sm2 = rowdn;
            y[s] = fac * (std::conj(U1[sm1]) * x[sm1] - iu * (std::conj(U2[sm2]) * x[sm2]) -
                          one_minus_i * x[s]);
        }
        for (; x1 + 2 <= N; x1 += 2) {
            const __m256d xc = _mm256_loadu_pd(xr + 2 * x1);
            const __m256d xm1 = _mm256_loadu_pd(xr + 2 * (x1 - 1));
            const __m256d xm2 = _mm256_loadu_pd(xd + 2 * x1);
            const __m256d u1v = _mm256_loadu_pd(u1 + 2 * (x1 - 1));
            const __m256d u2v = _mm256_loadu_pd(u2 + 2 * x1);
            __m256d acc = cmul_conj(u1v, xm1);
            acc = _mm256_sub_pd(acc, cmul_i(cmul_conj(u2v, xm2)));
            acc = _mm256_sub_pd(acc, _mm256_sub_pd(xc, cmul_i(xc)));  // (1-i) x
            _mm256_storeu_pd(yr + 2 * x1, _mm256_mul_pd(facv, acc));
        }
        for (; x1 < N; ++x1) {
            const std::int64_t s = row + x1;
            const std::int64_t sm1 = row + x1 - 1;
            const std::int64_t sm2 = rowdn + x1;
            y[s] = fac * (std::conj(U1[sm1]) * x[sm1] - iu * (std::conj(U2[sm2]) * x[sm2]) -
                          one_minus_i * x[s]);
        }
    }
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{"avx2",       zaxpy_avx2,  zaxpby_avx2, zdotc_avx2,
                                   znrm2sq_avx2, flux_T_avx2, flux_Tdag_avx2};
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &table;
    return nullptr;
}

}  // namespace dirac3t::simd

#else

namespace dirac3t::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace dirac3t::simd

#endif
