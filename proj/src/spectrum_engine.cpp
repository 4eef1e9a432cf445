#include "dirac3t/spectrum_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirac3t/errors.hpp"

namespace dirac3t {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIntegerTol = 1e-9;  // tolerance on <k,alpha>/2pi mod 1 and |beta|

void require_nontrivial(const SpincStructure& s, const char* what) {
    if (s.trivial())
        throw DomainError("spectrum_engine", std::string(what) + " requires a nontrivial Spin^c structure");
}

}  // namespace

bool label_less(const BranchLabel& a, const BranchLabel& b) {
    if (a.kase != b.kase) return a.kase < b.kase;
    if (a.kase == SpectralCase::Nontrivial)
        return std::tuple(a.l, a.n, a.sign) < std::tuple(b.l, b.n, b.sign);
    return std::tuple(a.b, a.sign) < std::tuple(b.b, b.sign);
}

std::vector<double> SpectrumSlice::expanded() const {
    std::vector<double> out;
    for (const auto& e : entries)
        for (std::int64_t i = 0; i < e.mult; ++i) out.push_back(e.value);
    std::sort(out.begin(), out.end());
    return out;
}

HarmonicForm split_harmonic_form(const SpincStructure& spinc, const Vec3d& alpha) {
    HarmonicForm hf;
    hf.alpha = alpha;
    if (spinc.trivial()) {
        hf.alpha_par = alpha;
        return hf;
    }
    const Vec3d kd = to_double(spinc.k);
    hf.alpha_perp = scale(dot(alpha, kd) / dot(kd, kd), kd);
    hf.alpha_par = sub(alpha, hf.alpha_perp);
    return hf;
}

double lambda_l(const SpincStructure& spinc, const Vec3d& alpha, std::int64_t l) {
    require_nontrivial(spinc, "lambda_l");
    return (kTwoPi * double(l) + dot(spinc.k, alpha)) / spinc.norm_k;
}

double mu_m(const SpincStructure& spinc, std::int64_t m) {
    require_nontrivial(spinc, "mu_m");
    const std::int64_t n = std::llabs(m) / spinc.h;
    const double v = std::sqrt(kTwoPi * double(spinc.h) * spinc.norm_k * double(n));
    return m < 0 ? -v : v;
}

std::array<double, 4> block_matrix(double lambda, double mu) {
    return {lambda, mu, mu, -lambda};
}

BlockEigenData block_eigen_data(double lambda, double mu) {
    BlockEigenData d;
    d.lambda = lambda;
    d.mu = mu;
    d.s = std::hypot(lambda, mu);
    d.vplus = {lambda + mu + d.s, -lambda + mu + d.s};
    d.vminus = {lambda + mu - d.s, -lambda + mu - d.s};
    return d;
}

Mat2c clifford_block(const Vec3d& beta) {
    const std::complex<double> i(0.0, 1.0);
    return {std::complex<double>(beta[2], 0.0), beta[0] - i * beta[1],
            beta[0] + i * beta[1], std::complex<double>(-beta[2], 0.0)};
}

SpectrumSlice enumerate_spectrum(const SpincStructure& spinc, const Vec3d& alpha, double cutoff) {
    if (!(cutoff > 0.0)) throw DomainError("spectrum_engine", "cutoff must be positive");

    SpectrumSlice slice;
    slice.alpha = alpha;

    if (!spinc.trivial()) {
        const double s = dot(spinc.k, alpha);
        const double nk = spinc.norm_k;
        const double step = kTwoPi * double(spinc.h) * nk;  // Landau spacing of D^2
        // |2 pi l + s| <= cutoff * |k|
        const std::int64_t lmin = std::int64_t(std::ceil((-cutoff * nk - s) / kTwoPi - 1e-12));
        const std::int64_t lmax = std::int64_t(std::floor((cutoff * nk - s) / kTwoPi + 1e-12));
        for (std::int64_t l = lmin; l <= lmax; ++l) {
            const double lam = (kTwoPi * double(l) + s) / nk;
            if (std::abs(lam) > cutoff) continue;
            slice.entries.push_back({lam, spinc.h, {SpectralCase::Nontrivial, l, 0, 0, {0, 0, 0}}});
            for (std::int64_t n = 1; lam * lam + step * double(n) <= cutoff * cutoff; ++n) {
                const double v = std::sqrt(lam * lam + step * double(n));
                slice.entries.push_back({+v, spinc.h, {SpectralCase::Nontrivial, l, n, +1, {0, 0, 0}}});
                slice.entries.push_back({-v, spinc.h, {SpectralCase::Nontrivial, l, n, -1, {0, 0, 0}}});
            }
        }
    } else {
        Vec3i bmin, bmax;
        for (int i = 0; i < 3; ++i) {
            bmin[i] = std::int64_t(std::ceil((-cutoff - alpha[i]) / kTwoPi - 1e-12));
            bmax[i] = std::int64_t(std::floor((cutoff - alpha[i]) / kTwoPi + 1e-12));
        }
        for (std::int64_t b0 = bmin[0]; b0 <= bmax[0]; ++b0)
            for (std::int64_t b1 = bmin[1]; b1 <= bmax[1]; ++b1)
                for (std::int64_t b2 = bmin[2]; b2 <= bmax[2]; ++b2) {
                    const Vec3i b{b0, b1, b2};
                    const Vec3d beta = add(alpha, scale(kTwoPi, to_double(b)));
                    const double v = norm(beta);
                    if (v > cutoff) continue;
                    slice.entries.push_back({+v, 1, {SpectralCase::Trivial, 0, 0, +1, b}});
                    slice.entries.push_back({-v, 1, {SpectralCase::Trivial, 0, 0, -1, b}});
                }
    }

    std::sort(slice.entries.begin(), slice.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  if (a.value != b.value) return a.value < b.value;
                  return label_less(a.label, b.label);
              });
    return slice;
}

std::int64_t kernel_dimension(const SpincStructure& spinc, const Vec3d& alpha) {
    if (!spinc.trivial()) {
        const double t = dot(spinc.k, alpha) / kTwoPi;
        return std::abs(t - std::round(t)) <= kIntegerTol ? spinc.h : 0;
    }
    Vec3d beta = alpha;
    for (int i = 0; i < 3; ++i) beta[i] -= kTwoPi * std::round(alpha[i] / kTwoPi);
    return norm(beta) <= kIntegerTol ? 2 : 0;
}

}  // namespace dirac3t
