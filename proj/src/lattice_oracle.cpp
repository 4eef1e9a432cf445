#include "dirac3t/lattice_oracle.hpp"
#include <cstdio>
#include <cstdlib>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dirac3t/errors.hpp"
#include "dirac3t/simd/kernels.hpp"

namespace dirac3t {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kDenseLimit = 1200;  // dense eigensolve up to this dimension

using Cplx = std::complex<double>;

void apply_tdagt(const FluxLattice& fl, std::vector<Cplx>& tmp, const Cplx* x, Cplx* y) {
    apply_T(fl, x, tmp.data());
    apply_Tdag(fl, tmp.data(), y);
}

Eigen::MatrixXcd dense_T(const FluxLattice& fl) {
    const std::int64_t n = fl.sites();
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    std::vector<Cplx> x(n, 0.0), y(n, 0.0);
    for (std::int64_t j = 0; j < n; ++j) {
        x[j] = 1.0;
        apply_T(fl, x.data(), y.data());
        for (std::int64_t i = 0; i < n; ++i) t(i, j) = y[i];
        x[j] = 0.0;
    }
    return t;
}

// Chebyshev-filtered block subspace iteration for the low end of T^dag T.
std::vector<double> filtered_lowest(const FluxLattice& fl, int count, double window_hint) {
    const std::int64_t n = fl.sites();
    const double lmax = tdagt_upper_bound(fl);
    double c = std::min(std::max(window_hint * 1.3, lmax * 1e-7), 0.5 * lmax);
    double half = 0.5 * (lmax - c);
    double mid = 0.5 * (lmax + c);
    int degree = 60;
    auto set_window = [&](double edge) {
        c = std::min(edge, 0.5 * lmax);
        half = 0.5 * (lmax - c);
        mid = 0.5 * (lmax + c);
        degree = int(std::min<std::int64_t>(
            2000, std::max<std::int64_t>(60, std::llround(5.0 / std::sqrt(c / lmax)))));
    };
    set_window(c);
    const int s = count + std::max(8, count / 2);

    std::mt19937_64 rng(0xD17AC0DEULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Cplx>> basis(s, std::vector<Cplx>(n));
    for (auto& v : basis)
        for (auto& z : v) z = Cplx(gauss(rng), gauss(rng));

    const auto& K = simd::kernels();
    std::vector<Cplx> tmp(n), t0(n), t1(n), t2(n);

    auto cheb_filter = [&](std::vector<Cplx>& v) {
        // t0 = v, t1 = (A v - mid v)/half, t_{k+1} = 2/half (A t_k - mid t_k) - t_{k-1}
        t0 = v;
        apply_tdagt(fl, tmp, t0.data(), t1.data());
        K.zaxpby(n, Cplx(-mid / half, 0.0), t0.data(), Cplx(0.0, 0.0), t2.data());
        // t2 currently -mid/half * t0; fold in A t0 / half
        K.zaxpy(n, Cplx(1.0 / half, 0.0), t1.data(), t2.data());
        std::swap(t1, t2);
        for (int k = 1; k < degree; ++k) {
            apply_tdagt(fl, tmp, t1.data(), t2.data());
            K.zaxpby(n, Cplx(2.0 / half, 0.0), t2.data(), Cplx(0.0, 0.0), tmp.data());
            std::swap(t2, tmp);
            K.zaxpy(n, Cplx(-2.0 * mid / half, 0.0), t1.data(), t2.data());
            K.zaxpy(n, Cplx(-1.0, 0.0), t0.data(), t2.data());
            std::swap(t0, t1);
            std::swap(t1, t2);
        }
        v = t1;
    };

    // Subspace iteration with locking: converged leading pairs are frozen and
    // the Chebyshev filter runs on the active block only, so later clusters
    // are not crushed by the amplification of the already-converged head.
    std::vector<double> locked_vals;
    int locked = 0, stall = 0;
    const double tol = 1e-10 * lmax;
    for (int outer = 0; outer < 300 && locked < count; ++outer) {
        for (int i = locked; i < s; ++i) cheb_filter(basis[i]);

        // modified Gram-Schmidt against locked + active vectors
        for (int i = locked; i < s; ++i) {
            for (int rep = 0; rep < 2; ++rep)
                for (int j = 0; j < i; ++j) {
                    Cplx pr = K.zdotc(n, basis[j].data(), basis[i].data());
                    K.zaxpy(n, -pr, basis[j].data(), basis[i].data());
                }
            double nrm = std::sqrt(K.znrm2sq(n, basis[i].data()));
            if (nrm < 1e-200) {
                for (auto& z : basis[i]) z = Cplx(gauss(rng), gauss(rng));
                nrm = std::sqrt(K.znrm2sq(n, basis[i].data()));
            }
            K.zaxpby(n, Cplx(0.0, 0.0), basis[i].data(), Cplx(1.0 / nrm, 0.0), basis[i].data());
        }

        // Rayleigh-Ritz on the active block
        const int na = s - locked;
        std::vector<std::vector<Cplx>> av(na, std::vector<Cplx>(n));
        for (int i = 0; i < na; ++i) apply_tdagt(fl, tmp, basis[locked + i].data(), av[i].data());
        Eigen::MatrixXcd H(na, na);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) H(i, j) = K.zdotc(n, basis[locked + i].data(), av[j].data());
        H = (H + H.adjoint().eval()) * 0.5;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        Eigen::MatrixXcd rot = es.eigenvectors();

        std::vector<std::vector<Cplx>> rotated(na, std::vector<Cplx>(n, Cplx(0.0, 0.0)));
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j)
                K.zaxpy(n, rot(j, i), basis[locked + j].data(), rotated[i].data());
        for (int i = 0; i < na; ++i) basis[locked + i] = std::move(rotated[i]);

        // lock the converged ascending prefix
        int newly = 0;
        for (int i = 0; i < na && locked + i < count; ++i) {
            apply_tdagt(fl, tmp, basis[locked + i].data(), t0.data());
            K.zaxpy(n, Cplx(-es.eigenvalues()(i), 0.0), basis[locked + i].data(), t0.data());
            const double res = std::sqrt(K.znrm2sq(n, t0.data()));
            if (res > tol) break;
            locked_vals.push_back(es.eigenvalues()(i));
            ++newly;
        }
        locked += newly;
        // a misjudged window hint leaves wanted eigenvalues inside the
        // suppression interval; widen it when progress stalls
        stall = newly > 0 ? 0 : stall + 1;
        if (stall >= 10) {
            set_window(2.0 * c);
            stall = 0;
        }
        if (std::getenv("DIRAC3T_DEBUG_FILTER"))
            std::fprintf(stderr, "outer %d locked %d/%d head %.3e window %.3e\n", outer, locked,
                         count, es.eigenvalues()(0), c);
    }
    if (locked < count)
        throw DomainError("lattice_oracle", "filtered eigensolver did not converge");
    locked_vals.resize(count);
    return locked_vals;
}

std::vector<std::int64_t> cluster_boundaries(const std::vector<double>& vals, double gap) {
    std::vector<std::int64_t> starts{0};
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] - vals[i - 1] > gap) starts.push_back(std::int64_t(i));
    starts.push_back(std::int64_t(vals.size()));
    return starts;
}

}  // namespace

FluxLattice build_flux_lattice(std::int64_t h, std::int64_t N, double area) {
    if (N < 8) throw DomainError("lattice_oracle", "flux lattice requires N >= 8");
    if (h < 1) throw DomainError("lattice_oracle", "flux lattice requires h >= 1");
    if (!(area > 0.0)) throw DomainError("lattice_oracle", "flux lattice requires positive area");
    if (N * N < 64 * h)
        throw DomainError("lattice_oracle",
                          "lattice too coarse for flux h (need N^2 >= 64 h to keep artifacts small)");

    FluxLattice fl;
    fl.N = N;
    fl.h = h;
    fl.area = area;
    fl.spacing = std::sqrt(area) / double(N);
    const double phi = kTwoPi * double(h) / double(N * N);
    fl.U1.assign(N * N, Cplx(1.0, 0.0));
    fl.U2.assign(N * N, Cplx(0.0, 0.0));
    for (std::int64_t x2 = 0; x2 < N; ++x2)
        for (std::int64_t x1 = 0; x1 < N; ++x1) {
            const std::int64_t s = x2 * N + x1;
            fl.U2[s] = std::polar(1.0, phi * double(x1));
            if (x1 == N - 1) fl.U1[s] = std::polar(1.0, -phi * double(N) * double(x2));
        }
    fl.plaquette_fluxes.assign(N * N, 0.0);
    for (std::int64_t x2 = 0; x2 < N; ++x2)
        for (std::int64_t x1 = 0; x1 < N; ++x1) {
            const std::int64_t s = x2 * N + x1;
            const std::int64_t sp1 = x2 * N + (x1 + 1) % N;
            const std::int64_t sp2 = ((x2 + 1) % N) * N + x1;
            const Cplx loop = fl.U1[s] * fl.U2[sp1] * std::conj(fl.U1[sp2]) * std::conj(fl.U2[s]);
            fl.plaquette_fluxes[s] = std::arg(loop);
        }
    return fl;
}

std::vector<SparseEntry> build_flux_dirac(const FluxLattice& fl) {
    const std::int64_t n = fl.sites();
    const double fac = 1.0 / (fl.spacing * std::sqrt(2.0));
    const Cplx iu(0.0, 1.0);
    std::vector<SparseEntry> out;
    out.reserve(6 * n);
    // lower-left block T (rows n..2n-1, cols 0..n-1), upper-right T^dag
    for (std::int64_t x2 = 0; x2 < fl.N; ++x2)
        for (std::int64_t x1 = 0; x1 < fl.N; ++x1) {
            const std::int64_t s = x2 * fl.N + x1;
            const std::int64_t sp1 = x2 * fl.N + (x1 + 1) % fl.N;
            const std::int64_t sp2 = ((x2 + 1) % fl.N) * fl.N + x1;
            const Cplx h1 = fac * fl.U1[s];
            const Cplx h2 = fac * iu * fl.U2[s];
            const Cplx d = -fac * Cplx(1.0, 1.0);
            out.push_back({n + s, sp1, h1});
            out.push_back({n + s, sp2, h2});
            out.push_back({n + s, s, d});
            out.push_back({sp1, n + s, std::conj(h1)});
            out.push_back({sp2, n + s, std::conj(h2)});
            out.push_back({s, n + s, std::conj(d)});
        }
    return out;
}

void apply_T(const FluxLattice& fl, const Cplx* x, Cplx* y) {
    const double fac = 1.0 / (fl.spacing * std::sqrt(2.0));
    simd::kernels().flux_T(fl.N, fac, fl.U1.data(), fl.U2.data(), x, y);
}

void apply_Tdag(const FluxLattice& fl, const Cplx* x, Cplx* y) {
    const double fac = 1.0 / (fl.spacing * std::sqrt(2.0));
    simd::kernels().flux_Tdag(fl.N, fac, fl.U1.data(), fl.U2.data(), x, y);
}

double tdagt_upper_bound(const FluxLattice& fl) {
    // |T| <= fac (1 + 1 + sqrt 2)
    const double fac = 1.0 / (fl.spacing * std::sqrt(2.0));
    const double tnorm = fac * (2.0 + std::sqrt(2.0));
    return tnorm * tnorm;
}

std::vector<double> lowest_tdagt_eigenvalues(const FluxLattice& fl, int count, double window_hint) {
    const std::int64_t n = fl.sites();
    if (count > n) throw DomainError("lattice_oracle", "requested more eigenvalues than matrix dimension");
    if (n <= kDenseLimit) {
        Eigen::MatrixXcd t = dense_T(fl);
        Eigen::MatrixXcd a = t.adjoint() * t;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        std::vector<double> vals(count);
        for (int i = 0; i < count; ++i) vals[i] = es.eigenvalues()(i);
        return vals;
    }
    return filtered_lowest(fl, count, window_hint);
}

std::int64_t count_zero_modes(std::int64_t h, std::int64_t N, double area) {
    FluxLattice fl = build_flux_lattice(h, N, area);
    const double b = kTwoPi * double(h) / area;
    const int count = int(h) + 4;
    std::vector<double> mu = lowest_tdagt_eigenvalues(fl, count, 2.5 * b);
    const double scale = std::sqrt(tdagt_upper_bound(fl));
    const double thresh = 1e-6 * scale;
    std::int64_t z = 0;
    for (double m : mu)
        if (std::sqrt(std::max(0.0, m)) < thresh) ++z;
    return z;
}

OracleReport landau_check(std::int64_t h, double norm_k, std::int64_t N, int n_max) {
    if (n_max < 1) throw DomainError("lattice_oracle", "landau_check requires n_max >= 1");
    const double area = 1.0 / norm_k;
    FluxLattice fl = build_flux_lattice(h, N, area);
    const double b = kTwoPi * double(h) * norm_k;  // continuum D^2 spacing

    OracleReport rep;
    rep.h = h;
    rep.N = N;
    rep.norm_k = norm_k;
    rep.area = area;
    rep.zero_mode_scale = std::sqrt(tdagt_upper_bound(fl));

    // h states at level 0, 2h per positive level, plus a guard band
    const int count = int(h) + 2 * int(h) * n_max + 2 * int(h);
    std::vector<double> mu = lowest_tdagt_eigenvalues(fl, count, b * double(n_max + 2));

    const double gap = 0.3 * b;
    auto starts = cluster_boundaries(mu, gap);
    const std::size_t nclusters = starts.size() - 1;
    if (nclusters < std::size_t(n_max + 1)) {
        rep.conclusive = false;
        rep.message = "level clustering ambiguous; increase N";
        return rep;
    }

    const double thresh = 1e-6 * rep.zero_mode_scale;
    rep.max_rel_error = 0.0;
    for (int nlev = 0; nlev <= n_max; ++nlev) {
        const std::int64_t lo = starts[nlev], hi = starts[nlev + 1];
        double mean = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) mean += mu[i];
        mean /= double(hi - lo);
        rep.computed_levels.push_back(mean);
        rep.cluster_sizes.push_back(hi - lo);
        rep.predicted_levels.push_back(b * double(nlev));
        if (nlev == 0) {
            rep.zero_modes = 0;
            for (std::int64_t i = lo; i < hi; ++i)
                if (std::sqrt(std::max(0.0, mu[i])) < thresh) ++rep.zero_modes;
        } else {
            rep.max_rel_error =
                std::max(rep.max_rel_error, std::abs(mean - b * double(nlev)) / (b * double(nlev)));
        }
    }

    // expected state counts: h at the zero level, 2h per positive level
    // (both Dirac signs / chirality pairing)
    if (rep.cluster_sizes[0] != h) {
        rep.conclusive = false;
        rep.message = "zero-level cluster does not hold exactly h states; increase N";
    }
    for (int nlev = 1; nlev <= n_max && rep.conclusive; ++nlev)
        if (rep.cluster_sizes[nlev] != 2 * h) {
            rep.conclusive = false;
            rep.message = "Landau cluster " + std::to_string(nlev) + " has unexpected degeneracy; increase N";
        }
    return rep;
}

SpectrumSlice assemble_3d_spectrum(const SpincStructure& spinc, const Vec3d& alpha, double cutoff,
                                   const std::vector<double>& oracle_levels) {
    if (spinc.trivial())
        throw DomainError("lattice_oracle", "assemble_3d_spectrum requires a nontrivial structure");
    if (!(cutoff > 0.0)) throw DomainError("lattice_oracle", "cutoff must be positive");
    const double b = kTwoPi * double(spinc.h) * spinc.norm_k;
    const double next_level = b * double(oracle_levels.size());
    if (cutoff * cutoff > 0.95 * next_level)
        throw DomainError("lattice_oracle", "oracle level list too short for the requested cutoff");

    SpectrumSlice slice;
    slice.alpha = alpha;
    const double s = dot(spinc.k, alpha);
    const double nk = spinc.norm_k;
    const std::int64_t lmin = std::int64_t(std::ceil((-cutoff * nk - s) / kTwoPi - 1e-12));
    const std::int64_t lmax = std::int64_t(std::floor((cutoff * nk - s) / kTwoPi + 1e-12));
    for (std::int64_t l = lmin; l <= lmax; ++l) {
        const double lam = (kTwoPi * double(l) + s) / nk;
        if (std::abs(lam) > cutoff) continue;
        slice.entries.push_back({lam, spinc.h, {SpectralCase::Nontrivial, l, 0, 0, {0, 0, 0}}});
        for (std::size_t n = 1; n < oracle_levels.size(); ++n) {
            const double v2 = lam * lam + oracle_levels[n];
            if (v2 > cutoff * cutoff) break;
            const double v = std::sqrt(v2);
            slice.entries.push_back(
                {+v, spinc.h, {SpectralCase::Nontrivial, l, std::int64_t(n), +1, {0, 0, 0}}});
            slice.entries.push_back(
                {-v, spinc.h, {SpectralCase::Nontrivial, l, std::int64_t(n), -1, {0, 0, 0}}});
        }
    }
    std::sort(slice.entries.begin(), slice.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  if (a.value != b.value) return a.value < b.value;
                  return label_less(a.label, b.label);
              });
    return slice;
}

BlockOracleReport mode_block_oracle(std::int64_t count, std::uint64_t seed) {
    BlockOracleReport rep;
    rep.count = count;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);

    for (std::int64_t it = 0; it < count; ++it) {
        // Clifford block vs closed form
        Vec3d beta{uni(rng), uni(rng), uni(rng)};
        const double nb = norm(beta);
        Mat2c m = clifford_block(beta);
        Eigen::Matrix2cd em;
        em << m[0], m[1], m[2], m[3];
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(em);
        rep.max_clifford_eig_dev =
            std::max({rep.max_clifford_eig_dev, std::abs(es.eigenvalues()(0) + nb),
                      std::abs(es.eigenvalues()(1) - nb)});
        if (nb > 1e-12) {
            Eigen::Vector2cd vneg = es.eigenvectors().col(0);
            Eigen::Matrix2cd pneg = vneg * vneg.adjoint();
            const Vec3d u = scale(-1.0 / nb, beta);
            Eigen::Matrix2cd pform;
            pform << 1.0 + u[2], Cplx(u[0], -u[1]), Cplx(u[0], u[1]), 1.0 - u[2];
            pform *= 0.5;
            rep.max_clifford_proj_dev =
                std::max(rep.max_clifford_proj_dev, (pneg - pform).norm());
        }

        // real symmetric block vs closed form
        const double lambda = 2.0 * uni(rng), mu = 2.0 * uni(rng);
        auto bm = block_matrix(lambda, mu);
        Eigen::Matrix2d rm;
        rm << bm[0], bm[1], bm[2], bm[3];
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> rs(rm);
        BlockEigenData bd = block_eigen_data(lambda, mu);
        rep.max_block_eig_dev = std::max({rep.max_block_eig_dev,
                                          std::abs(rs.eigenvalues()(0) + bd.s),
                                          std::abs(rs.eigenvalues()(1) - bd.s)});
        // |vplus|^2 = 4 s (s + mu) cancels catastrophically as mu -> -s; use
        // the orthogonal complement of vminus on that branch.  Small angles
        // via the cross product (acos floors at sqrt(eps)).
        if (bd.s > 1e-9) {
            Eigen::Vector2d vref;
            if (mu >= 0.0) vref = Eigen::Vector2d(bd.vplus[0], bd.vplus[1]);
            else vref = Eigen::Vector2d(-bd.vminus[1], bd.vminus[0]);
            vref.normalize();
            const Eigen::Vector2d vnum = rs.eigenvectors().col(1);
            const double sinang = std::abs(vnum(0) * vref(1) - vnum(1) * vref(0));
            rep.max_block_angle = std::max(rep.max_block_angle, std::asin(std::min(1.0, sinang)));
        }
    }
    return rep;
}

FluxLattice gauge_transform(const FluxLattice& fl, const std::vector<double>& site_phases) {
    if (std::int64_t(site_phases.size()) != fl.sites())
        throw DomainError("lattice_oracle", "gauge transform needs one phase per site");
    FluxLattice out = fl;
    for (std::int64_t x2 = 0; x2 < fl.N; ++x2)
        for (std::int64_t x1 = 0; x1 < fl.N; ++x1) {
            const std::int64_t s = x2 * fl.N + x1;
            const std::int64_t sp1 = x2 * fl.N + (x1 + 1) % fl.N;
            const std::int64_t sp2 = ((x2 + 1) % fl.N) * fl.N + x1;
            // U'_mu(x) = g(x+mu) U_mu(x) conj(g(x)) with g = exp(i theta)
            out.U1[s] = std::polar(1.0, site_phases[sp1]) * fl.U1[s] * std::polar(1.0, -site_phases[s]);
            out.U2[s] = std::polar(1.0, site_phases[sp2]) * fl.U2[s] * std::polar(1.0, -site_phases[s]);
        }
    return out;
}

}  // namespace dirac3t
