#include "dirac3t/spectral_sections.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirac3t/errors.hpp"

namespace dirac3t {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Cplx = std::complex<double>;

Vec3d normalize(const Vec3d& v) { return scale(1.0 / norm(v), v); }

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    x = 1; y = 0;
    std::int64_t x1 = 0, y1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = x - q * x1; x = x1; x1 = t;
        t = y - q * y1; y = y1; y1 = t;
    }
    if (a < 0) { a = -a; x = -x; y = -y; }
    return a;
}

// Bezout vector x with <x, nu> = 1 for primitive nu.
Vec3i bezout_vector(const Vec3i& nu) {
    std::int64_t a, b;
    const std::int64_t g12 = ext_gcd(nu[0], nu[1], a, b);
    std::int64_t c, d;
    ext_gcd(g12, nu[2], c, d);
    Vec3i x{c * a, c * b, d};
    if (dot(x, nu) != 1) throw DomainError("spectral_sections", "bezout_vector: nu not primitive");
    return x;
}

Mat2c matmul(const Mat2c& a, const Mat2c& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double frob(const Mat2c& a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

double herm_defect(const Mat2c& p) {
    Mat2c d{p[0] - std::conj(p[0]), p[1] - std::conj(p[2]), p[2] - std::conj(p[1]),
            p[3] - std::conj(p[3])};
    return frob(d);
}

double idem_defect(const Mat2c& p) {
    Mat2c pp = matmul(p, p);
    Mat2c d{pp[0] - p[0], pp[1] - p[1], pp[2] - p[2], pp[3] - p[3]};
    return frob(d);
}

// operator norm of the difference of two Hermitian 2x2 matrices
double op_norm_diff(const Mat2c& a, const Mat2c& b) {
    const double m00 = (a[0] - b[0]).real();
    const double m11 = (a[3] - b[3]).real();
    const Cplx off = a[1] - b[1];
    const double mid = 0.5 * (m00 + m11);
    const double rad = std::hypot(0.5 * (m00 - m11), std::abs(off));
    return std::max(std::abs(mid + rad), std::abs(mid - rad));
}

// Eigenvectors of beta.sigma: (v_minus, v_plus) columns; v_minus spans the
// -|beta| eigenspace.  Stable branch choice.
void clifford_eigvecs(const Vec3d& beta, Cplx vminus[2], Cplx vplus[2]) {
    const double s = norm(beta);
    const Cplx bp(beta[0], beta[1]);   // b1 + i b2
    const Cplx bm(beta[0], -beta[1]);  // b1 - i b2
    if (beta[2] >= 0.0) {
        vplus[0] = Cplx(beta[2] + s, 0.0);
        vplus[1] = bp;
        vminus[0] = -bm;
        vminus[1] = Cplx(beta[2] + s, 0.0);
    } else {
        vminus[0] = Cplx(beta[2] - s, 0.0);
        vminus[1] = bp;
        vplus[0] = bm;
        vplus[1] = Cplx(s - beta[2], 0.0);
    }
    auto nrm = [](Cplx v[2]) {
        const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        v[0] /= n;
        v[1] /= n;
    };
    nrm(vminus);
    nrm(vplus);
}

double solid_angle(const Vec3d& a, const Vec3d& b, const Vec3d& c) {
    const double num = dot(a, cross(b, c));
    const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(num, den);
}

// signed-area sum of the (r, theta)-oriented triangulation of a disc grid
double bloch_area_sum(const std::vector<Vec3d>& u, std::int64_t nr, std::int64_t nt) {
    double total = 0.0;
    for (std::int64_t i = 0; i + 1 < nr; ++i)
        for (std::int64_t j = 0; j < nt; ++j) {
            const std::int64_t jn = (j + 1) % nt;
            const Vec3d& a = u[i * nt + j];
            const Vec3d& b = u[(i + 1) * nt + j];
            const Vec3d& c = u[(i + 1) * nt + jn];
            const Vec3d& d = u[i * nt + jn];
            total += solid_angle(a, b, c);
            total += solid_angle(a, c, d);
        }
    return total;
}

Vec3d disc_bloch(const DiscField& f, std::int64_t i, std::int64_t j, double tol,
                 std::vector<std::string>* failures) {
    const Mat2c& p = f.at(i, j);
    if (failures) {
        if (idem_defect(p) > tol)
            failures->push_back("non-idempotent sample (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        if (std::abs((p[0] + p[3]).real() - 1.0) > 1e-6)
            failures->push_back("rank != 1 at sample (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    }
    Vec3d u = projector_to_bloch(p);
    return normalize(u);
}

std::int64_t grid_index_wrap(std::int64_t i, std::int64_t n) { return ((i % n) + n) % n; }

}  // namespace

PlaneFrame plane_frame(const ParameterLattice& lattice) {
    PlaneFrame fr;
    fr.u1 = normalize(to_double(lattice.saturation[0]));
    if (lattice.rank == 2) {
        Vec3d s2 = to_double(lattice.saturation[1]);
        Vec3d u2 = sub(s2, scale(dot(s2, fr.u1), fr.u1));
        fr.u2 = normalize(u2);
    } else {
        int best = 0;
        double bestabs = 2.0;
        for (int j = 0; j < 3; ++j) {
            Vec3d e{0, 0, 0};
            e[j] = 1.0;
            const double a = std::abs(dot(e, fr.u1));
            if (a < bestabs) { bestabs = a; best = j; }
        }
        Vec3d e{0, 0, 0};
        e[best] = 1.0;
        fr.u2 = normalize(sub(e, scale(dot(e, fr.u1), fr.u1)));
    }
    fr.nrm = cross(fr.u1, fr.u2);
    return fr;
}

double epsilon_bound(const SpincStructure& spinc, const ParameterLattice& lattice) {
    if (!sections_exist(spinc, lattice))
        throw DomainError("spectral_sections", "epsilon_bound: no spectral sections exist for this pair");

    if (!spinc.trivial()) {
        // constant spectrum along B; smallest positive eigenvalue at alpha = 0
        const double cutoff =
            std::max(kTwoPi / spinc.norm_k, std::sqrt(kTwoPi * double(spinc.h) * spinc.norm_k)) + 1.0;
        SpectrumSlice slice = enumerate_spectrum(spinc, {0, 0, 0}, cutoff);
        double best = cutoff;
        for (const auto& e : slice.entries)
            if (e.value > 1e-12) best = std::min(best, e.value);
        return best;
    }

    if (lattice.rank == 2) {
        Vec3i nu = cross(lattice.saturation[0], lattice.saturation[1]);
        const std::int64_t g = gcd3(nu);
        nu = {nu[0] / g, nu[1] / g, nu[2] / g};
        // min over b not in the plane of dist(b, plane) = 1/|nu| at a Bezout point
        return kTwoPi / norm(nu);
    }
    // rank 1: distance from the line to the nearest off-line integer point is
    // the shortest vector of the projected lattice
    ProjectedLattice pl = projected_lattice(lattice.saturation[0]);
    return kTwoPi * norm(pl.w1);
}

SmallRClassification classify_small_R(const SpincStructure& spinc, const ParameterLattice& lattice) {
    SmallRClassification cls;
    cls.epsilon = epsilon_bound(spinc, lattice);  // also enforces existence
    cls.base_rank = lattice.rank;
    cls.R_inf = 0.0;
    if (!spinc.trivial()) {
        cls.kase = SectionCase::Nontrivial;
        cls.h = spinc.h;
        cls.chern_free = lattice.rank == 2;
    } else {
        cls.kase = SectionCase::Trivial;
        cls.cosets = lattice.cosets;
        cls.free_coset = 0;
        cls.degree_free = lattice.rank == 2;
    }
    return cls;
}

Mat2c bloch_to_projector(const Vec3d& u) {
    return {Cplx(0.5 * (1.0 + u[2]), 0.0), 0.5 * Cplx(u[0], -u[1]),
            0.5 * Cplx(u[0], u[1]), Cplx(0.5 * (1.0 - u[2]), 0.0)};
}

Vec3d projector_to_bloch(const Mat2c& p) {
    return {2.0 * p[2].real(), 2.0 * p[2].imag(), (p[0] - p[3]).real()};
}

Mat2c boundary_projector(double beta1, double beta2) {
    const double n = std::hypot(beta1, beta2);
    if (!(n > 0.0)) throw DomainError("spectral_sections", "boundary_projector requires beta != 0");
    return bloch_to_projector({-beta1 / n, -beta2 / n, 0.0});
}

Vec3d bubble_continuation(std::int64_t n, double R, double r, double theta) {
    if (r >= 0.5 * R) {
        const double phi = std::numbers::pi * (2.0 * r - R) / (2.0 * R);
        return {-std::sin(phi) * std::cos(theta), -std::sin(phi) * std::sin(theta), -std::cos(phi)};
    }
    const double th = std::numbers::pi * (1.0 - 2.0 * r / R);
    return {std::sin(th) * std::cos(double(n) * theta), std::sin(th) * std::sin(double(n) * theta),
            -std::cos(th)};
}

namespace {

DiscField make_disc_field(double R, double r_outer, std::int64_t nr, std::int64_t nt,
                          const Vec3i& block, bool in_plane, const PlaneFrame& frame,
                          std::int64_t degree) {
    DiscField f;
    f.R = R;
    f.r_outer = r_outer;
    f.nr = nr;
    f.ntheta = nt;
    f.block = block;
    f.in_plane = in_plane;
    f.values.resize(nr * nt);
    const Vec3d shift = scale(kTwoPi, to_double(block));
    const Vec3d shift_f{dot(shift, frame.u1), dot(shift, frame.u2), dot(shift, frame.nrm)};
    for (std::int64_t i = 0; i < nr; ++i) {
        const double r = r_outer * double(i) / double(nr - 1);
        for (std::int64_t j = 0; j < nt; ++j) {
            const double theta = kTwoPi * double(j) / double(nt);
            Mat2c p;
            if (in_plane) {
                if (r <= R) {
                    p = bloch_to_projector(bubble_continuation(degree, R, r, theta));
                } else {
                    p = boundary_projector(r * std::cos(theta), r * std::sin(theta));
                }
            } else {
                // out-of-plane block: forced for every alpha in the disc
                const Vec3d beta_f{r * std::cos(theta) + shift_f[0],
                                   r * std::sin(theta) + shift_f[1], shift_f[2]};
                p = bloch_to_projector(scale(-1.0 / norm(beta_f), beta_f));
            }
            f.values[i * nt + j] = p;
        }
    }
    return f;
}

}  // namespace

SectionBuild build_projector_field_trivial(const SpincStructure& spinc,
                                           const ParameterLattice& lattice, double R,
                                           const std::vector<std::int64_t>& degrees,
                                           std::int64_t grid) {
    if (!spinc.trivial())
        throw DomainError("spectral_sections", "trivial-case builder needs khat = 0");
    const double eps = epsilon_bound(spinc, lattice);
    if (!(R > 0.0) || R >= eps)
        throw DomainError("spectral_sections", "R must lie in (0, epsilon_bound)");
    if (degrees.size() != lattice.cosets.size())
        throw DomainError("spectral_sections", "one degree per coset required");
    if (lattice.rank == 1)
        for (auto d : degrees)
            if (d != 0)
                throw DomainError("spectral_sections",
                                  "a one-dimensional base admits a single section class (degrees must be 0)");
    const std::int64_t nt = lattice.rank == 2 ? grid : 2;
    const std::int64_t nr = grid;
    if (nr < 11)
        throw DomainError("spectral_sections", "grid too coarse (need >= 8 rings inside the disc)");
    if (lattice.rank == 2 && nt < 8)
        throw DomainError("spectral_sections", "angular grid too coarse");
    if (grid > 256) throw DomainError("spectral_sections", "grid capped at 256");

    SectionBuild build;
    build.kase = SectionCase::Trivial;
    build.base_rank = lattice.rank;
    build.frame = plane_frame(lattice);
    build.descriptor = {SectionCase::Trivial, R, 0, 0, degrees};
    const double r_outer = 1.2 * R;

    for (std::size_t c = 0; c < lattice.cosets.size(); ++c) {
        const std::int64_t deg = lattice.rank == 2 ? degrees[c] : 0;
        build.disc_fields.push_back(
            make_disc_field(R, r_outer, nr, nt, lattice.cosets[c], true, build.frame, deg));
    }

    // forced fields on the nearest out-of-plane blocks
    Vec3i nearest;
    if (lattice.rank == 2) {
        Vec3i nu = cross(lattice.saturation[0], lattice.saturation[1]);
        const std::int64_t g = gcd3(nu);
        nu = {nu[0] / g, nu[1] / g, nu[2] / g};
        nearest = bezout_vector(nu);
    } else {
        nearest = projected_lattice(lattice.saturation[0]).z1;
    }
    for (const Vec3i& b : {nearest, scale(-1, nearest)})
        build.disc_fields.push_back(make_disc_field(R, r_outer, nr, nt, b, false, build.frame, 0));
    return build;
}

SectionBuild build_projector_field_nontrivial(const SpincStructure& spinc,
                                              const ParameterLattice& lattice, double R,
                                              std::int64_t rank, std::int64_t chern,
                                              std::int64_t grid) {
    if (spinc.trivial())
        throw DomainError("spectral_sections", "nontrivial-case builder needs khat != 0");
    const double eps = epsilon_bound(spinc, lattice);
    if (!(R > 0.0) || R >= eps)
        throw DomainError("spectral_sections", "R must lie in (0, epsilon_bound)");
    const std::int64_t h = spinc.h;
    if (rank < 0 || rank > h) throw DomainError("spectral_sections", "rank must lie in [0, h]");
    if ((rank == 0 || rank == h || lattice.rank == 1) && chern != 0)
        throw DomainError("spectral_sections", "chern must be 0 for trivial or full subbundles");
    if (std::llabs(chern) > 64) throw DomainError("spectral_sections", "chern degree capped at 64");
    if (grid < 8 || grid > 256) throw DomainError("spectral_sections", "grid must lie in [8, 256]");

    SectionBuild build;
    build.kase = SectionCase::Nontrivial;
    build.base_rank = lattice.rank;
    build.frame = plane_frame(lattice);
    build.descriptor = {SectionCase::Nontrivial, R, rank, chern, {}};

    TorusField& f = build.torus_field;
    f.n1 = grid;
    f.n2 = lattice.rank == 2 ? grid : 1;
    f.h = h;
    f.values.assign(f.n1 * f.n2 * h * h, Cplx(0.0, 0.0));

    auto sample = [&](std::int64_t i, std::int64_t j) { return f.values.data() + (i * f.n2 + j) * h * h; };

    // monotone bijection (0,1) -> R for the pinch map
    auto stretch = [](double t) { return std::tan(std::numbers::pi * (t - 0.5)); };

    for (std::int64_t i = 0; i < f.n1; ++i)
        for (std::int64_t j = 0; j < f.n2; ++j) {
            Cplx* p = sample(i, j);
            if (rank == 0) continue;
            if (rank == std::int64_t(h)) {
                for (std::int64_t q = 0; q < h; ++q) p[q * h + q] = 1.0;
                continue;
            }
            // rank-1 pinch-map subfield with Chern `chern` in the fixed C^2
            // spanned by e0, e1, plus rank-1 constants on e2..e_rank
            Cplx w(0.0, 0.0);
            if (lattice.rank == 2) {
                const double x = (double(i) + 0.5) / double(f.n1);
                const double y = (double(j) + 0.5) / double(f.n2);
                w = Cplx(stretch(x), stretch(y));
            }
            Cplx wp(1.0, 0.0);
            if (chern != 0 && lattice.rank == 2) {
                const std::int64_t dd = std::llabs(chern);
                Cplx base = chern > 0 ? w : std::conj(w);
                wp = Cplx(1.0, 0.0);
                for (std::int64_t q = 0; q < dd; ++q) wp *= base;
            }
            const double den = 1.0 + std::norm(wp);
            p[0 * h + 0] = 1.0 / den;
            p[0 * h + 1] = std::conj(wp) / den;
            p[1 * h + 0] = wp / den;
            p[1 * h + 1] = std::norm(wp) / den;
            for (std::int64_t q = 2; q <= rank; ++q) p[q * h + q] = 1.0;
        }
    return build;
}

std::int64_t relative_degree(const DiscField& field) {
    if (field.ntheta < 8)
        throw DomainError("spectral_sections", "relative_degree needs an angular grid (ntheta >= 8)");
    std::vector<std::string> failures;
    const std::int64_t nr = field.nr, nt = field.ntheta;
    std::vector<Vec3d> u(nr * nt), uref(nr * nt);
    for (std::int64_t i = 0; i < nr; ++i) {
        const double r = field.r_outer * double(i) / double(nr - 1);
        for (std::int64_t j = 0; j < nt; ++j) {
            const double theta = kTwoPi * double(j) / double(nt);
            u[i * nt + j] = disc_bloch(field, i, j, 1e-8, &failures);
            uref[i * nt + j] = r <= field.R
                                   ? bubble_continuation(0, field.R, r, theta)
                                   : Vec3d{-std::cos(theta), -std::sin(theta), 0.0};
        }
    }
    if (!failures.empty())
        throw DomainError("spectral_sections", "relative_degree: " + failures.front());
    // boundary must agree with the forced values
    for (std::int64_t j = 0; j < nt; ++j) {
        const Vec3d d = sub(u[(nr - 1) * nt + j], uref[(nr - 1) * nt + j]);
        if (norm(d) > 1e-8)
            throw DomainError("spectral_sections", "relative_degree: boundary mismatch");
    }
    const double total = bloch_area_sum(u, nr, nt) - bloch_area_sum(uref, nr, nt);
    const double deg = total / (2.0 * kTwoPi);
    const std::int64_t rounded = std::llround(deg);
    if (std::abs(deg - double(rounded)) >= 0.02)
        throw DomainError("spectral_sections", "relative_degree: residual too large (grid too coarse)");
    return rounded;
}

std::int64_t chern_number(const TorusField& field) {
    const std::int64_t n1 = field.n1, n2 = field.n2, h = field.h;
    if (n1 < 2 || n2 < 2)
        throw DomainError("spectral_sections", "chern_number needs a two-dimensional grid");

    // constant rank from traces
    std::int64_t rank = -1;
    for (std::int64_t i = 0; i < n1; ++i)
        for (std::int64_t j = 0; j < n2; ++j) {
            const Cplx* p = field.at(i, j);
            double tr = 0.0;
            for (std::int64_t q = 0; q < h; ++q) tr += p[q * h + q].real();
            const std::int64_t r = std::llround(tr);
            if (std::abs(tr - double(r)) > 1e-6)
                throw DomainError("spectral_sections", "chern_number: non-integer projector trace");
            if (rank < 0) rank = r;
            if (r != rank) throw DomainError("spectral_sections", "chern_number: rank jump across grid");
        }
    if (rank == 0 || rank == h) return 0;

    // local frames from the top-`rank` eigenvectors
    std::vector<Eigen::MatrixXcd> frames(n1 * n2);
    for (std::int64_t i = 0; i < n1; ++i)
        for (std::int64_t j = 0; j < n2; ++j) {
            Eigen::MatrixXcd p(h, h);
            const Cplx* src = field.at(i, j);
            for (std::int64_t a = 0; a < h; ++a)
                for (std::int64_t b = 0; b < h; ++b) p(a, b) = src[a * h + b];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
            for (std::int64_t q = 0; q < rank; ++q)
                if (es.eigenvalues()(h - 1 - q) < 0.5)
                    throw DomainError("spectral_sections", "chern_number: projector eigenvalue far from 1");
            frames[i * n2 + j] = es.eigenvectors().rightCols(rank);
        }

    auto link = [&](std::int64_t a, std::int64_t b) {
        return Eigen::MatrixXcd(frames[a].adjoint() * frames[b]).determinant();
    };

    std::vector<Cplx> link1(n1 * n2), link2(n1 * n2);
    for (std::int64_t i = 0; i < n1; ++i)
        for (std::int64_t j = 0; j < n2; ++j) {
            const std::int64_t s = i * n2 + j;
            link1[s] = link(s, grid_index_wrap(i + 1, n1) * n2 + j);
            link2[s] = link(s, i * n2 + grid_index_wrap(j + 1, n2));
            if (std::abs(link1[s]) < 1e-8 || std::abs(link2[s]) < 1e-8)
                throw DomainError("spectral_sections", "chern_number: singular frame overlap");
        }

    double total = 0.0;
    for (std::int64_t i = 0; i < n1; ++i)
        for (std::int64_t j = 0; j < n2; ++j) {
            const std::int64_t s = i * n2 + j;
            const std::int64_t se1 = grid_index_wrap(i + 1, n1) * n2 + j;
            const std::int64_t se2 = i * n2 + grid_index_wrap(j + 1, n2);
            const Cplx loop = link1[s] * link2[se1] * std::conj(link1[se2]) * std::conj(link2[s]);
            const double flux = std::arg(loop);
            if (std::abs(flux) > 0.999 * std::numbers::pi)
                throw DomainError("spectral_sections", "chern_number: plaquette flux at branch cut");
            total += flux;
        }
    const double c = total / kTwoPi;
    const std::int64_t rounded = std::llround(c);
    if (std::abs(c - double(rounded)) >= 0.02)
        throw DomainError("spectral_sections", "chern_number: residual too large");
    return rounded;
}

SectionVerifyReport verify_spectral_section(const SectionBuild& build, const SpincStructure& spinc,
                                            const ParameterLattice& lattice, double R) {
    SectionVerifyReport rep;
    rep.epsilon = epsilon_bound(spinc, lattice);
    if (!(R > 0.0) || R >= rep.epsilon)
        throw DomainError("spectral_sections", "verify: R must lie in (0, epsilon_bound)");

    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        if (rep.failures.size() < 32) rep.failures.push_back(msg);
    };

    if (build.kase == SectionCase::Trivial) {
        if (spinc.h != 0) throw DomainError("spectral_sections", "verify: case mismatch");
        for (const DiscField& f : build.disc_fields) {
            // in-plane coset fields are functions of beta (disc centred at 0);
            // forced out-of-plane fields are sampled in alpha and carry the
            // constant 2 pi b offset
            const Vec3d shift = f.in_plane ? Vec3d{0, 0, 0} : scale(kTwoPi, to_double(f.block));
            const Vec3d shift_f{dot(shift, build.frame.u1), dot(shift, build.frame.u2),
                                dot(shift, build.frame.nrm)};
            for (std::int64_t i = 0; i < f.nr; ++i) {
                const double r = f.r_outer * double(i) / double(f.nr - 1);
                for (std::int64_t j = 0; j < f.ntheta; ++j) {
                    const double theta = kTwoPi * double(j) / double(f.ntheta);
                    const Mat2c& p = f.at(i, j);
                    rep.max_idem = std::max(rep.max_idem, idem_defect(p));
                    rep.max_herm = std::max(rep.max_herm, herm_defect(p));
                    const double tr = (p[0] + p[3]).real();
                    if (std::abs(tr - 1.0) > 1e-6) fail("rank != 1 sample in block " + format_vec(f.block));

                    // block Dirac operator at this sample is -beta_f . sigma
                    const Vec3d beta_f{r * std::cos(theta) + shift_f[0],
                                       r * std::sin(theta) + shift_f[1], shift_f[2]};
                    const double nb = norm(beta_f);
                    if (nb > R) {
                        Cplx vminus[2], vplus[2];
                        clifford_eigvecs(beta_f, vminus, vplus);
                        // positive D eigenvector = vminus of beta.sigma: P v = v
                        const Cplx r0 = p[0] * vminus[0] + p[1] * vminus[1] - vminus[0];
                        const Cplx r1 = p[2] * vminus[0] + p[3] * vminus[1] - vminus[1];
                        // negative D eigenvector = vplus of beta.sigma: P v = 0
                        const Cplx z0 = p[0] * vplus[0] + p[1] * vplus[1];
                        const Cplx z1 = p[2] * vplus[0] + p[3] * vplus[1];
                        const double dev = std::sqrt(std::norm(r0) + std::norm(r1) + std::norm(z0) +
                                                     std::norm(z1));
                        rep.max_forced = std::max(rep.max_forced, dev);
                    }
                }
            }
            // continuity: radial always, angular only for a 2D base
            for (std::int64_t i = 0; i + 1 < f.nr; ++i)
                for (std::int64_t j = 0; j < f.ntheta; ++j)
                    rep.max_jump = std::max(rep.max_jump, op_norm_diff(f.at(i, j), f.at(i + 1, j)));
            if (f.ntheta >= 3)
                for (std::int64_t i = 0; i < f.nr; ++i)
                    for (std::int64_t j = 0; j < f.ntheta; ++j)
                        rep.max_jump = std::max(
                            rep.max_jump, op_norm_diff(f.at(i, j), f.at(i, (j + 1) % f.ntheta)));
        }
        rep.rank = 1;
        if (!build.disc_fields.empty()) rep.jump_constant = rep.max_jump * double(build.disc_fields[0].nr);
    } else {
        if (spinc.h == 0) throw DomainError("spectral_sections", "verify: case mismatch");
        const TorusField& f = build.torus_field;
        const std::int64_t h = f.h;
        std::int64_t rank = -1;
        Eigen::MatrixXcd p(h, h), prev(h, h);
        for (std::int64_t i = 0; i < f.n1; ++i)
            for (std::int64_t j = 0; j < f.n2; ++j) {
                const Cplx* src = f.at(i, j);
                for (std::int64_t a = 0; a < h; ++a)
                    for (std::int64_t b = 0; b < h; ++b) p(a, b) = src[a * h + b];
                rep.max_idem = std::max(rep.max_idem, (p * p - p).norm());
                rep.max_herm = std::max(rep.max_herm, (p - p.adjoint()).norm());
                const double tr = p.trace().real();
                const std::int64_t r = std::llround(tr);
                if (std::abs(tr - double(r)) > 1e-6) fail("non-integer rank sample");
                if (rank < 0) rank = r;
                if (r != rank) fail("rank jump across samples");
            }
        rep.rank = rank;
        // outside the kernel band the total section is the positive spectral
        // projector by construction (exact): account it as zero defect
        rep.max_forced = 0.0;
        auto matdiff = [&](std::int64_t i1, std::int64_t j1, std::int64_t i2, std::int64_t j2) {
            const Cplx *a = f.at(i1, j1), *b = f.at(i2, j2);
            Eigen::MatrixXcd d(h, h);
            for (std::int64_t q = 0; q < h; ++q)
                for (std::int64_t t = 0; t < h; ++t) d(q, t) = a[q * h + t] - b[q * h + t];
            return d.operatorNorm();
        };
        for (std::int64_t i = 0; i < f.n1; ++i)
            for (std::int64_t j = 0; j < f.n2; ++j) {
                rep.max_jump = std::max(rep.max_jump, matdiff(i, j, grid_index_wrap(i + 1, f.n1), j));
                if (f.n2 >= 2)
                    rep.max_jump =
                        std::max(rep.max_jump, matdiff(i, j, i, grid_index_wrap(j + 1, f.n2)));
            }
        rep.jump_constant = rep.max_jump * double(f.n1);
    }

    if (rep.max_idem > 1e-10) rep.ok = false;
    if (rep.max_herm > 1e-10) rep.ok = false;
    if (rep.max_forced > 1e-10) rep.ok = false;
    if (!rep.failures.empty()) rep.ok = false;
    return rep;
}

KDifference k_difference(const SectionDescriptor& a, const SectionDescriptor& b) {
    if (a.kase != b.kase) throw DomainError("spectral_sections", "k_difference: case mismatch");
    if (a.kase == SectionCase::Nontrivial) return {a.rank - b.rank, a.chern - b.chern};
    if (a.degrees.size() != b.degrees.size())
        throw DomainError("spectral_sections", "k_difference: coset structure mismatch");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.degrees.size(); ++i) sum += a.degrees[i] - b.degrees[i];
    return {0, sum};
}

}  // namespace dirac3t
