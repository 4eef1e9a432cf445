#include "dirac3t/torus_geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "dirac3t/errors.hpp"

namespace dirac3t {

namespace {

using Mat = std::vector<std::vector<std::int64_t>>;

Mat identity(std::size_t n) {
    Mat m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void swap_rows(Mat& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(Mat& a, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

void add_row(Mat& a, std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t c = 0; c < a[dst].size(); ++c) a[dst][c] += f * a[src][c];
}

void add_col(Mat& a, std::size_t dst, std::size_t src, std::int64_t f) {
    for (auto& row : a) row[dst] += f * row[src];
}

void negate_row(Mat& a, std::size_t i) {
    for (auto& x : a[i]) x = -x;
}

// Row echelon reduction over Z with unimodular row transform tracking.
// Returns rank; on exit the first `rank` rows of A form a basis of the
// original row lattice and U holds the applied transform (B = U * A_in).
std::size_t integer_row_echelon(Mat& a, Mat& u) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    u = identity(rows);
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = pr; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || std::llabs(a[i][c]) < std::llabs(a[best][c])))
                    best = i;
            if (best == rows) break;
            if (best != pr) { swap_rows(a, pr, best); swap_rows(u, pr, best); }
            bool clean = true;
            for (std::size_t i = pr + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                std::int64_t q = div_round(a[i][c], a[pr][c]);
                add_row(a, i, pr, -q);
                add_row(u, i, pr, -q);
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[pr][c] != 0) {
            if (a[pr][c] < 0) { negate_row(a, pr); negate_row(u, pr); }
            ++pr;
        }
    }
    return pr;
}

std::int64_t det3(const Mat& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat adjugate3(const Mat& m) {
    Mat r = identity(3);
    r[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    r[0][1] = -(m[0][1] * m[2][2] - m[0][2] * m[2][1]);
    r[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    r[1][0] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    r[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    r[1][2] = -(m[0][0] * m[1][2] - m[0][2] * m[1][0]);
    r[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    r[2][1] = -(m[0][0] * m[2][1] - m[0][1] * m[2][0]);
    r[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return r;
}

struct ReducedPair {
    Vec3i b1, b2;  // scaled lattice vectors (by |k|^2)
    Vec3i z1, z2;  // integer preimages
};

// Lagrange reduction of a rank-2 integer lattice basis, preimages tracked.
ReducedPair lagrange_reduce(Vec3i b1, Vec3i b2, Vec3i z1, Vec3i z2) {
    for (;;) {
        if (norm2i(b1) > norm2i(b2)) { std::swap(b1, b2); std::swap(z1, z2); }
        std::int64_t m = div_round(dot(b2, b1), dot(b1, b1));
        if (m == 0) break;
        b2 = sub(b2, scale(m, b1));
        z2 = sub(z2, scale(m, z1));
    }
    auto canon_sign = [](Vec3i& b, Vec3i& z) {
        for (int i = 0; i < 3; ++i) {
            if (b[i] != 0) {
                if (b[i] < 0) { b = scale(-1, b); z = scale(-1, z); }
                break;
            }
        }
    };
    canon_sign(b1, z1);
    canon_sign(b2, z2);
    bool swap = norm2i(b1) > norm2i(b2);
    if (norm2i(b1) == norm2i(b2) && b2 > b1) swap = true;
    if (swap) { std::swap(b1, b2); std::swap(z1, z2); }
    return {b1, b2, z1, z2};
}

}  // namespace

SmithNormalForm smith_normal_form(Mat a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    SmithNormalForm out;
    out.U = identity(rows);
    out.V = identity(cols);
    const std::size_t rk = std::min(rows, cols);

    for (std::size_t t = 0; t < rk; ++t) {
        // locate smallest nonzero entry of the trailing submatrix
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) { pi = i; pj = j; }
        if (pi == rows) break;
        if (pi != t) { swap_rows(a, t, pi); swap_rows(out.U, t, pi); }
        if (pj != t) { swap_cols(a, t, pj); swap_cols(out.V, t, pj); }

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                std::int64_t q = div_round(a[i][t], a[t][t]);
                add_row(a, i, t, -q);
                add_row(out.U, i, t, -q);
                if (a[i][t] != 0) {
                    swap_rows(a, t, i);
                    swap_rows(out.U, t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                std::int64_t q = div_round(a[t][j], a[t][t]);
                add_col(a, j, t, -q);
                add_col(out.V, j, t, -q);
                if (a[t][j] != 0) {
                    swap_cols(a, t, j);
                    swap_cols(out.V, t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }

        // enforce divisibility of the trailing block by the pivot
        bool restart = false;
        for (std::size_t i = t + 1; i < rows && !restart; ++i)
            for (std::size_t j = t + 1; j < cols && !restart; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    add_row(a, t, i, 1);
                    add_row(out.U, t, i, 1);
                    restart = true;
                }
        if (restart) { --t; continue; }

        if (a[t][t] < 0) { negate_row(a, t); negate_row(out.U, t); }
    }
    out.D = a;
    return out;
}

SpincStructure decompose_spinc(const Vec3i& khat) {
    SpincStructure s;
    s.khat = khat;
    if (is_zero(khat)) return s;
    s.h = gcd3(khat);
    s.k = {khat[0] / s.h, khat[1] / s.h, khat[2] / s.h};
    s.norm_k = norm(s.k);
    return s;
}

ProjectedLattice projected_lattice(const Vec3i& k) {
    if (is_zero(k)) throw DomainError("torus_geometry", "projected_lattice requires k != 0");
    if (gcd3(k) != 1) throw DomainError("torus_geometry", "projected_lattice requires primitive k");
    const std::int64_t n2 = norm2i(k);

    // scaled projections n2 * pi_k(e_i) of the standard basis
    Mat rows(3, std::vector<std::int64_t>(3, 0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) rows[i][j] = -k[i] * k[j];
        rows[i][i] += n2;
    }
    Mat u;
    std::size_t rank = integer_row_echelon(rows, u);
    if (rank != 2) throw DomainError("torus_geometry", "projected lattice rank != 2");

    Vec3i b1{rows[0][0], rows[0][1], rows[0][2]};
    Vec3i b2{rows[1][0], rows[1][1], rows[1][2]};
    Vec3i z1{u[0][0], u[0][1], u[0][2]};
    Vec3i z2{u[1][0], u[1][1], u[1][2]};
    ReducedPair rp = lagrange_reduce(b1, b2, z1, z2);

    ProjectedLattice pl;
    pl.k = k;
    pl.w1 = scale(1.0 / double(n2), to_double(rp.b1));
    pl.w2 = scale(1.0 / double(n2), to_double(rp.b2));
    pl.z1 = rp.z1;
    pl.z2 = rp.z2;
    auto cval = [&](const Vec3i& z) {
        std::int64_t num = ((-dot(z, k)) % n2 + n2) % n2;
        return double(num) / double(n2);
    };
    pl.c1 = cval(rp.z1);
    pl.c2 = cval(rp.z2);
    pl.area = norm(cross(pl.w1, pl.w2));
    return pl;
}

TrivializedPoint trivialize(const ProjectedLattice& pl, const Vec3d& chi) {
    TrivializedPoint tp;
    tp.t1 = mod1(chi[0]);
    tp.t2 = mod1(chi[1]);
    tp.circle = mod1(pl.c1 * chi[0] + pl.c2 * chi[1] + chi[2]);
    return tp;
}

Vec3d trivialize_inverse(const ProjectedLattice& pl, const TrivializedPoint& tp) {
    return {tp.t1, tp.t2, tp.circle - pl.c1 * tp.t1 - pl.c2 * tp.t2};
}

Vec3d basis_coords(const ProjectedLattice& pl, const Vec3d& x) {
    const Vec3d kd = to_double(pl.k);
    const double det = dot(pl.w1, cross(pl.w2, kd));
    const Vec3d r1 = scale(1.0 / det, cross(pl.w2, kd));
    const Vec3d r2 = scale(1.0 / det, cross(kd, pl.w1));
    const Vec3d r3 = scale(1.0 / det, cross(pl.w1, pl.w2));
    return {dot(r1, x), dot(r2, x), dot(r3, x)};
}

Vec3d point_from_basis_coords(const ProjectedLattice& pl, const Vec3d& chi) {
    Vec3d p = scale(chi[0], pl.w1);
    p = add(p, scale(chi[1], pl.w2));
    p = add(p, scale(chi[2], to_double(pl.k)));
    return p;
}

FiberFormSplit fiber_form_split(const ProjectedLattice& pl, std::int64_t l) {
    const Vec3d kd = to_double(pl.k);
    const double det = dot(pl.w1, cross(pl.w2, kd));
    const Vec3d r1 = scale(1.0 / det, cross(pl.w2, kd));
    const Vec3d r2 = scale(1.0 / det, cross(kd, pl.w1));
    const Vec3d r3 = scale(1.0 / det, cross(pl.w1, pl.w2));

    Vec3d theta = scale(double(l), add(add(scale(pl.c1, r1), scale(pl.c2, r2)), r3));
    FiberFormSplit fs;
    fs.l = l;
    const double n2 = dot(kd, kd);
    fs.omega_perp = scale(dot(theta, kd) / n2, kd);
    fs.omega_par = sub(theta, fs.omega_perp);
    return fs;
}

ParameterLattice saturate_and_cosets(const std::vector<Vec3i>& generators) {
    if (generators.empty())
        throw DomainError("torus_geometry", "parameter lattice needs at least one generator");
    if (generators.size() > 2)
        throw DomainError("torus_geometry",
                          "parameter lattice of rank 3 is not allowed (base torus must have non-maximal dimension)");
    for (const auto& g : generators)
        if (is_zero(g)) throw DomainError("torus_geometry", "zero generator in parameter lattice");
    if (generators.size() == 2 && is_zero(cross(generators[0], generators[1])))
        throw DomainError("torus_geometry", "parameter lattice generators are linearly dependent");

    const std::size_t r = generators.size();
    Mat a(r, std::vector<std::int64_t>(3, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = generators[i][j];

    SmithNormalForm snf = smith_normal_form(a);
    const std::int64_t dv = det3(snf.V);
    assert(dv == 1 || dv == -1);
    Mat vinv = adjugate3(snf.V);
    if (dv == -1)
        for (auto& row : vinv)
            for (auto& x : row) x = -x;

    ParameterLattice pl;
    pl.generators = generators;
    pl.rank = int(r);
    for (std::size_t i = 0; i < r; ++i) {
        pl.saturation.push_back({vinv[i][0], vinv[i][1], vinv[i][2]});
        pl.divisors.push_back(snf.D[i][i]);
        if (snf.D[i][i] <= 0)
            throw DomainError("torus_geometry", "degenerate parameter lattice (zero elementary divisor)");
    }

    if (r == 1) {
        for (std::int64_t a0 = 0; a0 < pl.divisors[0]; ++a0)
            pl.cosets.push_back(scale(a0, pl.saturation[0]));
    } else {
        for (std::int64_t a0 = 0; a0 < pl.divisors[0]; ++a0)
            for (std::int64_t a1 = 0; a1 < pl.divisors[1]; ++a1)
                pl.cosets.push_back(add(scale(a0, pl.saturation[0]), scale(a1, pl.saturation[1])));
    }
    return pl;
}

std::int64_t cup_pairing(const Vec3i& khat, const Vec3i& a) { return dot(khat, a); }

std::optional<Vec3i> solve_integer_combination(const std::vector<Vec3i>& basis, const Vec3i& v) {
    if (basis.size() == 1) {
        const Vec3i& b = basis[0];
        int j = b[0] != 0 ? 0 : (b[1] != 0 ? 1 : 2);
        if (v[j] % b[j] != 0) return std::nullopt;
        std::int64_t x = v[j] / b[j];
        if (scale(x, b) != v) return std::nullopt;
        return Vec3i{x, 0, 0};
    }
    if (basis.size() == 2) {
        const Vec3i d = cross(basis[0], basis[1]);
        if (dot(v, d) != 0) return std::nullopt;
        const std::int64_t den = dot(d, d);
        const std::int64_t n1 = dot(cross(v, basis[1]), d);
        const std::int64_t n2 = dot(cross(basis[0], v), d);
        if (n1 % den != 0 || n2 % den != 0) return std::nullopt;
        Vec3i x{n1 / den, n2 / den, 0};
        if (add(scale(x[0], basis[0]), scale(x[1], basis[1])) != v) return std::nullopt;
        return x;
    }
    return std::nullopt;
}

}  // namespace dirac3t
