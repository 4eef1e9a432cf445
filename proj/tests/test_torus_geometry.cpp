#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dirac3t/errors.hpp"
#include "dirac3t/torus_geometry.hpp"

using namespace dirac3t;

namespace {

// brute-force oracle: successive minima of pi_k(Z^3) from a box enumeration
struct ProjectedMinima {
    double lambda1 = 1e300;
    double lambda2 = 1e300;
};

Vec3d project(const Vec3i& k, const Vec3i& z) {
    const Vec3d kd = to_double(k);
    const Vec3d zd = to_double(z);
    return sub(zd, scale(dot(zd, kd) / dot(kd, kd), kd));
}

ProjectedMinima brute_minima(const Vec3i& k, int box) {
    ProjectedMinima m;
    Vec3d first{0, 0, 0};
    for (int a = -box; a <= box; ++a)
        for (int b = -box; b <= box; ++b)
            for (int c = -box; c <= box; ++c) {
                const Vec3d p = project(k, {a, b, c});
                const double n = norm(p);
                if (n < 1e-9) continue;
                if (n < m.lambda1 - 1e-12) {
                    m.lambda1 = n;
                    first = p;
                }
            }
    for (int a = -box; a <= box; ++a)
        for (int b = -box; b <= box; ++b)
            for (int c = -box; c <= box; ++c) {
                const Vec3d p = project(k, {a, b, c});
                const double n = norm(p);
                if (n < 1e-9) continue;
                if (norm(cross(p, first)) < 1e-9) continue;  // parallel to the shortest
                m.lambda2 = std::min(m.lambda2, n);
            }
    return m;
}

std::int64_t det_square(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    std::int64_t d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::int64_t> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(row);
        }
        const std::int64_t sgn = j % 2 == 0 ? 1 : -1;
        d += sgn * m[0][j] * det_square(minor);
    }
    return d;
}

std::vector<std::vector<std::int64_t>> matmul(const std::vector<std::vector<std::int64_t>>& a,
                                              const std::vector<std::vector<std::int64_t>>& b) {
    const std::size_t r = a.size(), mid = b.size(), c = b[0].size();
    std::vector<std::vector<std::int64_t>> out(r, std::vector<std::int64_t>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < mid; ++k)
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

bool integer_within(const Vec3d& v, double tol) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(v[i] - std::round(v[i])) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("spinc decomposition") {
    auto s0 = decompose_spinc({0, 0, 0});
    CHECK(s0.h == 0);
    CHECK(s0.trivial());

    auto s1 = decompose_spinc({2, 4, 6});
    CHECK(s1.h == 2);
    CHECK(s1.k == Vec3i{1, 2, 3});

    auto s2 = decompose_spinc({0, 0, 3});
    CHECK(s2.h == 3);
    CHECK(s2.k == Vec3i{0, 0, 1});

    // recomposition h*k = khat over the full small box
    for (std::int64_t a = -50; a <= 50; a += 7)
        for (std::int64_t b = -50; b <= 50; b += 5)
            for (std::int64_t c = -50; c <= 50; c += 3) {
                const Vec3i khat{a, b, c};
                auto s = decompose_spinc(khat);
                if (s.trivial()) {
                    CHECK(is_zero(khat));
                    continue;
                }
                CHECK(scale(s.h, s.k) == khat);
                CHECK(gcd3(s.k) == 1);
            }
}

TEST_CASE("projected lattice: axis-aligned case") {
    auto pl = projected_lattice({0, 0, 1});
    CHECK(pl.w1 == Vec3d{1, 0, 0});
    CHECK(pl.w2 == Vec3d{0, 1, 0});
    CHECK(pl.c1 == doctest::Approx(0.0));
    CHECK(pl.c2 == doctest::Approx(0.0));
    CHECK(pl.area == doctest::Approx(1.0));
}

TEST_CASE("projected lattice: covolume and reduced minima vs brute force") {
    CHECK(projected_lattice({1, 1, 0}).area == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(projected_lattice({1, 1, 1}).area == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    const std::vector<Vec3i> ks{{1, 1, 0}, {1, 1, 1}, {1, 2, 3}, {2, 3, 5}, {0, 1, 2}, {3, 1, 1}};
    for (const auto& k : ks) {
        auto pl = projected_lattice(k);
        auto bm = brute_minima(k, 5);
        CHECK(norm(pl.w1) == doctest::Approx(bm.lambda1).epsilon(1e-9));
        CHECK(norm(pl.w2) == doctest::Approx(bm.lambda2).epsilon(1e-9));
    }
}

TEST_CASE("projected lattice invariants over all primitive k") {
    int checked = 0;
    for (std::int64_t a = -10; a <= 10; ++a)
        for (std::int64_t b = -10; b <= 10; ++b)
            for (std::int64_t c = -10; c <= 10; ++c) {
                const Vec3i k{a, b, c};
                if (is_zero(k) || gcd3(k) != 1) continue;
                auto pl = projected_lattice(k);
                // orthogonality to k
                CHECK(std::abs(dot(pl.w1, to_double(k))) < 1e-9);
                CHECK(std::abs(dot(pl.w2, to_double(k))) < 1e-9);
                // covolume identity
                CHECK(std::abs(pl.area * norm(k) - 1.0) < 1e-9);
                // w_i - c_i k integral
                CHECK(integer_within(sub(pl.w1, scale(pl.c1, to_double(k))), 1e-9));
                CHECK(integer_within(sub(pl.w2, scale(pl.c2, to_double(k))), 1e-9));
                CHECK(pl.c1 >= 0.0);
                CHECK(pl.c1 < 1.0);
                CHECK(pl.c2 >= 0.0);
                CHECK(pl.c2 < 1.0);
                // preimages project onto w_i
                CHECK(norm(sub(project(k, pl.z1), pl.w1)) < 1e-9);
                CHECK(norm(sub(project(k, pl.z2), pl.w2)) < 1e-9);
                // c from a different preimage choice agrees mod 1
                const double n2 = double(norm2i(k));
                const double c_alt = mod1(-double(dot(add(pl.z1, k), k)) / n2);
                CHECK(std::abs(c_alt - pl.c1) < 1e-12);
                ++checked;
            }
    CHECK(checked > 3000);
}

TEST_CASE("trivialization and its inverse") {
    auto pl = projected_lattice({0, 0, 1});
    auto tp = trivialize(pl, {0.3, 0.4, 0.2});
    CHECK(tp.t1 == doctest::Approx(0.3));
    CHECK(tp.t2 == doctest::Approx(0.4));
    CHECK(tp.circle == doctest::Approx(0.2));

    // k=(1,1,0), chi=(1,0,0): circle coordinate must be [c1]
    auto pl2 = projected_lattice({1, 1, 0});
    auto tp2 = trivialize(pl2, {1.0, 0.0, 0.0});
    CHECK(tp2.circle == doctest::Approx(mod1(pl2.c1)));

    // round trip: identity mod Z^3 in standard coordinates
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    const std::vector<Vec3i> ks{{0, 0, 1}, {1, 1, 0}, {1, 2, 3}, {2, 3, 5}};
    for (const auto& k : ks) {
        auto p = projected_lattice(k);
        for (int it = 0; it < 100; ++it) {
            const Vec3d x{uni(rng), uni(rng), uni(rng)};
            const Vec3d chi = basis_coords(p, x);
            const Vec3d chi2 = trivialize_inverse(p, trivialize(p, chi));
            const Vec3d x2 = point_from_basis_coords(p, chi2);
            CHECK(integer_within(sub(x, x2), 1e-9));
        }
    }
}

TEST_CASE("fiber form split") {
    auto pl = projected_lattice({0, 0, 1});
    auto fs = fiber_form_split(pl, 1);
    CHECK(norm(fs.omega_par) < 1e-12);
    CHECK(norm(sub(fs.omega_perp, Vec3d{0, 0, 1})) < 1e-12);

    auto fs0 = fiber_form_split(projected_lattice({1, 2, 3}), 0);
    CHECK(norm(fs0.omega_par) < 1e-12);
    CHECK(norm(fs0.omega_perp) < 1e-12);

    // dual-basis linear solve oracle: theta = l * (c1 d1 + c2 d2 + d3) where
    // rows d_i solve M^T d_i = e_i for M = [w1 w2 k]
    const std::vector<Vec3i> ks{{1, 1, 0}, {1, 2, 3}, {2, 3, 5}, {0, 1, 2}};
    for (const auto& k : ks) {
        auto p = projected_lattice(k);
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i) {
            m(i, 0) = p.w1[i];
            m(i, 1) = p.w2[i];
            m(i, 2) = double(k[i]);
        }
        Eigen::Matrix3d dual = m.inverse();
        for (std::int64_t l : {-2, 1, 3}) {
            Eigen::Vector3d theta =
                double(l) * (p.c1 * dual.row(0) + p.c2 * dual.row(1) + dual.row(2)).transpose();
            auto fs2 = fiber_form_split(p, l);
            const Vec3d total = add(fs2.omega_par, fs2.omega_perp);
            for (int i = 0; i < 3; ++i) CHECK(total[i] == doctest::Approx(theta(i)).epsilon(1e-10));
            CHECK(std::abs(dot(fs2.omega_par, to_double(k))) < 1e-9);
            CHECK(norm(cross(fs2.omega_perp, to_double(k))) < 1e-9);
            // the total covector is integral (it is l times an integer covector
            // dual to k)
            CHECK(integer_within(total, 1e-9));
        }
    }
}

TEST_CASE("smith normal form properties") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
    for (int it = 0; it < 300; ++it) {
        const std::size_t r = it % 2 == 0 ? 2 : 3;
        std::vector<std::vector<std::int64_t>> a(r, std::vector<std::int64_t>(3, 0));
        for (auto& row : a)
            for (auto& x : row) x = coeff(rng);
        auto snf = smith_normal_form(a);
        const auto lhs = matmul(matmul(snf.U, a), snf.V);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(lhs[i][j] == snf.D[i][j]);
                if (i != j) CHECK(snf.D[i][j] == 0);
            }
        CHECK(std::abs(det_square(snf.U)) == 1);
        CHECK(std::abs(det_square(snf.V)) == 1);
        for (std::size_t i = 0; i + 1 < std::min(r, std::size_t(3)); ++i) {
            CHECK(snf.D[i][i] >= 0);
            if (snf.D[i][i] != 0) CHECK(snf.D[i + 1][i + 1] % snf.D[i][i] == 0);
        }
    }
}

TEST_CASE("saturation and cosets") {
    // index-2 sublattice of the horizontal plane
    auto pl = saturate_and_cosets({{2, 0, 0}, {0, 1, 0}});
    CHECK(pl.index() == 2);
    CHECK(pl.cosets.size() == 2);

    auto sat = saturate_and_cosets({{1, 0, 0}, {0, 1, 0}});
    CHECK(sat.index() == 1);
    CHECK(sat.cosets.size() == 1);

    auto prim = saturate_and_cosets({{1, 1, 0}});
    CHECK(prim.index() == 1);
    CHECK(prim.saturation.size() == 1);
    CHECK(gcd3(prim.saturation[0]) == 1);

    auto scaled = saturate_and_cosets({{2, 2, 0}});
    CHECK(scaled.index() == 2);

    // every generator is an integer combination of the saturation basis;
    // coset reps live in ell_Z and are pairwise non-congruent mod ell
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> coeff(-6, 6);
    int built = 0;
    while (built < 60) {
        std::vector<Vec3i> gens;
        const int r = built % 2 == 0 ? 1 : 2;
        for (int i = 0; i < r; ++i) gens.push_back({coeff(rng), coeff(rng), coeff(rng)});
        ParameterLattice lat;
        try {
            lat = saturate_and_cosets(gens);
        } catch (const DomainError&) {
            continue;
        }
        ++built;
        for (const auto& g : gens) CHECK(solve_integer_combination(lat.saturation, g).has_value());
        CHECK(std::int64_t(lat.cosets.size()) == lat.index());
        for (const auto& c : lat.cosets) CHECK(solve_integer_combination(lat.saturation, c).has_value());
        for (std::size_t i = 0; i < lat.cosets.size(); ++i)
            for (std::size_t j = i + 1; j < lat.cosets.size(); ++j) {
                const Vec3i diff = sub(lat.cosets[i], lat.cosets[j]);
                CHECK(!solve_integer_combination(lat.generators, diff).has_value());
            }
    }
}

TEST_CASE("cup pairing") {
    CHECK(cup_pairing({0, 0, 2}, {0, 0, 1}) == 2);
    CHECK(cup_pairing({0, 0, 0}, {5, -1, 7}) == 0);
    CHECK(cup_pairing({1, 2, 3}, {3, 0, -1}) == 0);
}

TEST_CASE("torus geometry error paths") {
    CHECK_THROWS_AS(projected_lattice({0, 0, 0}), DomainError);
    CHECK_THROWS_AS(projected_lattice({0, 0, 2}), DomainError);
    CHECK_THROWS_AS(saturate_and_cosets({}), DomainError);
    CHECK_THROWS_AS(saturate_and_cosets({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), DomainError);
    CHECK_THROWS_AS(saturate_and_cosets({{1, 1, 0}, {2, 2, 0}}), DomainError);
    CHECK_THROWS_AS(saturate_and_cosets({{0, 0, 0}}), DomainError);
}
