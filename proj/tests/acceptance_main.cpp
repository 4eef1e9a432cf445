// Acceptance suite: runs every criterion at its stated tolerance and prints
// one [PASS]/[FAIL] line per criterion.  Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dirac3t/errors.hpp"
#include "dirac3t/flow_index.hpp"
#include "dirac3t/lattice_oracle.hpp"
#include "dirac3t/spectral_sections.hpp"
#include "dirac3t/spectrum_engine.hpp"
#include "dirac3t/torus_geometry.hpp"

using namespace dirac3t;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%s; %.1fs)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

Vec3i random_vec(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return {d(rng), d(rng), d(rng)};
}

}  // namespace

int main() {
    // 1. spectral flow identity, exact integer equality on random pairs
    criterion(1, "spectral flow identity", [](std::string& detail) {
        std::mt19937_64 rng(1001);
        int done = 0, zero_class = 0;
        while (done < 500) {
            Vec3i khat = random_vec(rng, -10, 10);
            if (done % 10 == 0) khat = {0, 0, 0};
            const Vec3i a = random_vec(rng, -5, 5);
            if (is_zero(a)) continue;
            auto s = decompose_spinc(khat);
            FlowResult fr = spectral_flow_numeric(s, a, 64);
            if (fr.flow != spectral_flow_closed_form(s, a)) {
                detail = "mismatch at khat=" + format_vec(khat) + " a=" + format_vec(a);
                return false;
            }
            if (s.trivial()) ++zero_class;
            ++done;
        }
        detail = "500 random pairs exact, " + std::to_string(zero_class) + " trivial-class";
        return true;
    });

    // 2. existence criterion: three-way equivalence, exact
    criterion(2, "section existence iff vanishing index", [](std::string& detail) {
        std::mt19937_64 rng(2002);
        int done = 0, positives = 0;
        while (done < 200) {
            Vec3i khat = random_vec(rng, -10, 10);
            std::vector<Vec3i> gens;
            const int r = 1 + int(done % 2);
            if (done % 3 == 0 && !is_zero(khat)) {
                // bias toward lattices orthogonal to khat so both outcomes occur
                const Vec3i g1{-khat[1], khat[0], 0};
                const Vec3i g2{0, -khat[2], khat[1]};
                if (!is_zero(g1)) gens.push_back(g1);
                if (gens.size() < std::size_t(r) && !is_zero(g2)) gens.push_back(g2);
            }
            while (gens.size() < std::size_t(r)) gens.push_back(random_vec(rng, -5, 5));
            ParameterLattice lat;
            try {
                lat = saturate_and_cosets(gens);
            } catch (const DomainError&) {
                continue;
            }
            auto s = decompose_spinc(khat);
            const bool ex = sections_exist(s, lat);
            const bool via_index = index_element(s, lat).zero();
            bool via_pairings = true;
            for (const auto& g : lat.generators)
                if (cup_pairing(khat, g) != 0) via_pairings = false;
            if (ex != via_index || ex != via_pairings) {
                detail = "equivalence broken at khat=" + format_vec(khat);
                return false;
            }
            if (ex) ++positives;
            ++done;
        }
        detail = "200 instances, " + std::to_string(positives) + " with sections";
        return true;
    });

    // 3. kernel dimension closed form + lattice zero modes
    criterion(3, "kernel dimension and lattice zero modes", [](std::string& detail) {
        const std::vector<Vec3i> prims{{0, 0, 1}, {1, 1, 0}, {1, 2, 3}, {0, 1, 1}, {2, 1, 0}};
        for (std::int64_t h = 1; h <= 5; ++h)
            for (const auto& k : prims) {
                auto s = decompose_spinc(scale(h, k));
                const Vec3d kd = to_double(k);
                for (std::int64_t m = -2; m <= 2; ++m) {
                    const Vec3d alpha = scale(kTwoPi * double(m) / dot(kd, kd), kd);
                    if (kernel_dimension(s, alpha) != h) {
                        detail = "closed-form kernel wrong at h=" + std::to_string(h);
                        return false;
                    }
                }
                if (kernel_dimension(s, scale(0.37 / s.norm_k, kd)) != 0) {
                    detail = "kernel should vanish off the integer locus";
                    return false;
                }
            }
        std::string zc;
        for (std::int64_t h = 1; h <= 4; ++h) {
            const std::int64_t N =
                std::max<std::int64_t>(32, std::int64_t(std::ceil(8.0 * std::sqrt(double(h)))) * 8);
            const std::int64_t z = count_zero_modes(h, N, 1.0);
            zc += (h > 1 ? "," : "") + std::to_string(z) + "@N=" + std::to_string(N);
            if (z != h) {
                detail = "oracle zero modes " + std::to_string(z) + " != h=" + std::to_string(h);
                return false;
            }
        }
        detail = "h=1..5 closed form exact; oracle " + zc;
        return true;
    });

    // 4. Landau levels within 5%, error at least halving from N to 2N
    criterion(4, "lattice Landau levels", [](std::string& detail) {
        char buf[160];
        for (std::int64_t h = 1; h <= 3; ++h) {
            OracleReport base = landau_check(h, 1.0, 48, 3);
            OracleReport fine = landau_check(h, 1.0, 96, 3);
            if (!base.conclusive || !fine.conclusive) {
                detail = "clustering inconclusive at h=" + std::to_string(h);
                return false;
            }
            if (base.max_rel_error >= 0.05) {
                detail = "relative error " + std::to_string(base.max_rel_error) + " at N=48";
                return false;
            }
            if (fine.max_rel_error > 0.5 * base.max_rel_error * 1.25) {
                detail = "error did not halve: " + std::to_string(base.max_rel_error) + " -> " +
                         std::to_string(fine.max_rel_error);
                return false;
            }
            if (h == 3) {
                std::snprintf(buf, sizeof(buf), "h=3: err(48)=%.4f err(96)=%.4f",
                              base.max_rel_error, fine.max_rel_error);
            }
        }
        OracleReport aniso = landau_check(1, std::sqrt(2.0), 48, 2);
        if (!aniso.conclusive || aniso.max_rel_error >= 0.05) {
            detail = "|k| = sqrt 2 case failed";
            return false;
        }
        detail = std::string(buf) + "; |k|=sqrt2 ok";
        return true;
    });

    // 5. trivial-case spectrum vs brute force, exact to 1e-12, symmetric
    criterion(5, "trivial-case spectrum vs brute force", [](std::string& detail) {
        std::mt19937_64 rng(5005);
        std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
        auto s0 = decompose_spinc({0, 0, 0});
        const double cutoff = 20.0;
        for (int it = 0; it < 100; ++it) {
            const Vec3d alpha{uni(rng), uni(rng), uni(rng)};
            auto ex = enumerate_spectrum(s0, alpha, cutoff).expanded();
            std::vector<double> brute;
            const std::int64_t box = std::int64_t(std::ceil((cutoff + norm(alpha)) / kTwoPi)) + 1;
            for (std::int64_t a = -box; a <= box; ++a)
                for (std::int64_t b = -box; b <= box; ++b)
                    for (std::int64_t c = -box; c <= box; ++c) {
                        const Vec3d beta{alpha[0] + kTwoPi * double(a), alpha[1] + kTwoPi * double(b),
                                         alpha[2] + kTwoPi * double(c)};
                        const double v = std::sqrt(dot(beta, beta));
                        if (v <= cutoff) {
                            brute.push_back(v);
                            brute.push_back(-v);
                        }
                    }
            std::sort(brute.begin(), brute.end());
            if (brute.size() != ex.size()) {
                detail = "cardinality mismatch";
                return false;
            }
            for (std::size_t i = 0; i < ex.size(); ++i) {
                if (std::abs(ex[i] - brute[i]) > 1e-12) {
                    detail = "value deviation above 1e-12";
                    return false;
                }
                if (std::abs(ex[i] + ex[ex.size() - 1 - i]) > 1e-12) {
                    detail = "spectrum not symmetric";
                    return false;
                }
            }
        }
        detail = "100 random alpha at cutoff 20";
        return true;
    });

    // 6. block algebra at stated tolerances
    criterion(6, "block algebra", [](std::string& detail) {
        BlockOracleReport rep = mode_block_oracle(10000);
        if (rep.max_block_eig_dev > 1e-10) {
            detail = "block eigenvalue deviation " + std::to_string(rep.max_block_eig_dev);
            return false;
        }
        if (rep.max_clifford_eig_dev > 1e-12 * 10.0) {
            detail = "clifford eigenvalue deviation " + std::to_string(rep.max_clifford_eig_dev);
            return false;
        }
        std::mt19937_64 rng(6006);
        std::uniform_real_distribution<double> uni(-10.0, 10.0);
        for (int it = 0; it < 10000; ++it) {
            BlockEigenData bd = block_eigen_data(uni(rng), uni(rng));
            const double ip = bd.vplus[0] * bd.vminus[0] + bd.vplus[1] * bd.vminus[1];
            if (std::abs(ip) > 1e-10 * std::max(1.0, bd.s * bd.s)) {
                detail = "vplus/vminus not orthogonal";
                return false;
            }
        }
        detail = "1e4 draws for each identity";
        return true;
    });

    // 7. gauge periodicity of spectra
    criterion(7, "gauge periodicity", [](std::string& detail) {
        std::mt19937_64 rng(7007);
        std::uniform_real_distribution<double> uni(-2.5, 2.5);
        std::uniform_int_distribution<std::int64_t> ai(-2, 2);
        const std::vector<Vec3i> khats{{0, 0, 0}, {0, 0, 2}, {1, 1, 0}, {2, 4, 6}, {1, 2, 3}};
        int done = 0;
        while (done < 100) {
            const Vec3i khat = khats[done % khats.size()];
            auto s = decompose_spinc(khat);
            const Vec3d alpha{uni(rng), uni(rng), uni(rng)};
            const Vec3i a{ai(rng), ai(rng), ai(rng)};
            auto e1 = enumerate_spectrum(s, alpha, 8.37).expanded();
            auto e2 = enumerate_spectrum(s, add(alpha, scale(kTwoPi, to_double(a))), 8.37).expanded();
            if (e1.size() != e2.size()) {
                detail = "entry count changed under gauge shift";
                return false;
            }
            for (std::size_t i = 0; i < e1.size(); ++i)
                if (std::abs(e1[i] - e2[i]) > 1e-12) {
                    detail = "value moved by more than 1e-12 under gauge shift";
                    return false;
                }
            ++done;
        }
        detail = "100 random cases, sorted values match to 1e-12";
        return true;
    });

    // 8. relative degree classification
    criterion(8, "bubble relative degrees", [](std::string& detail) {
        auto s0 = decompose_spinc({0, 0, 0});
        auto plane = saturate_and_cosets({{1, 0, 0}, {0, 1, 0}});
        const double R = 0.5 * epsilon_bound(s0, plane);
        for (std::int64_t n = -3; n <= 3; ++n) {
            SectionBuild b = build_projector_field_trivial(s0, plane, R, {n}, 128);
            const std::int64_t got = relative_degree(b.disc_fields[0]);
            if (got != n) {
                detail = "degree " + std::to_string(got) + " != " + std::to_string(n);
                return false;
            }
        }
        detail = "n = -3..3 on a 128x128 polar grid";
        return true;
    });

    // 9. Chern certification
    criterion(9, "plaquette Chern certification", [](std::string& detail) {
        auto plane = saturate_and_cosets({{1, 0, 0}, {0, 1, 0}});
        int tested = 0;
        for (std::int64_t h = 1; h <= 4; ++h) {
            auto s = decompose_spinc({0, 0, h});
            const double R = 0.5 * epsilon_bound(s, plane);
            for (std::int64_t d = -3; d <= 3; ++d) {
                if (h == 1 && d != 0) continue;  // rank 1 = full bundle forces d = 0
                SectionBuild b = build_projector_field_nontrivial(s, plane, R, 1, d, 24);
                if (chern_number(b.torus_field) != d) {
                    detail = "chern mismatch at h=" + std::to_string(h) + " d=" + std::to_string(d);
                    return false;
                }
                ++tested;
            }
        }
        detail = std::to_string(tested) + " (h,d) pairs on 24x24 grids";
        return true;
    });

    // 10. every classified descriptor verifies at R = epsilon/2
    criterion(10, "section validity at R = epsilon/2", [](std::string& detail) {
        double worst_jump_c = 0.0;
        // nontrivial: all ranks, sample cherns
        auto plane = saturate_and_cosets({{1, 0, 0}, {0, 1, 0}});
        auto s3 = decompose_spinc({0, 0, 3});
        const double R3 = 0.5 * epsilon_bound(s3, plane);
        for (std::int64_t r = 0; r <= 3; ++r)
            for (std::int64_t d = -2; d <= 2; ++d) {
                if ((r == 0 || r == 3) && d != 0) continue;
                SectionBuild b = build_projector_field_nontrivial(s3, plane, R3, r, d, 48);
                SectionVerifyReport rep = verify_spectral_section(b, s3, plane, R3);
                if (!rep.ok) {
                    detail = "nontrivial (r,d)=(" + std::to_string(r) + "," + std::to_string(d) +
                             ") failed: " + (rep.failures.empty() ? "tolerance" : rep.failures[0]);
                    return false;
                }
                worst_jump_c = std::max(worst_jump_c, rep.jump_constant);
            }
        // trivial: one and two coset lattices, free degree range
        auto s0 = decompose_spinc({0, 0, 0});
        for (const auto& gens :
             std::vector<std::vector<Vec3i>>{{{1, 0, 0}, {0, 1, 0}}, {{2, 0, 0}, {0, 1, 0}}}) {
            auto lat = saturate_and_cosets(gens);
            const double R = 0.5 * epsilon_bound(s0, lat);
            for (std::int64_t g = -2; g <= 2; ++g) {
                std::vector<std::int64_t> degs(lat.cosets.size(), 0);
                degs[0] = g;
                SectionBuild b = build_projector_field_trivial(s0, lat, R, degs, 96);
                SectionVerifyReport rep = verify_spectral_section(b, s0, lat, R);
                if (!rep.ok || rep.max_idem > 1e-10 || rep.max_forced > 1e-10) {
                    detail = "trivial degree " + std::to_string(g) + " failed";
                    return false;
                }
                worst_jump_c = std::max(worst_jump_c, rep.jump_constant);
                for (std::size_t c = 0; c < lat.cosets.size(); ++c)
                    if (relative_degree(b.disc_fields[c]) != degs[c]) {
                        detail = "certificate degree mismatch";
                        return false;
                    }
            }
        }
        // rank-1 base: the single forced class
        auto line = saturate_and_cosets({{1, 0, 0}});
        const double Rl = 0.5 * epsilon_bound(s0, line);
        SectionBuild bl = build_projector_field_trivial(s0, line, Rl, {0}, 96);
        if (!verify_spectral_section(bl, s0, line, Rl).ok) {
            detail = "rank-1 base failed";
            return false;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max continuity constant C=%.2f", worst_jump_c);
        detail = buf;
        return true;
    });

    // 11. K-difference soundness in the trivial case
    criterion(11, "K-difference soundness", [](std::string& detail) {
        for (std::int64_t g1a = -2; g1a <= 2; ++g1a)
            for (std::int64_t g1b = -2; g1b <= 2; ++g1b)
                for (std::int64_t g2a = -2; g2a <= 2; ++g2a)
                    for (std::int64_t g2b = -2; g2b <= 2; ++g2b) {
                        SectionDescriptor d1{SectionCase::Trivial, 0.5, 0, 0, {g1a, g1b}};
                        SectionDescriptor d2{SectionCase::Trivial, 0.5, 0, 0, {g2a, g2b}};
                        const KDifference kd = k_difference(d1, d2);
                        if (kd.delta_rank != 0 || kd.delta_c1 != (g1a + g1b) - (g2a + g2b)) {
                            detail = "difference formula broken";
                            return false;
                        }
                        // identified by the minimal system J iff the sums agree
                        const bool same_class = kd.delta_rank == 0 && kd.delta_c1 == 0;
                        if (same_class != (g1a + g1b == g2a + g2b)) {
                            detail = "minimal-system identification broken";
                            return false;
                        }
                    }
        detail = "all degree pairs in [-2,2]^2 x [-2,2]^2";
        return true;
    });

    if (g_failures == 0) std::printf("acceptance: all 11 criteria passed\n");
    else std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
