#include "dirac3t/flow_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirac3t/errors.hpp"

namespace dirac3t {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::int64_t spectral_flow_closed_form(const SpincStructure& spinc, const Vec3i& a) {
    return cup_pairing(spinc.khat, a);
}

FlowResult spectral_flow_numeric(const SpincStructure& spinc, const Vec3i& a, int samples) {
    if (is_zero(a)) throw DomainError("flow_index", "spectral_flow_numeric requires a != 0");
    if (samples < 16) throw DomainError("flow_index", "spectral_flow_numeric requires samples >= 16");

    FlowResult res;
    res.loop = a;

    if (spinc.trivial()) {
        // Spectrum is +-|2 pi t a + 2 pi b| at every t: check the pairing on
        // the sample grid, which forces zero net flow.  The pairing holds at
        // any cutoff, so a fixed window suffices.
        for (int i = 0; i < samples; ++i) {
            const double t = double(i) / double(samples);
            const Vec3d alpha = scale(kTwoPi * t, to_double(a));
            SpectrumSlice s = enumerate_spectrum(spinc, alpha, 1.5 * kTwoPi);
            auto vals = s.expanded();
            for (std::size_t j = 0; j < vals.size(); ++j) {
                const double mirror = -vals[vals.size() - 1 - j];
                if (std::abs(vals[j] - mirror) > 1e-9)
                    throw DomainError("flow_index", "trivial-case spectrum failed +- pairing");
            }
        }
        res.flow = 0;
        return res;
    }

    const std::int64_t ka = dot(spinc.k, a);
    const double nk = spinc.norm_k;
    const int dir = ka > 0 ? +1 : -1;

    // lambda_l(t) = (2 pi l + 2 pi t <k,a>)/|k|: only branches with a sign
    // change over the closed loop can cross.
    const std::int64_t lspan = std::llabs(ka) + 1;
    for (std::int64_t l = -lspan; l <= lspan; ++l) {
        auto branch = [&](double t) { return (kTwoPi * double(l) + kTwoPi * t * double(ka)) / nk; };
        if (ka == 0) continue;  // constant branches never cross

        // locate sign changes on the sample grid over [0,1)
        double prev = branch(0.0);
        double cross_t = -1.0;
        if (prev == 0.0) {
            cross_t = 0.0;  // crossing at the interval start belongs to the loop
        } else {
            for (int i = 1; i <= samples; ++i) {
                const double t = double(i) / double(samples);
                const double cur = branch(t);
                if ((prev < 0.0) != (cur < 0.0) || cur == 0.0) {
                    double lo = double(i - 1) / double(samples), hi = t;
                    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if ((branch(lo) < 0.0) != (branch(mid) < 0.0)) hi = mid;
                        else lo = mid;
                    }
                    cross_t = 0.5 * (lo + hi);
                    break;
                }
                prev = cur;
            }
        }
        if (cross_t < 0.0) continue;

        // exact crossing time from the affine formula
        const double exact_t = -double(l) / double(ka);
        if (!(exact_t >= 0.0 && exact_t < 1.0)) continue;
        if (std::abs(cross_t - exact_t) > 1e-9)
            throw DomainError("flow_index", "sampled crossing disagrees with affine formula");
        const double snapped = std::round(exact_t * samples) / double(samples);
        res.degeneracy_warning = res.degeneracy_warning || std::abs(exact_t - snapped) < 1e-9;

        for (std::int64_t copy = 0; copy < spinc.h; ++copy)
            res.crossings.push_back({exact_t, {SpectralCase::Nontrivial, l, 0, 0, {0, 0, 0}}, dir});
    }

    std::sort(res.crossings.begin(), res.crossings.end(), [](const Crossing& x, const Crossing& y) {
        if (x.t != y.t) return x.t < y.t;
        return x.branch.l < y.branch.l;
    });
    res.flow = 0;
    for (const auto& c : res.crossings) res.flow += c.direction;
    return res;
}

IndexElement index_element(const SpincStructure& spinc, const ParameterLattice& lattice) {
    IndexElement e;
    for (const auto& g : lattice.generators) e.values.push_back(cup_pairing(spinc.khat, g));
    return e;
}

bool sections_exist(const SpincStructure& spinc, const ParameterLattice& lattice) {
    return index_element(spinc, lattice).zero();
}

}  // namespace dirac3t
