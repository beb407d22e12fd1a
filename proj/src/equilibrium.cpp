#include "coordlab/equilibrium.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include <nlohmann/json.hpp>

#include "coordlab/enumeration.hpp"

namespace coordlab {

namespace {

constexpr double kGainTol = 1e-12;  // strict-improvement margin for Nash membership
constexpr double kTieTol = 1e-9;    // argmax tie tolerance
constexpr double kRelaxTol = 1e-6;

// Potential of a profile with m active vertices and quadratic form q, without
// the constant term theta*k/2. Matches normalized_potential() term for term.
double shifted_potential(int n, int k, double theta, int m, int q) {
    const double kd = k;
    const double nd = n;
    return -(kd * theta / nd) * m + q / (2 * kd);
}

std::vector<ActionProfile> merge_sorted(std::vector<std::vector<std::uint32_t>> blocks,
                                        int n) {
    std::vector<std::uint32_t> all;
    for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    std::vector<ActionProfile> out;
    out.reserve(all.size());
    for (std::uint32_t w : all) out.push_back(ActionProfile::from_word(w, n));
    return out;
}

double max_shifted_potential(const ProfileHistogram& h, double theta) {
    double best = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= h.n; ++m)
        for (int q2 = 0; q2 < h.cols; ++q2)
            if (h.counts[static_cast<std::size_t>(m) * h.cols + q2] > 0)
                best = std::max(best, shifted_potential(h.n, h.k, theta, m, 2 * q2));
    return best;
}

}  // namespace

std::vector<ActionProfile> enumerate_nash(const GameSpec& spec) {
    const int n = spec.graph.vertex_count();
    const int k = spec.graph.degree();
    require_enumerable(n);

    // An agent with s active neighbors gains `gain[s]` by switching to action
    // 1 (and -gain[s] by switching to 0). Tabulating the strict-improvement
    // tests over s keeps the scan free of per-state floating point.
    std::vector<std::uint8_t> improves_at_0(k + 1), improves_at_1(k + 1);
    for (int s = 0; s <= k; ++s) {
        const double gain = static_cast<double>(s) / k - static_cast<double>(k) * spec.theta / n;
        improves_at_0[s] = gain > kGainTol;
        improves_at_1[s] = -gain > kGainTol;
    }

    const auto masks = neighbor_masks32(spec.graph);
    const int nblocks = profile_block_count(n);
    std::vector<std::vector<std::uint32_t>> found(nblocks);

    run_blocks(nblocks, [&](int block) {
        std::vector<int> active(n);  // active-neighbor count per agent
        int violations = 0;
        auto deviates = [&](std::uint32_t state, int i) -> int {
            return (state >> i) & 1u ? improves_at_1[active[i]] : improves_at_0[active[i]];
        };
        scan_profile_block(
            masks, block, nblocks,
            [&](std::uint32_t state, int, int) {
                violations = 0;
                for (int i = 0; i < n; ++i) {
                    active[i] = std::popcount(state & masks[i]);
                    violations += deviates(state, i);
                }
                if (violations == 0) found[block].push_back(state);
            },
            [&](std::uint32_t state, int bit, int, int) {
                // Agent `bit` changed action; its own neighbor count did not.
                const bool now_active = (state >> bit) & 1u;
                violations -= now_active ? improves_at_0[active[bit]]
                                         : improves_at_1[active[bit]];
                violations += deviates(state, bit);
                // Its neighbors kept their actions but see one more/fewer
                // active neighbor.
                const int d = now_active ? 1 : -1;
                for (int j : spec.graph.neighbors(bit)) {
                    violations -= deviates(state, j);
                    active[j] += d;
                    violations += deviates(state, j);
                }
                if (violations == 0) found[block].push_back(state);
            });
    });
    return merge_sorted(std::move(found), n);
}

EquilibriumReport enumerate_maximizers(const GameSpec& spec) {
    const int n = spec.graph.vertex_count();
    const int k = spec.graph.degree();
    require_enumerable(n);

    const ProfileHistogram hist = profile_histogram(spec.graph);
    const double best = max_shifted_potential(hist, spec.theta);

    // Keep table over (m, q/2) buckets: a state is a maximizer iff its bucket
    // value lies within the tie tolerance of the best bucket.
    std::vector<std::uint8_t> keep(hist.counts.size(), 0);
    for (int m = 0; m <= n; ++m)
        for (int q2 = 0; q2 < hist.cols; ++q2) {
            const std::size_t idx = static_cast<std::size_t>(m) * hist.cols + q2;
            if (hist.counts[idx] > 0)
                keep[idx] = shifted_potential(n, k, spec.theta, m, 2 * q2) >= best - kTieTol;
        }

    const auto masks = neighbor_masks32(spec.graph);
    const int nblocks = profile_block_count(n);
    std::vector<std::vector<std::uint32_t>> found(nblocks);
    run_blocks(nblocks, [&](int block) {
        auto collect = [&](std::uint32_t state, int m, int q) {
            if (keep[static_cast<std::size_t>(m) * hist.cols + q / 2])
                found[block].push_back(state);
        };
        scan_profile_block(
            masks, block, nblocks,
            [&](std::uint32_t state, int m, int q) { collect(state, m, q); },
            [&](std::uint32_t state, int, int m, int q) { collect(state, m, q); });
    });

    EquilibriumReport report;
    report.nash_profiles = enumerate_nash(spec);
    report.maximizer_profiles = merge_sorted(std::move(found), n);
    report.max_potential = spec.theta * k / 2 + best;
    report.theta_threshold = theta_threshold(spec);
    return report;
}

RelaxationReport verify_relaxation(const GameSpec& spec) {
    const int n = spec.graph.vertex_count();
    const int k = spec.graph.degree();
    require_enumerable(n);

    const Spectrum s = spectrum(spec.graph);
    if (s.multiplicity_of_top > 1)
        throw Disconnected("top adjacency eigenvalue is not simple: graph is disconnected");
    const double lambda1 = s.eigenvalues(0);

    RelaxationReport report;
    report.relaxed_optimum =
        spec.theta * k / 2 + std::max(0.0, lambda1 / (2.0 * k) - k * spec.theta / n) * n;
    report.binary_optimum =
        spec.theta * k / 2 + max_shifted_potential(profile_histogram(spec.graph), spec.theta);
    report.difference = report.relaxed_optimum - report.binary_optimum;
    report.exact = std::abs(report.difference) <= kRelaxTol;
    return report;
}

nlohmann::json report_to_json(const GameSpec& spec, const EquilibriumReport& report) {
    auto hex_list = [](const std::vector<ActionProfile>& profiles) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : profiles) arr.push_back(p.to_hex());
        return arr;
    };
    return nlohmann::json{{"n", spec.graph.vertex_count()},
                          {"k", spec.graph.degree()},
                          {"theta", spec.theta},
                          {"theta_threshold", report.theta_threshold},
                          {"degenerate", is_degenerate_theta(spec)},
                          {"max_potential", report.max_potential},
                          {"nash", hex_list(report.nash_profiles)},
                          {"maximizers", hex_list(report.maximizer_profiles)}};
}

}  // namespace coordlab
