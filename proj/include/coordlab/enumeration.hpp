#pragma once

#include <bit>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "coordlab/errors.hpp"
#include "coordlab/graph.hpp"

namespace coordlab {

// Exhaustive scans over all 2^n binary profiles in Gray-code order, with the
// ones count m and the quadratic form q = a'Aa maintained incrementally.
// States are n-bit words (bit i = a_i), so scans require n <= 24.

inline constexpr int kMaxEnumerationBits = 24;

inline void require_enumerable(int n) {
    if (n > kMaxEnumerationBits)
        throw TooLarge("state space exceeds 2^24; enumeration requires n <= 24");
}

// Neighbor sets as 32-bit masks for Gray-code updates.
inline std::vector<std::uint32_t> neighbor_masks32(const Graph& g) {
    require_enumerable(g.vertex_count());
    std::vector<std::uint32_t> masks(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i)
        masks[i] = static_cast<std::uint32_t>(g.neighbor_mask(i));
    return masks;
}

// The scan splits the 2^n Gray ranks into this many equal contiguous blocks.
// Blocks may run concurrently; callers merge per-block results in block order
// so totals never depend on thread scheduling.
inline int profile_block_count(int n) { return n >= 12 ? 16 : 1; }

// Visits block `block` of `nblocks`. For the block's first state calls
// seed(state, m, q); for every following state calls step(state, bit, m, q)
// where `bit` is the single position flipped by the Gray-code advance.
template <typename Seed, typename Step>
void scan_profile_block(const std::vector<std::uint32_t>& masks, int block, int nblocks,
                        Seed&& seed, Step&& step) {
    const int n = static_cast<int>(masks.size());
    const std::uint32_t total = std::uint32_t{1} << n;
    const std::uint32_t lo = total / nblocks * block;
    const std::uint32_t hi = lo + total / nblocks;

    std::uint32_t state = lo ^ (lo >> 1);  // Gray code of the first rank
    int m = std::popcount(state);
    int q = 0;
    for (int i = 0; i < n; ++i)
        if (state & (std::uint32_t{1} << i)) q += std::popcount(state & masks[i]);
    seed(state, m, q);

    for (std::uint32_t rank = lo + 1; rank != hi; ++rank) {
        const int bit = std::countr_zero(rank);
        state ^= std::uint32_t{1} << bit;
        // masks[bit] excludes bit itself, so the active-neighbor count of the
        // flipped vertex is the same before and after the flip.
        const int active = std::popcount(state & masks[bit]);
        if (state & (std::uint32_t{1} << bit)) {
            ++m;
            q += 2 * active;
        } else {
            --m;
            q -= 2 * active;
        }
        step(state, bit, m, q);
    }
}

// Runs work(block) for every block, spreading blocks across hardware threads
// when more than one is available. Rethrows the first worker exception.
template <typename BlockWork>
void run_blocks(int nblocks, BlockWork&& work) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (nblocks == 1 || hw <= 1) {
        for (int b = 0; b < nblocks; ++b) work(b);
        return;
    }
    const int workers = static_cast<int>(std::min<unsigned>(hw, nblocks));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int b = w; b < nblocks; b += workers) work(b);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Histogram of profiles by (ones count m, half quadratic form q/2). The
// potential of a profile depends only on (m, q), so one scan of a graph
// supports exact Gibbs summaries for any (theta, beta) afterwards.
struct ProfileHistogram {
    int n = 0;
    int k = 0;
    int cols = 0;                      // n*k/2 + 1 values of q/2
    std::vector<std::int64_t> counts;  // counts[m * cols + q/2]

    std::int64_t count(int m, int q) const { return counts[m * cols + q / 2]; }
};

inline ProfileHistogram profile_histogram(const Graph& g) {
    const int n = g.vertex_count();
    require_enumerable(n);
    ProfileHistogram h;
    h.n = n;
    h.k = g.degree();
    h.cols = n * g.degree() / 2 + 1;
    h.counts.assign(static_cast<std::size_t>(n + 1) * h.cols, 0);

    const auto masks = neighbor_masks32(g);
    const int nblocks = profile_block_count(n);
    std::vector<std::vector<std::int64_t>> partial(
        nblocks, std::vector<std::int64_t>(h.counts.size(), 0));
    run_blocks(nblocks, [&](int block) {
        auto& local = partial[block];
        auto tally = [&](int m, int q) { ++local[m * h.cols + q / 2]; };
        scan_profile_block(
            masks, block, nblocks, [&](std::uint32_t, int m, int q) { tally(m, q); },
            [&](std::uint32_t, int, int m, int q) { tally(m, q); });
    });
    for (int b = 0; b < nblocks; ++b)
        for (std::size_t i = 0; i < h.counts.size(); ++i) h.counts[i] += partial[b][i];
    return h;
}

}  // namespace coordlab
