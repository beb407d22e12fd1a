#include "coordlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coordlab/enumeration.hpp"

namespace coordlab {

namespace {

void require_beta(double beta) {
    if (!(beta >= 0)) throw std::invalid_argument("beta must be >= 0");
}

void require_profile(const GameSpec& spec, const ActionProfile& a) {
    if (a.size() != spec.graph.vertex_count())
        throw DimensionMismatch("profile length does not match vertex count");
}

// Shifted potential of a bucket; matches normalized_potential() term for term
// so bucketed summaries agree bitwise with per-profile evaluation.
double shifted_potential(int n, int k, double theta, int m, int q) {
    const double kd = k;
    const double nd = n;
    return -(kd * theta / nd) * m + q / (2 * kd);
}

struct GibbsSummary {
    double log_partition = 0.0;
    double mass0 = 0.0;
    double mass1 = 0.0;
    double expected_potential = 0.0;
};

// Bucketed log-sum-exp over the (m, q/2) histogram in fixed order, so the
// result is independent of how the enumeration was split across threads.
GibbsSummary summarize(const ProfileHistogram& h, double theta, double beta) {
    double mx = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int m = 0; m <= h.n; ++m)
        for (int q2 = 0; q2 < h.cols; ++q2) {
            const std::int64_t c = h.counts[static_cast<std::size_t>(m) * h.cols + q2];
            if (c == 0) continue;
            const double x = beta * shifted_potential(h.n, h.k, theta, m, 2 * q2);
            if (x <= mx) {
                acc += c * std::exp(x - mx);
            } else {
                acc = acc * std::exp(mx - x) + c;
                mx = x;
            }
        }
    GibbsSummary s;
    s.log_partition = mx + std::log(acc);
    for (int m = 0; m <= h.n; ++m)
        for (int q2 = 0; q2 < h.cols; ++q2) {
            const std::int64_t c = h.counts[static_cast<std::size_t>(m) * h.cols + q2];
            if (c == 0) continue;
            const double v = shifted_potential(h.n, h.k, theta, m, 2 * q2);
            s.expected_potential += c * v * std::exp(beta * v - s.log_partition);
        }
    s.mass0 = std::exp(beta * shifted_potential(h.n, h.k, theta, 0, 0) - s.log_partition);
    s.mass1 = std::exp(beta * shifted_potential(h.n, h.k, theta, h.n, h.n * h.k) -
                       s.log_partition);
    return s;
}

// Uniform random profile; consumes one u64 per 64 vertices (bit b of chunk w
// is vertex 64w + b).
ActionProfile random_profile(int n, SplitMix64& rng) {
    ActionProfile a(n);
    for (int base = 0; base < n; base += 64) {
        const std::uint64_t chunk = rng.next_u64();
        const int width = std::min(64, n - base);
        for (int b = 0; b < width; ++b)
            if ((chunk >> b) & 1u) a.set(base + b, true);
    }
    return a;
}

double logistic(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

std::int64_t default_burn_in(std::int64_t steps) {
    return std::min(std::max(steps / 100, std::int64_t{10000}), steps - 1);
}

double activation_probability(const GameSpec& spec, const ActionProfile& a, int i,
                              double beta) {
    require_beta(beta);
    require_profile(spec, a);
    if (i < 0 || i >= spec.graph.vertex_count())
        throw VertexOutOfRange("vertex index out of range");
    int active = 0;
    for (int j : spec.graph.neighbors(i)) active += a.get(j);
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    const double payoff_of_1 = active / k - k * spec.theta / n;
    // Softmax over logits {0, beta * payoff_of_1}; logistic() evaluates it
    // from whichever side avoids overflow (max-logit subtraction).
    return logistic(beta * payoff_of_1);
}

ActionProfile lll_step(const GameSpec& spec, const ActionProfile& a, double beta,
                       SplitMix64& rng) {
    require_beta(beta);
    require_profile(spec, a);
    const int i = static_cast<int>(
        rng.next_below(static_cast<std::uint32_t>(spec.graph.vertex_count())));
    const double p1 = activation_probability(spec, a, i, beta);
    ActionProfile next = a;
    next.set(i, rng.next_double() < p1);
    return next;
}

TrajectoryStats simulate(const GameSpec& spec, const LLLConfig& cfg) {
    require_beta(cfg.beta);
    if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (cfg.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (cfg.initial_profile) require_profile(spec, *cfg.initial_profile);
    const std::int64_t burn =
        cfg.burn_in ? *cfg.burn_in : default_burn_in(cfg.steps);
    if (burn < 0 || burn >= cfg.steps)
        throw std::invalid_argument("burn_in must lie in [0, steps)");

    const int n = spec.graph.vertex_count();
    const double k = spec.graph.degree();
    const double cost = k * spec.theta / n;  // utility of playing 1 is s/k - cost

    // The optimum is a consensus profile picked by the side of the threshold;
    // at the degenerate tie both consensus profiles count as optimal.
    const bool degenerate = is_degenerate_theta(spec);
    const bool zeros_optimal = spec.theta > theta_threshold(spec);
    auto at_optimum = [&](const ActionProfile& a) {
        const int m = a.ones_count();
        if (degenerate) return m == 0 || m == n;
        return zeros_optimal ? m == 0 : m == n;
    };

    TrajectoryStats stats;
    if (n <= 16) stats.empirical_distribution.assign(std::size_t{1} << n, 0);
    std::int64_t hits = 0;
    ActionProfile state;
    for (int r = 0; r < cfg.replicas; ++r) {
        SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        state = cfg.initial_profile ? *cfg.initial_profile : random_profile(n, rng);
        for (std::int64_t t = 1; t <= cfg.steps; ++t) {
            const int i = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
            int active = 0;
            for (int j : spec.graph.neighbors(i)) active += state.get(j);
            const double p1 = logistic(cfg.beta * (active / k - cost));
            state.set(i, rng.next_double() < p1);
            if (t > burn) {
                if (at_optimum(state)) ++hits;
                if (n <= 16) ++stats.empirical_distribution[state.to_word()];
            }
        }
    }
    const std::int64_t counted = static_cast<std::int64_t>(cfg.replicas) * (cfg.steps - burn);
    stats.visit_fraction_at_astar = static_cast<double>(hits) / counted;
    stats.final_profile = state;
    return stats;
}

GibbsTable gibbs_exact(const GameSpec& spec, double beta) {
    require_beta(beta);
    const int n = spec.graph.vertex_count();
    const int k = spec.graph.degree();
    require_enumerable(n);

    const ProfileHistogram hist = profile_histogram(spec.graph);
    const GibbsSummary s = summarize(hist, spec.theta, beta);

    GibbsTable table;
    table.beta = beta;
    table.log_partition = s.log_partition;
    table.consensus_mass_0 = s.mass0;
    table.consensus_mass_1 = s.mass1;
    table.expected_potential = s.expected_potential;
    if (n <= 16) {
        table.state_mass.assign(std::size_t{1} << n, 0.0);
        const auto masks = neighbor_masks32(spec.graph);
        const int nblocks = profile_block_count(n);
        run_blocks(nblocks, [&](int block) {
            auto fill = [&](std::uint32_t state, int m, int q) {
                table.state_mass[state] =
                    std::exp(beta * shifted_potential(n, k, spec.theta, m, q) -
                             s.log_partition);
            };
            scan_profile_block(
                masks, block, nblocks,
                [&](std::uint32_t state, int m, int q) { fill(state, m, q); },
                [&](std::uint32_t state, int, int m, int q) { fill(state, m, q); });
        });
    }
    return table;
}

OptimalMass optimal_consensus_mass(int n, int k, double theta, double beta) {
    const GameSpec spec{generate_circulant(n, k), theta};
    const GibbsTable table = gibbs_exact(spec, beta);
    OptimalMass result;
    result.degenerate = is_degenerate_theta(spec);
    if (result.degenerate)
        result.mass = table.consensus_mass_0 + table.consensus_mass_1;
    else
        result.mass = theta > theta_threshold(spec) ? table.consensus_mass_0
                                                    : table.consensus_mass_1;
    return result;
}

double beta_min(const GameSpec& spec, double delta) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (is_degenerate_theta(spec))
        throw DegenerateTheta(
            "theta equals n/(2k): stationary mass splits between both consensus profiles");
    require_enumerable(spec.graph.vertex_count());

    const ProfileHistogram hist = profile_histogram(spec.graph);
    const bool zeros_optimal = spec.theta > theta_threshold(spec);
    auto mass = [&](double beta) {
        const GibbsSummary s = summarize(hist, spec.theta, beta);
        return zeros_optimal ? s.mass0 : s.mass1;
    };

    const double target = 1.0 - delta;
    if (mass(0.0) >= target) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (mass(hi) < target) {
        lo = hi;
        hi *= 2;
        if (hi > 1e9)
            throw ConvergenceFailure("no beta below 1e9 reaches the requested mass");
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) >= target ? hi : lo) = mid;
    }
    return hi;
}

double log_gibbs_lower_bound(int n, int k, double theta, double beta) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be positive");
    require_beta(beta);
    const double phi_star = std::max(0.0, n / 2.0 - k * theta);
    // log of the denominator (e^{beta/2} + e^{beta*k*theta/n})^n, evaluated
    // from the larger exponent.
    const double x = beta / 2;
    const double y = beta * k * theta / n;
    const double log_denominator = std::max(x, y) + std::log1p(std::exp(-std::abs(x - y)));
    return beta * phi_star + beta * k * theta - n * log_denominator;
}

double gibbs_lower_bound(int n, int k, double theta, double beta) {
    return std::exp(log_gibbs_lower_bound(n, k, theta, beta));
}

double beta_bound_closed_form(int n, int k, double theta, double delta) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be positive");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (std::abs(theta - n / (2.0 * k)) <= 1e-12)
        throw DegenerateTheta("theta equals n/(2k): no finite beta concentrates the mass");
    const double x = std::log1p(-delta) / n;  // log(1-delta)/n, negative
    const double rhs = (x - std::log(-std::expm1(x))) / std::abs(k * theta / n - 0.5);
    // The formula is negative exactly when the uniform law already holds
    // 1 - delta; beta is constrained nonnegative.
    return std::max(0.0, rhs);
}

double expected_potential(const GameSpec& spec, double beta) {
    require_beta(beta);
    require_enumerable(spec.graph.vertex_count());
    return summarize(profile_histogram(spec.graph), spec.theta, beta).expected_potential;
}

Eigen::MatrixXd transition_matrix(const GameSpec& spec, double beta) {
    require_beta(beta);
    const int n = spec.graph.vertex_count();
    if (n > 10) throw TooLarge("transition matrix needs 4^n entries; requires n <= 10");
    const int states = 1 << n;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(states, states);
    for (int s = 0; s < states; ++s) {
        const ActionProfile a =
            ActionProfile::from_word(static_cast<std::uint64_t>(s), n);
        for (int i = 0; i < n; ++i) {
            const double p1 = activation_probability(spec, a, i, beta);
            const int with_i = s | (1 << i);
            const int without_i = s & ~(1 << i);
            p(s, with_i) += p1 / n;
            p(s, without_i) += (1.0 - p1) / n;
        }
    }
    return p;
}

}  // namespace coordlab
