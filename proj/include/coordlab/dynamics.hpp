#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "coordlab/action_profile.hpp"
#include "coordlab/game.hpp"
#include "coordlab/rng.hpp"

namespace coordlab {

// Configuration of an asynchronous softmax-revision run.
struct LLLConfig {
    double beta = 1.0;           // rationality (softmax sharpness), >= 0
    std::int64_t steps = 1;      // revisions per replica
    std::uint64_t seed = 0;      // master seed; replica r uses mix_seed(seed, r)
    int replicas = 1;            // independent chains
    std::optional<ActionProfile> initial_profile;  // default: uniform random
    // Samples from the first burn_in revisions are discarded. Default:
    // max(steps/100, 10^4), clamped to steps - 1.
    std::optional<std::int64_t> burn_in;
};

// Exact stationary summary of the revision chain at one beta. All masses come
// from the shifted potential (the constant term cancels in the ratio).
struct GibbsTable {
    double beta = 0.0;
    double log_partition = 0.0;     // log sum_a exp(beta * shifted potential)
    double consensus_mass_0 = 0.0;  // stationary mass of the all-zeros profile
    double consensus_mass_1 = 0.0;  // stationary mass of the all-ones profile
    double expected_potential = 0.0;  // stationary mean of the shifted potential
    std::vector<double> state_mass;   // per-state mass by bit word; only n <= 16
};

// Occupancy statistics of simulated runs, aggregated over replicas.
struct TrajectoryStats {
    double visit_fraction_at_astar = 0.0;  // post burn-in fraction at the optimum
    ActionProfile final_profile;           // end state of the last replica
    std::vector<std::int64_t> empirical_distribution;  // post burn-in counts; n <= 16
};

// Mass of the optimal consensus profile. When theta sits exactly on the
// threshold n/(2k) the two consensus profiles tie; the degenerate flag is set
// and `mass` holds their combined weight.
struct OptimalMass {
    double mass = 0.0;
    bool degenerate = false;
};

// Burn-in used by simulate() when LLLConfig.burn_in is unset:
// max(steps/100, 10^4), clamped to steps - 1.
std::int64_t default_burn_in(std::int64_t steps);

// Probability that a revising agent i picks action 1: the two-point softmax
// over logits {0, beta * utility of playing 1}, evaluated from the
// non-overflowing side.
double activation_probability(const GameSpec& spec, const ActionProfile& a, int i,
                              double beta);

// One asynchronous revision: picks an agent uniformly (one next_below draw),
// then samples its action from the softmax (one next_double draw).
ActionProfile lll_step(const GameSpec& spec, const ActionProfile& a, double beta,
                       SplitMix64& rng);

// Runs cfg.replicas independent chains of cfg.steps revisions each.
// Bit-reproducible for a fixed config: replica r is seeded with
// mix_seed(cfg.seed, r) and consumes one u64 per 64 vertices for the random
// initial profile, then exactly two draws per revision.
TrajectoryStats simulate(const GameSpec& spec, const LLLConfig& cfg);

// Exact stationary distribution summary by exhaustive enumeration (n <= 24).
// The per-state table is filled only for n <= 16.
GibbsTable gibbs_exact(const GameSpec& spec, double beta);

// Stationary mass of the optimal consensus profile on the canonical circulant
// (n, k) graph.
OptimalMass optimal_consensus_mass(int n, int k, double theta, double beta);

// Smallest beta whose stationary mass on the optimal consensus reaches
// 1 - delta, by bisection to absolute width 1e-6 (the returned value is the
// feasible endpoint). Throws DegenerateTheta at theta = n/(2k).
double beta_min(const GameSpec& spec, double delta);

// Closed-form lower bound on the optimal-consensus mass:
// exp(beta * phi*) * exp(beta*k*theta) / (exp(beta/2) + exp(beta*k*theta/n))^n
// with phi* = max(0, n/2 - k*theta). Exact at beta = 0.
double gibbs_lower_bound(int n, int k, double theta, double beta);
double log_gibbs_lower_bound(int n, int k, double theta, double beta);

// Closed-form beta sufficient for the optimal-consensus mass to reach
// 1 - delta: (log(1-delta)/n - log(1 - e^{log(1-delta)/n})) / |k*theta/n - 1/2|,
// clamped at 0 (the formula goes negative exactly when the uniform law already
// meets the target). Throws DegenerateTheta at theta = n/(2k).
double beta_bound_closed_form(int n, int k, double theta, double delta);

// Stationary mean of the shifted potential; diagnostic only.
double expected_potential(const GameSpec& spec, double beta);

// Explicit 2^n x 2^n single-revision transition matrix (row = current state's
// bit word). Dense storage; guarded at n <= 10.
Eigen::MatrixXd transition_matrix(const GameSpec& spec, double beta);

}  // namespace coordlab
