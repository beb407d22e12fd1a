#pragma once

#include <utility>
#include <vector>

#include "coordlab/action_profile.hpp"
#include "coordlab/graph.hpp"

namespace coordlab {

// A networked coordination game: a regular interaction graph plus the task
// difficulty theta. Everything below is a pure function of (spec, profile).
struct GameSpec {
    Graph graph;
    double theta;
};

// Payoffs of the two sides of one edge game.
struct BimatrixOutcome {
    double payoff_i = 0.0;
    double payoff_j = 0.0;
};

// One-sided edge payoff a_i * (a_j / k - theta / n).
double pairwise_payoff(const GameSpec& spec, int a_i, int a_j);

// Both sides of the edge game between i and j.
BimatrixOutcome bimatrix_outcome(const GameSpec& spec, int a_i, int a_j);

// Symmetric edge potential a_i * a_j / k + (1 - a_i - a_j) * theta / n.
// Summing it over all ordered neighbor pairs and halving gives potential().
double pairwise_potential(const GameSpec& spec, int a_i, int a_j);

// Total payoff of agent i: a_i * ((1/k) * sum_{j in N_i} a_j - k*theta/n).
double utility(const GameSpec& spec, const ActionProfile& a, int i);

// Pure Nash equilibria of the two-player edge game for agents of the given
// degrees, as (a_i, a_j) pairs. With M = n / max(deg_i, deg_j): {(0,0)} when
// theta > M, {(0,0),(1,1)} when 0 <= theta <= M, {(1,1)} when theta < 0.
std::vector<std::pair<int, int>> bimatrix_nash_set(const GameSpec& spec, int deg_i,
                                                   int deg_j);

// Exact potential theta*k/2 - (theta*k/n) * ||a||_1 + a'Aa / (2k). Unilateral
// differences of this function equal the deviating agent's utility change.
double potential(const GameSpec& spec, const ActionProfile& a);

// potential() minus its constant term theta*k/2, computed directly:
// -(k*theta/n) * ||a||_1 + a'Aa / (2k).
double normalized_potential(const GameSpec& spec, const ActionProfile& a);

// Flips agent i's action and returns (utility change, potential change), each
// evaluated through its own definition. The two must agree to ~1e-12.
std::pair<double, double> potential_difference_check(const GameSpec& spec,
                                                     const ActionProfile& a, int i);

// The theta value n/(2k) at which the two consensus profiles tie in potential.
double theta_threshold(const GameSpec& spec);

// True when theta is within 1e-12 of theta_threshold(spec); several analyses
// are undefined at the tie and raise DegenerateTheta instead.
bool is_degenerate_theta(const GameSpec& spec);

}  // namespace coordlab
