#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coordlab/action_profile.hpp"
#include "coordlab/game.hpp"

namespace coordlab {

// Brute-force equilibrium analysis of one game instance. Profiles are listed
// in ascending numeric order of their bit words.
struct EquilibriumReport {
    std::vector<ActionProfile> nash_profiles;
    std::vector<ActionProfile> maximizer_profiles;
    double max_potential = 0.0;
    double theta_threshold = 0.0;  // n/(2k), where the two consensus profiles tie
};

// Spectral upper bound on the best potential vs. the exhaustive optimum.
struct RelaxationReport {
    double relaxed_optimum = 0.0;
    double binary_optimum = 0.0;
    double difference = 0.0;  // relaxed_optimum - binary_optimum
    bool exact = false;       // |difference| <= 1e-6
};

// All profiles where no agent can improve its utility by more than 1e-12 with
// a unilateral flip. Exhaustive over 2^n states; throws TooLarge for n > 24.
std::vector<ActionProfile> enumerate_nash(const GameSpec& spec);

// Exact argmax set of the potential (ties within 1e-9) plus the Nash list.
EquilibriumReport enumerate_maximizers(const GameSpec& spec);

// Evaluates theta*k/2 + max(0, lambda_1/(2k) - k*theta/n)*n from the adjacency
// spectrum and compares it against the exhaustive binary optimum. Throws
// Disconnected when the top eigenvalue is not simple.
RelaxationReport verify_relaxation(const GameSpec& spec);

// {"n", "k", "theta", "theta_threshold", "degenerate", "max_potential",
//  "nash": [hex...], "maximizers": [hex...]}
nlohmann::json report_to_json(const GameSpec& spec, const EquilibriumReport& report);

}  // namespace coordlab
