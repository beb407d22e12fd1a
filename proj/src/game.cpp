#include "coordlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coordlab {

namespace {

void require_bit(int a, const char* name) {
    if (a != 0 && a != 1)
        throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

void require_profile(const GameSpec& spec, const ActionProfile& a) {
    if (a.size() != spec.graph.vertex_count())
        throw DimensionMismatch("profile length does not match vertex count");
}

void require_vertex(const GameSpec& spec, int i) {
    if (i < 0 || i >= spec.graph.vertex_count())
        throw VertexOutOfRange("vertex index out of range");
}

}  // namespace

double pairwise_payoff(const GameSpec& spec, int a_i, int a_j) {
    require_bit(a_i, "a_i");
    require_bit(a_j, "a_j");
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    return a_i * (a_j / k - spec.theta / n);
}

BimatrixOutcome bimatrix_outcome(const GameSpec& spec, int a_i, int a_j) {
    return {pairwise_payoff(spec, a_i, a_j), pairwise_payoff(spec, a_j, a_i)};
}

double pairwise_potential(const GameSpec& spec, int a_i, int a_j) {
    require_bit(a_i, "a_i");
    require_bit(a_j, "a_j");
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    return static_cast<double>(a_i) * a_j / k + (1 - a_i - a_j) * spec.theta / n;
}

double utility(const GameSpec& spec, const ActionProfile& a, int i) {
    require_vertex(spec, i);
    require_profile(spec, a);
    if (!a.get(i)) return 0.0;
    int active = 0;
    for (int j : spec.graph.neighbors(i)) active += a.get(j);
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    return active / k - k * spec.theta / n;
}

std::vector<std::pair<int, int>> bimatrix_nash_set(const GameSpec& spec, int deg_i,
                                                   int deg_j) {
    if (deg_i < 1 || deg_j < 1) throw std::invalid_argument("degrees must be >= 1");
    const double m = static_cast<double>(spec.graph.vertex_count()) / std::max(deg_i, deg_j);
    std::vector<std::pair<int, int>> nash;
    if (spec.theta >= 0) nash.emplace_back(0, 0);
    if (spec.theta <= m) nash.emplace_back(1, 1);
    return nash;
}

double potential(const GameSpec& spec, const ActionProfile& a) {
    require_profile(spec, a);
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    const double q = quadratic_form(spec.graph, a);
    return spec.theta * k / 2 - spec.theta * k / n * a.ones_count() + q / (2 * k);
}

double normalized_potential(const GameSpec& spec, const ActionProfile& a) {
    require_profile(spec, a);
    const double k = spec.graph.degree();
    const double n = spec.graph.vertex_count();
    const double q = quadratic_form(spec.graph, a);
    return -(k * spec.theta / n) * a.ones_count() + q / (2 * k);
}

double theta_threshold(const GameSpec& spec) {
    return spec.graph.vertex_count() / (2.0 * spec.graph.degree());
}

bool is_degenerate_theta(const GameSpec& spec) {
    return std::abs(spec.theta - theta_threshold(spec)) <= 1e-12;
}

std::pair<double, double> potential_difference_check(const GameSpec& spec,
                                                     const ActionProfile& a, int i) {
    require_vertex(spec, i);
    require_profile(spec, a);
    ActionProfile flipped = a;
    flipped.flip(i);
    const double du = utility(spec, flipped, i) - utility(spec, a, i);
    const double dphi = potential(spec, flipped) - potential(spec, a);
    return {du, dphi};
}

}  // namespace coordlab
