#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "coordlab/graph.hpp"
#include "coordlab/rng.hpp"

using namespace coordlab;

namespace {

// Eigenvalues of a circulant graph by the analytic cosine-sum formula; an
// oracle independent of the Jacobi solver.
std::vector<double> circulant_eigenvalues(int n, int k) {
    std::vector<double> values(n);
    for (int j = 0; j < n; ++j) {
        double v = 0;
        for (int d = 1; d <= k / 2; ++d) v += 2 * std::cos(2 * M_PI * j * d / n);
        if (k % 2 == 1) v += std::cos(M_PI * j);  // antipodal offset contributes (-1)^j
        values[j] = v;
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

Graph two_triangles() {
    return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

const std::vector<std::pair<int, int>> kCirculantPool = {
    {4, 2}, {5, 2}, {6, 3}, {7, 4},  {8, 3},  {8, 5},  {9, 4},
    {10, 3}, {10, 5}, {11, 6}, {12, 4}, {12, 7}, {16, 5}, {14, 9}};

}  // namespace

TEST_CASE("circulant generation produces the expected 4-cycle") {
    Graph g = generate_circulant(4, 2);
    CHECK(g.vertex_count() == 4);
    CHECK(g.degree() == 2);
    std::vector<Graph::Edge> expected = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    CHECK(g.edges() == expected);
}

TEST_CASE("circulant generation rejects infeasible (n, k)") {
    CHECK_THROWS_AS(generate_circulant(5, 3), InfeasibleDegree);  // odd * odd
    CHECK_THROWS_AS(generate_circulant(7, 3), InfeasibleDegree);
    CHECK_THROWS_AS(generate_circulant(4, 1), InfeasibleDegree);  // k < 2
    CHECK_THROWS_AS(generate_circulant(4, 4), InfeasibleDegree);  // k > n-1
    CHECK_THROWS_AS(generate_circulant(6, 0), InfeasibleDegree);
}

TEST_CASE("circulant (20, 10) is 10-regular with 100 edges and connected") {
    Graph g = generate_circulant(20, 10);
    CHECK(g.edge_count() == 100);
    for (int i = 0; i < 20; ++i) CHECK(g.neighbors(i).size() == 10);
    CHECK(is_connected(g));
}

TEST_CASE("generated graphs satisfy the structural invariants") {
    for (auto [n, k] : kCirculantPool) {
        Graph g = generate_circulant(n, k);
        INFO("n=", n, " k=", k);
        CHECK(g.edge_count() == static_cast<std::int64_t>(n) * k / 2);
        std::int64_t degree_sum = 0;
        for (int i = 0; i < n; ++i) {
            degree_sum += static_cast<std::int64_t>(g.neighbors(i).size());
            for (int j : g.neighbors(i)) {
                CHECK(j != i);  // no self-loops
                const auto& back = g.neighbors(j);
                CHECK(std::find(back.begin(), back.end(), i) != back.end());  // symmetric
            }
        }
        CHECK(degree_sum == static_cast<std::int64_t>(n) * k);
        CHECK(is_connected(g));
    }
}

TEST_CASE("graph constructor validates its input") {
    CHECK_THROWS_AS(Graph(1, {}), std::invalid_argument);               // n < 2
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), VertexOutOfRange);              // endpoint >= n
    CHECK_THROWS_AS(Graph(3, {{-1, 2}}), VertexOutOfRange);
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);         // self-loop
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 2}}), std::invalid_argument); // not regular
    // Orientation and duplicates are normalized away.
    Graph g(3, {{1, 0}, {0, 1}, {1, 2}, {0, 2}});
    CHECK(g.edge_count() == 3);
    CHECK(g.degree() == 2);
}

TEST_CASE("connectivity detection") {
    CHECK(is_connected(generate_circulant(4, 2)));
    CHECK_FALSE(is_connected(two_triangles()));
}

TEST_CASE("spectrum of the 4-cycle and of the complete graph") {
    Spectrum s4 = spectrum(generate_circulant(4, 2));
    const double expected4[] = {2, 0, 0, -2};
    for (int i = 0; i < 4; ++i) CHECK(s4.eigenvalues(i) == doctest::Approx(expected4[i]).epsilon(1e-9));
    CHECK(s4.multiplicity_of_top == 1);

    Spectrum k4 = spectrum(generate_circulant(4, 3));
    const double expectedK4[] = {3, -1, -1, -1};
    for (int i = 0; i < 4; ++i) CHECK(k4.eigenvalues(i) == doctest::Approx(expectedK4[i]).epsilon(1e-9));
    CHECK(k4.multiplicity_of_top == 1);
}

TEST_CASE("spectrum matches the analytic circulant eigenvalues") {
    for (auto [n, k] : kCirculantPool) {
        Spectrum s = spectrum(generate_circulant(n, k));
        const auto expected = circulant_eigenvalues(n, k);
        INFO("n=", n, " k=", k);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(s.eigenvalues(j) - expected[j]) <= 1e-7);
    }
}

TEST_CASE("spectral properties of regular graphs") {
    for (auto [n, k] : kCirculantPool) {
        Spectrum s = spectrum(generate_circulant(n, k));
        INFO("n=", n, " k=", k);
        CHECK(s.eigenvalues(0) >= k - 1e-7);
        CHECK(s.eigenvalues(0) <= k + 1e-7);
        for (int j = 0; j < n; ++j) CHECK(std::abs(s.eigenvalues(j)) <= k + 1e-7);
        CHECK(s.multiplicity_of_top == 1);  // all pool graphs are connected
        // Eigenvalues come out sorted descending.
        for (int j = 1; j < n; ++j) CHECK(s.eigenvalues(j - 1) >= s.eigenvalues(j));
    }
    // A disconnected regular graph has a repeated top eigenvalue.
    Spectrum s = spectrum(two_triangles());
    CHECK(s.eigenvalues(0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.multiplicity_of_top == 2);
}

TEST_CASE("quadratic form on hand-checked profiles") {
    Graph c4 = generate_circulant(4, 2);
    CHECK(quadratic_form(c4, ActionProfile::zeros(4)) == 0.0);
    CHECK(quadratic_form(c4, ActionProfile::ones(4)) == 8.0);  // n*k
    // One active edge, counted from both endpoints.
    CHECK(quadratic_form(c4, ActionProfile::from_bits("1100")) == 2.0);
    CHECK_THROWS_AS(quadratic_form(c4, ActionProfile::zeros(5)), DimensionMismatch);
}

TEST_CASE("quadratic form agrees with dense a'Aa and obeys the degree cap") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [n, k] = kCirculantPool[rng.next_below(kCirculantPool.size())];
        Graph g = generate_circulant(n, k);
        ActionProfile a = ActionProfile::from_word(
            rng.next_u64() & ((std::uint64_t{1} << n) - 1), n);
        const double q = quadratic_form(g, a);

        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = a.get(i) ? 1.0 : 0.0;
        const double dense = x.transpose() * g.adjacency_matrix() * x;
        CHECK(q == doctest::Approx(dense).epsilon(1e-12));
        CHECK(std::fmod(q, 2.0) == 0.0);
        CHECK(q >= 0.0);
        CHECK(q <= static_cast<double>(a.ones_count()) * k);
    }
}

TEST_CASE("neighbor masks mirror the adjacency lists") {
    Graph g = generate_circulant(10, 5);
    for (int i = 0; i < 10; ++i) {
        std::uint64_t mask = 0;
        for (int j : g.neighbors(i)) mask |= std::uint64_t{1} << j;
        CHECK(g.neighbor_mask(i) == mask);
    }
}

TEST_CASE("degree augmentation on even n adds a perfect matching") {
    // 4-cycle -> K4, the unique 3-regular graph on four vertices.
    Graph k4 = augment_degree(generate_circulant(4, 2));
    std::vector<Graph::Edge> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(k4.edges() == expected);

    // Antipodal matching on a larger cycle.
    Graph g = augment_degree(generate_circulant(20, 2));
    CHECK(g.degree() == 3);
    CHECK(is_connected(g));
    const auto& edges = g.edges();
    auto has_edge = [&](int a, int b) {
        return std::find(edges.begin(), edges.end(),
                         Graph::Edge{std::min(a, b), std::max(a, b)}) != edges.end();
    };
    const auto original = generate_circulant(20, 2).edges();
    for (const auto& e : original)
        CHECK(has_edge(e.first, e.second));  // contains the original edges
    for (int i = 0; i < 10; ++i) CHECK(has_edge(i, i + 10));
}

TEST_CASE("degree augmentation on odd n adds a 2-regular offset orbit") {
    Graph g = augment_degree(generate_circulant(9, 4));
    CHECK(g.degree() == 6);
    CHECK(is_connected(g));
    const auto original = generate_circulant(9, 4).edges();
    for (const auto& e : original) {
        const auto& edges = g.edges();
        CHECK(std::find(edges.begin(), edges.end(), e) != edges.end());
    }
    // 5-cycle -> K5, the unique 4-regular graph on five vertices.
    Graph k5 = augment_degree(generate_circulant(5, 2));
    CHECK(k5.degree() == 4);
    CHECK(k5.edge_count() == 10);
}

TEST_CASE("degree augmentation splits an even offset orbit when needed") {
    // circulant(12, 5) already uses the antipodal offset; the fallback splits
    // an unused offset orbit with even cycles into an alternating matching.
    Graph g = augment_degree(generate_circulant(12, 5));
    CHECK(g.degree() == 6);
    CHECK(is_connected(g));
    const auto original = generate_circulant(12, 5).edges();
    for (const auto& e : original) {
        const auto& edges = g.edges();
        CHECK(std::find(edges.begin(), edges.end(), e) != edges.end());
    }
}

TEST_CASE("degree augmentation failure modes") {
    // Already complete: degree cannot grow past n-1.
    CHECK_THROWS_AS(augment_degree(generate_circulant(4, 3)), DegreeSaturated);
    CHECK_THROWS_AS(augment_degree(generate_circulant(5, 4)), DegreeSaturated);
    // circulant(6, 3): the complement is two disjoint triangles, which admit
    // no perfect matching, so no 4-regular supergraph exists.
    CHECK_THROWS_AS(augment_degree(generate_circulant(6, 3)), AugmentationNotFound);
    // Not a union of full offset orbits: augmentation is unsupported.
    CHECK_THROWS_AS(augment_degree(two_triangles()), AugmentationNotFound);
}

TEST_CASE("augmented graphs pass all graph invariants") {
    for (auto [n, k] : kCirculantPool) {
        Graph g = generate_circulant(n, k);
        const int target = n % 2 == 0 ? k + 1 : k + 2;
        if (target > n - 1) continue;
        Graph h = [&] {
            try {
                return augment_degree(g);
            } catch (const AugmentationNotFound&) {
                return g;  // legitimately impossible (see circulant(6,3) case)
            }
        }();
        if (h.degree() == k) continue;
        INFO("n=", n, " k=", k);
        CHECK(h.degree() == target);
        CHECK(h.edge_count() == static_cast<std::int64_t>(n) * target / 2);
        CHECK(is_connected(h));
    }
}

TEST_CASE("graph JSON round-trip") {
    Graph g = generate_circulant(10, 5);
    nlohmann::json j = graph_to_json(g);
    CHECK(j["n"] == 10);
    CHECK(j["k"] == 5);
    Graph back = graph_from_json(j);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.degree() == g.degree());
    CHECK(back.edges() == g.edges());
    // Edge list is emitted sorted with i < j.
    const auto& edges = j["edges"];
    for (std::size_t e = 0; e < edges.size(); ++e) {
        CHECK(edges[e][0].get<int>() < edges[e][1].get<int>());
        if (e > 0) {
            const auto prev = std::pair{edges[e - 1][0].get<int>(), edges[e - 1][1].get<int>()};
            const auto cur = std::pair{edges[e][0].get<int>(), edges[e][1].get<int>()};
            CHECK(prev < cur);
        }
    }
}

TEST_CASE("graph JSON rejects inconsistent input") {
    nlohmann::json j = graph_to_json(generate_circulant(6, 2));
    j["k"] = 3;  // contradicts the edge list
    CHECK_THROWS_AS(graph_from_json(j), std::invalid_argument);
    nlohmann::json bad = {{"n", 3}, {"k", 2}, {"edges", {{0, 5}}}};
    CHECK_THROWS_AS(graph_from_json(bad), std::exception);
}
