#include "coordlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

namespace coordlab {

namespace {

std::string pair_str(int n, int k) {
    return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
}

// Circular offset of an edge on n vertices, in 1..n/2.
int edge_offset(int n, int i, int j) {
    int d = (j - i) % n;
    if (d < 0) d += n;
    return std::min(d, n - d);
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    for (auto& [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw VertexOutOfRange("edge endpoint outside [0, n)");
        if (i == j) throw std::invalid_argument("self-loops are not allowed");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adjacency_.assign(n, {});
    for (const auto& [i, j] : edges_) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    k_ = static_cast<int>(adjacency_[0].size());
    for (const auto& nbrs : adjacency_)
        if (static_cast<int>(nbrs.size()) != k_)
            throw std::invalid_argument("graph is not regular");

    if (n_ <= 64) {
        masks_.assign(n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j : adjacency_[i]) masks_[i] |= std::uint64_t{1} << j;
    }
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [i, j] : edges_) {
        m(i, j) = 1.0;
        m(j, i) = 1.0;
    }
    return m;
}

Graph generate_circulant(int n, int k) {
    if (k < 2 || k > n - 1)
        throw InfeasibleDegree("no regular graph " + pair_str(n, k) +
                               ": k must lie in {2,...,n-1}");
    if ((static_cast<std::int64_t>(n) * k) % 2 != 0)
        throw InfeasibleDegree("no regular graph " + pair_str(n, k) +
                               ": n*k must be even");

    std::vector<Graph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * k / 2);
    for (int d = 1; d <= k / 2; ++d)
        for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + d) % n);
    if (k % 2 == 1)
        for (int i = 0; i < n / 2; ++i) edges.emplace_back(i, i + n / 2);
    return Graph(n, std::move(edges));
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                frontier.push(w);
            }
        }
    }
    return reached == n;
}

namespace {

// Offsets whose full circular orbit is present in g, or nullopt if the edge
// set is not a union of complete offset orbits.
std::optional<std::set<int>> circulant_offsets(const Graph& g) {
    const int n = g.vertex_count();
    std::set<int> present;
    for (const auto& [i, j] : g.edges()) present.insert(edge_offset(n, i, j));
    std::size_t expected = 0;
    for (int d : present) expected += (2 * d == n) ? n / 2 : n;
    if (expected != static_cast<std::size_t>(g.edge_count())) return std::nullopt;
    // Orbit edge counts match; confirm each orbit is fully present.
    std::set<Graph::Edge> edge_set(g.edges().begin(), g.edges().end());
    for (int d : present) {
        for (int i = 0; i < n; ++i) {
            int j = (i + d) % n;
            auto e = std::minmax(i, j);
            if (!edge_set.count({e.first, e.second})) return std::nullopt;
        }
    }
    return present;
}

// Alternate edges of the offset-d orbit, one matching edge per vertex.
// Requires every cycle of the orbit (length n/gcd(n,d)) to be even.
std::vector<Graph::Edge> alternating_matching(int n, int d) {
    std::vector<Graph::Edge> matching;
    const int g = std::gcd(n, d);
    for (int start = 0; start < g; ++start) {
        for (int step = 0; step < n / g; step += 2) {
            int a = (start + step * d) % n;
            int b = (a + d) % n;
            matching.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    return matching;
}

}  // namespace

Graph augment_degree(const Graph& g) {
    const int n = g.vertex_count();
    const int k = g.degree();
    const int target = (n % 2 == 0) ? k + 1 : k + 2;
    if (target > n - 1)
        throw DegreeSaturated("cannot augment " + pair_str(n, k) +
                              ": degree " + std::to_string(target) +
                              " exceeds n-1");

    auto offsets = circulant_offsets(g);
    if (!offsets)
        throw AugmentationNotFound(
            "augmentation is only supported for offset-structured graphs");

    std::vector<Graph::Edge> edges = g.edges();
    if (n % 2 == 0) {
        if (!offsets->count(n / 2)) {
            // Antipodal offset is a perfect matching.
            for (int i = 0; i < n / 2; ++i) edges.emplace_back(i, i + n / 2);
            return Graph(n, std::move(edges));
        }
        // Antipodal taken: split an unused offset's orbit into alternate edges.
        for (int d = 1; d < n / 2; ++d) {
            if (offsets->count(d)) continue;
            if ((n / std::gcd(n, d)) % 2 != 0) continue;
            auto matching = alternating_matching(n, d);
            edges.insert(edges.end(), matching.begin(), matching.end());
            return Graph(n, std::move(edges));
        }
        throw AugmentationNotFound("complement of " + pair_str(n, k) +
                                   " has no perfect matching among offset orbits");
    }
    // Odd n: any unused offset orbit is a 2-regular subgraph.
    for (int d = 1; d <= (n - 1) / 2; ++d) {
        if (offsets->count(d)) continue;
        for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + d) % n);
        return Graph(n, std::move(edges));
    }
    throw AugmentationNotFound("no unused offset available for " + pair_str(n, k));
}

Spectrum spectrum(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd m = g.adjacency_matrix();

    constexpr double kOffNormTol = 1e-9;
    const std::int64_t rotation_cap = 100LL * n * n;
    std::int64_t rotations = 0;

    auto off_norm = [&] {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * m(p, q) * m(p, q);
        return std::sqrt(s);
    };

    while (off_norm() > kOffNormTol) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                if (++rotations > rotation_cap)
                    throw ConvergenceFailure(
                        "Jacobi eigensolver exceeded rotation cap");
                const double tau = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int r = 0; r < n; ++r) {
                    const double mrp = m(r, p), mrq = m(r, q);
                    m(r, p) = c * mrp - s * mrq;
                    m(r, q) = s * mrp + c * mrq;
                }
                for (int r = 0; r < n; ++r) {
                    const double mpr = m(p, r), mqr = m(q, r);
                    m(p, r) = c * mpr - s * mqr;
                    m(q, r) = s * mpr + c * mqr;
                }
            }
        }
    }

    Spectrum spec;
    spec.eigenvalues = m.diagonal();
    std::sort(spec.eigenvalues.data(), spec.eigenvalues.data() + n,
              std::greater<double>());
    constexpr double kTieTol = 1e-6;
    spec.multiplicity_of_top = 0;
    for (int i = 0; i < n; ++i)
        if (spec.eigenvalues(0) - spec.eigenvalues(i) <= kTieTol)
            ++spec.multiplicity_of_top;
    return spec;
}

double quadratic_form(const Graph& g, const ActionProfile& a) {
    if (a.size() != g.vertex_count())
        throw DimensionMismatch("profile length " + std::to_string(a.size()) +
                                " != vertex count " +
                                std::to_string(g.vertex_count()));
    std::int64_t sum = 0;
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (!a.get(i)) continue;
        for (int j : g.neighbors(i)) sum += a.get(j);
    }
    return static_cast<double>(sum);
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
    return {{"n", g.vertex_count()}, {"k", g.degree()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    std::vector<Graph::Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g(n, std::move(edges));
    if (g.degree() != k)
        throw std::invalid_argument("graph file degree field does not match edges");
    return g;
}

}  // namespace coordlab
