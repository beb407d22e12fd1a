#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "coordlab/action_profile.hpp"
#include "coordlab/errors.hpp"

namespace coordlab {

// Undirected K-regular graph on n vertices. Immutable after construction and
// safe to share across threads; augmentation returns a new graph.
class Graph {
public:
    using Edge = std::pair<int, int>;

    // Validates symmetry, no self-loops and regularity. Edges may be given in
    // any order/orientation; they are stored with i<j, sorted, deduplicated.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int degree() const { return k_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

    const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbor set of i as a bitmask; requires n <= 64.
    std::uint64_t neighbor_mask(int i) const { return masks_[i]; }

    Eigen::MatrixXd adjacency_matrix() const;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Edge> edges_;               // i<j, lexicographically sorted
    std::vector<std::vector<int>> adjacency_;  // sorted neighbor lists
    std::vector<std::uint64_t> masks_;      // filled when n <= 64
};

// Adjacency spectrum: eigenvalues sorted descending and the count of
// eigenvalues within 1e-6 of the top one.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    int multiplicity_of_top = 0;
};

// Canonical circulant k-regular graph on n vertices: offsets {1,...,floor(k/2)}
// plus the antipodal offset n/2 when k is odd. Deterministic for fixed (n, k).
// Throws InfeasibleDegree unless k in {2,...,n-1} and n*k is even.
Graph generate_circulant(int n, int k);

// Returns a regular graph of degree k+1 (even n, adds a perfect matching) or
// k+2 (odd n, adds a 2-regular subgraph) whose edge set contains g's edges.
// Requires g to be offset-structured (a circulant up to missing offsets);
// throws DegreeSaturated past degree n-1, AugmentationNotFound otherwise.
Graph augment_degree(const Graph& g);

// Breadth-first search from vertex 0 reaches all vertices.
bool is_connected(const Graph& g);

// Eigenvalues of the adjacency matrix by cyclic Jacobi rotations, off-diagonal
// Frobenius norm tolerance 1e-9, rotation cap 100*n^2.
Spectrum spectrum(const Graph& g);

// a' A a = sum_i sum_{j in N_i} a_i a_j. Even, and at most ||a||_1 * k.
double quadratic_form(const Graph& g, const ActionProfile& a);

// Graph JSON: {"n": int, "k": int, "edges": [[i,j], ...]} with i<j sorted
// lexicographically.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace coordlab
