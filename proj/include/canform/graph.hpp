#pragma once

#include "canform/polymatrix.hpp"

#include <utility>
#include <vector>

namespace canform {

// Connected multigraph. Vertices are 0-based; edges carry an orientation
// (tail, head) and are numbered 1..|E| in list order, matching the edge
// variables x1..xE. Self-loops are representable but rejected by the
// Laplacian pipeline.
class Graph {
public:
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return vertices_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    // h_G = |E| - |V| + 1
    int loop_number() const { return edge_count() - vertices_ + 1; }
    bool has_self_loop() const;

    // {"vertices": N, "edges": [[u,v],...], "tree": [edge indices]}
    // Vertices 0-based, tree edges 1-based. "tree" is optional on input.
    static Graph from_json(const std::string& text, std::vector<int>* tree_out = nullptr);
    std::string to_json(const std::vector<int>* tree = nullptr) const;

private:
    int vertices_;
    std::vector<std::pair<int, int>> edges_;
};

// h_G independent cycles as vectors over the edge set, entries in {-1,0,1}
// for the tree-based construction. Cycle i contains its defining non-tree
// edge with coefficient +1.
struct CycleBasis {
    std::vector<std::vector<int>> cycles;
    // 1-based edge index of the non-tree edge defining each cycle.
    std::vector<int> nontree_edges;
};

// Fundamental cycles of a spanning tree (edge indices 1-based, ascending
// non-tree edge order). Throws on non-spanning or cyclic input.
CycleBasis cycle_basis_from_tree(const Graph& g, const std::vector<int>& tree_edges1);

// Symmetric h x h matrix of linear forms: entry (i,j) = sum_e c_i[e] c_j[e] x_e.
struct LaplacianMatrix {
    PolyMatrix mat;
    CycleBasis basis;
    VarTablePtr vars;  // x1..xE

    // Affine chart: substitute x_edge = value entry-wise.
    PolyMatrix chart(int edge1, const Rational& value) const;
};

LaplacianMatrix laplacian(const Graph& g, const CycleBasis& basis);

// Psi_G = det Lambda_G, the spanning-tree (first Symanzik) polynomial.
MultiPoly graph_polynomial(const Graph& g, const CycleBasis& basis);

// Brute-force spanning-tree enumeration (the matrix-tree oracle):
// sum over spanning trees T' of prod_{e not in T'} x_e.
MultiPoly matrix_tree_polynomial(const Graph& g);
std::vector<std::vector<int>> spanning_trees(const Graph& g);

// Wheel with n spokes, canonical labeling: rim edges 1..n anticlockwise,
// spokes n+1..2n oriented inwards, spoke n+i attached at the vertex shared
// by rim edges i and i+1 (mod n). Basis cycles are the positively oriented
// triangles c_1 = e_1 + e_{n+1} - e_{2n}, c_i = e_i + e_{n+i} - e_{n+i-1}.
struct WheelData {
    Graph graph;
    std::vector<int> spokes;  // the spanning tree, edge indices n+1..2n
    CycleBasis basis;
};

WheelData wheel(int n);

// Parse "wheel:n" or a JSON file path into a graph plus tree.
struct GraphSource {
    Graph graph;
    std::vector<int> tree;
};
GraphSource load_graph_source(const std::string& spec);

}  // namespace canform
