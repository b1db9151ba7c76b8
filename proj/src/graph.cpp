#include "canform/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace canform {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertices_(vertex_count), edges_(std::move(edges)) {
    if (vertices_ <= 0) throw std::invalid_argument("Graph: need at least one vertex");
    UnionFind uf(vertices_);
    int components = vertices_;
    for (const auto& [u, v] : edges_) {
        if (u < 0 || u >= vertices_ || v < 0 || v >= vertices_)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (uf.unite(u, v)) --components;
    }
    if (components != 1) throw std::invalid_argument("Graph: not connected");
}

bool Graph::has_self_loop() const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [](const auto& e) { return e.first == e.second; });
}

Graph Graph::from_json(const std::string& text, std::vector<int>* tree_out) {
    nlohmann::json j = nlohmann::json::parse(text);
    int verts = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("Graph::from_json: edges must be [u,v] pairs");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (tree_out) {
        tree_out->clear();
        if (j.contains("tree"))
            for (const auto& t : j["tree"]) tree_out->push_back(t.get<int>());
    }
    return Graph(verts, std::move(edges));
}

std::string Graph::to_json(const std::vector<int>* tree) const {
    nlohmann::json j;
    j["vertices"] = vertices_;
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : edges_) j["edges"].push_back({u, v});
    if (tree) j["tree"] = *tree;
    return j.dump();
}

CycleBasis cycle_basis_from_tree(const Graph& g, const std::vector<int>& tree_edges1) {
    if (g.has_self_loop())
        throw std::invalid_argument("cycle_basis_from_tree: self-loops are not supported");
    const auto& edges = g.edges();
    int E = g.edge_count(), V = g.vertex_count();
    if (static_cast<int>(tree_edges1.size()) != V - 1)
        throw std::invalid_argument("cycle_basis_from_tree: tree must have |V|-1 edges");

    std::vector<bool> in_tree(E + 1, false);
    UnionFind uf(V);
    for (int e : tree_edges1) {
        if (e < 1 || e > E)
            throw std::invalid_argument("cycle_basis_from_tree: bad edge index");
        if (in_tree[e])
            throw std::invalid_argument("cycle_basis_from_tree: repeated tree edge");
        in_tree[e] = true;
        if (!uf.unite(edges[e - 1].first, edges[e - 1].second))
            throw std::invalid_argument("cycle_basis_from_tree: tree edges contain a cycle");
    }

    // adjacency of the tree: vertex -> (neighbor, edge index, direction)
    struct Arc { int to, edge, dir; };
    std::vector<std::vector<Arc>> adj(V);
    for (int e : tree_edges1) {
        auto [u, v] = edges[e - 1];
        adj[u].push_back({v, e, +1});
        adj[v].push_back({u, e, -1});
    }

    CycleBasis basis;
    for (int e = 1; e <= E; ++e) {
        if (in_tree[e]) continue;
        auto [tail, head] = edges[e - 1];
        // path head -> tail through the tree (BFS)
        std::vector<int> prev(V, -1), prev_edge(V, 0), prev_dir(V, 0);
        std::queue<int> q;
        q.push(head);
        prev[head] = head;
        while (!q.empty() && prev[tail] == -1) {
            int u = q.front();
            q.pop();
            for (const Arc& a : adj[u]) {
                if (prev[a.to] != -1) continue;
                prev[a.to] = u;
                prev_edge[a.to] = a.edge;
                prev_dir[a.to] = a.dir;
                q.push(a.to);
            }
        }
        std::vector<int> cyc(E, 0);
        cyc[e - 1] = +1;
        for (int v = tail; v != head; v = prev[v]) {
            // arc prev[v] -> v used edge prev_edge[v] with direction prev_dir[v]
            cyc[prev_edge[v] - 1] += prev_dir[v];
        }
        basis.cycles.push_back(std::move(cyc));
        basis.nontree_edges.push_back(e);
    }
    if (static_cast<int>(basis.cycles.size()) != g.loop_number())
        throw std::logic_error("cycle_basis_from_tree: internal cycle count mismatch");
    return basis;
}

PolyMatrix LaplacianMatrix::chart(int edge1, const Rational& value) const {
    return mat.substituted("x" + std::to_string(edge1), value);
}

LaplacianMatrix laplacian(const Graph& g, const CycleBasis& basis) {
    int E = g.edge_count();
    int h = static_cast<int>(basis.cycles.size());
    std::vector<std::string> names;
    for (int e = 1; e <= E; ++e) names.push_back("x" + std::to_string(e));
    VarTablePtr vars = make_var_table(names);

    PolyMatrix mat(h, h);
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            MultiPoly entry = MultiPoly::zero(vars);
            for (int e = 0; e < E; ++e) {
                int c = basis.cycles[i][e] * basis.cycles[j][e];
                if (c == 0) continue;
                MultiPoly::Exps exps(vars->size(), 0);
                auto it = std::find(vars->begin(), vars->end(), "x" + std::to_string(e + 1));
                exps[static_cast<size_t>(it - vars->begin())] = 1;
                entry += MultiPoly::monomial(vars, std::move(exps), Rational(c));
            }
            mat.at(i, j) = entry;
            if (i != j) mat.at(j, i) = entry;
        }
    return LaplacianMatrix{std::move(mat), basis, vars};
}

MultiPoly graph_polynomial(const Graph& g, const CycleBasis& basis) {
    return poly_det(laplacian(g, basis).mat);
}

std::vector<std::vector<int>> spanning_trees(const Graph& g) {
    int E = g.edge_count(), V = g.vertex_count();
    if (E > 24) throw std::invalid_argument("spanning_trees: graph too large for brute force");
    std::vector<std::vector<int>> trees;
    // enumerate (V-1)-subsets of edges
    std::vector<int> idx(V - 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == V - 1) {
            UnionFind uf(V);
            int merges = 0;
            for (int k : idx)
                if (uf.unite(g.edges()[k].first, g.edges()[k].second)) ++merges;
            if (merges == V - 1) {
                std::vector<int> t;
                for (int k : idx) t.push_back(k + 1);
                trees.push_back(std::move(t));
            }
            return;
        }
        for (int k = start; k < E; ++k) {
            idx[depth] = k;
            rec(k + 1, depth + 1);
        }
    };
    rec(0, 0);
    return trees;
}

MultiPoly matrix_tree_polynomial(const Graph& g) {
    int E = g.edge_count();
    std::vector<std::string> names;
    for (int e = 1; e <= E; ++e) names.push_back("x" + std::to_string(e));
    VarTablePtr vars = make_var_table(names);
    std::vector<size_t> pos(E);
    for (int e = 0; e < E; ++e) {
        auto it = std::find(vars->begin(), vars->end(), "x" + std::to_string(e + 1));
        pos[e] = static_cast<size_t>(it - vars->begin());
    }
    MultiPoly acc = MultiPoly::zero(vars);
    for (const auto& tree : spanning_trees(g)) {
        MultiPoly::Exps exps(vars->size(), 1);
        for (int e : tree) exps[pos[e - 1]] = 0;
        acc += MultiPoly::monomial(vars, std::move(exps), Rational(1));
    }
    return acc;
}

WheelData wheel(int n) {
    if (n < 3) throw std::invalid_argument("wheel: need n >= 3");
    // hub = vertex 0, rim vertices 1..n; rim edge i: i -> i+1 (mod n);
    // spoke n+i attaches at the shared vertex of rim edges i and i+1.
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) edges.emplace_back(i, i % n + 1);
    for (int i = 1; i <= n; ++i) edges.emplace_back(i % n + 1, 0);
    Graph g(n + 1, std::move(edges));

    std::vector<int> spokes;
    for (int i = n + 1; i <= 2 * n; ++i) spokes.push_back(i);
    CycleBasis basis = cycle_basis_from_tree(g, spokes);
    return WheelData{std::move(g), std::move(spokes), std::move(basis)};
}

GraphSource load_graph_source(const std::string& spec) {
    if (spec.rfind("wheel:", 0) == 0) {
        int n = std::stoi(spec.substr(6));
        WheelData w = wheel(n);
        return GraphSource{std::move(w.graph), std::move(w.spokes)};
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("load_graph_source: cannot open " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<int> tree;
    Graph g = Graph::from_json(ss.str(), &tree);
    return GraphSource{std::move(g), std::move(tree)};
}

}  // namespace canform
