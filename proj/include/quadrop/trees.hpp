#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "quadrop/errors.hpp"

namespace quadrop {

/// Stable tree: vertices, edges between distinct vertices, and labelled
/// tails.  Stability means flag valence >= 3 at every vertex.
struct StableTree {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges; // unordered vertex pairs
    std::vector<std::pair<int, int>> tails; // (vertex, label)
};

/// Incidence of a vertex with a tail or one side of an edge.
struct Flag {
    int vertex = 0;
    bool is_tail = false;
    int id = 0; // tail label or edge index

    friend bool operator==(const Flag& a, const Flag& b) {
        return a.vertex == b.vertex && a.is_tail == b.is_tail && a.id == b.id;
    }
};

struct TreeDiagnostics {
    bool valid = true;
    std::vector<std::string> problems;

    void fail(std::string msg) {
        valid = false;
        problems.push_back(std::move(msg));
    }
};

inline int flag_valence(const StableTree& t, int v) {
    int count = 0;
    for (const auto& [u, label] : t.tails)
        if (u == v)
            ++count;
    for (const auto& [a, b] : t.edges)
        count += (a == v) + (b == v);
    return count;
}

/// Connectivity, acyclicity (|E| = |V|-1 plus connectedness), stability,
/// and label sanity; all problems are reported, none thrown.
inline TreeDiagnostics validate_tree(const StableTree& t) {
    TreeDiagnostics diag;
    if (t.n_vertices <= 0) {
        diag.fail("tree needs at least one vertex");
        return diag;
    }
    for (const auto& [a, b] : t.edges) {
        if (a < 0 || a >= t.n_vertices || b < 0 || b >= t.n_vertices)
            diag.fail("edge endpoint out of range");
        else if (a == b)
            diag.fail("edge joins a vertex to itself");
    }
    for (const auto& [v, label] : t.tails)
        if (v < 0 || v >= t.n_vertices)
            diag.fail("tail attached to a missing vertex");
    std::vector<int> labels;
    for (const auto& [v, label] : t.tails)
        labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        diag.fail("tail labels are not distinct");
    if (!diag.valid)
        return diag;

    if (static_cast<int>(t.edges.size()) != t.n_vertices - 1)
        diag.fail("edge count must be vertex count minus one");
    // Connectivity by union-find.
    std::vector<int> parent(t.n_vertices);
    for (int i = 0; i < t.n_vertices; ++i)
        parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : t.edges) {
        int ra = find(a), rb = find(b);
        if (ra == rb)
            diag.fail("edges form a cycle");
        else
            parent[ra] = rb;
    }
    for (int v = 1; v < t.n_vertices; ++v)
        if (find(v) != find(0)) {
            diag.fail("tree is not connected");
            break;
        }
    for (int v = 0; v < t.n_vertices; ++v)
        if (flag_valence(t, v) < 3)
            diag.fail("vertex " + std::to_string(v) + " has flag valence < 3");
    return diag;
}

/// Canonical flag enumeration: vertex order, tails before edge sides,
/// tails by label and edge sides by edge index.
inline std::vector<Flag> flags_of(const StableTree& t) {
    std::vector<Flag> flags;
    for (int v = 0; v < t.n_vertices; ++v) {
        std::vector<Flag> tails_here;
        for (const auto& [u, label] : t.tails)
            if (u == v)
                tails_here.push_back(Flag{v, true, label});
        std::sort(tails_here.begin(), tails_here.end(),
                  [](const Flag& a, const Flag& b) { return a.id < b.id; });
        flags.insert(flags.end(), tails_here.begin(), tails_here.end());
        for (std::size_t e = 0; e < t.edges.size(); ++e)
            if (t.edges[e].first == v || t.edges[e].second == v)
                flags.push_back(Flag{v, false, static_cast<int>(e)});
    }
    return flags;
}

/// Graft two trees by welding a tail of each into a new edge.  Tails are
/// chosen by label; callers keep the remaining labels disjoint.
inline StableTree graft(const StableTree& a, const StableTree& b, int label_a, int label_b) {
    if (!validate_tree(a).valid || !validate_tree(b).valid)
        throw DomainError("graft: both trees must be valid");
    auto find_tail = [](const StableTree& t, int label) {
        for (std::size_t i = 0; i < t.tails.size(); ++i)
            if (t.tails[i].second == label)
                return static_cast<std::int64_t>(i);
        return static_cast<std::int64_t>(-1);
    };
    std::int64_t ia = find_tail(a, label_a);
    std::int64_t ib = find_tail(b, label_b);
    if (ia < 0 || ib < 0)
        throw DomainError("graft: tail label not present");
    StableTree out;
    out.n_vertices = a.n_vertices + b.n_vertices;
    out.edges = a.edges;
    for (const auto& [u, v] : b.edges)
        out.edges.emplace_back(u + a.n_vertices, v + a.n_vertices);
    for (std::size_t i = 0; i < a.tails.size(); ++i)
        if (static_cast<std::int64_t>(i) != ia)
            out.tails.push_back(a.tails[i]);
    for (std::size_t i = 0; i < b.tails.size(); ++i)
        if (static_cast<std::int64_t>(i) != ib)
            out.tails.emplace_back(b.tails[i].first + a.n_vertices, b.tails[i].second);
    out.edges.emplace_back(a.tails[ia].first, b.tails[ib].first + a.n_vertices);
    return out;
}

/// Contract one edge: endpoints merge into the smaller vertex id, vertices
/// above the larger id shift down by one.
inline StableTree contract_tree_edge(const StableTree& t, int edge_idx) {
    if (edge_idx < 0 || edge_idx >= static_cast<int>(t.edges.size()))
        throw DomainError("contract_tree_edge: no such edge");
    const int u = std::min(t.edges[edge_idx].first, t.edges[edge_idx].second);
    const int v = std::max(t.edges[edge_idx].first, t.edges[edge_idx].second);
    auto remap = [&](int w) {
        if (w == v)
            return u;
        return (w > v) ? w - 1 : w;
    };
    StableTree out;
    out.n_vertices = t.n_vertices - 1;
    for (std::size_t e = 0; e < t.edges.size(); ++e)
        if (static_cast<int>(e) != edge_idx)
            out.edges.emplace_back(remap(t.edges[e].first), remap(t.edges[e].second));
    for (const auto& [w, label] : t.tails)
        out.tails.emplace_back(remap(w), label);
    return out;
}

/// One-vertex corolla with tails labelled 0..n.
inline StableTree corolla(int n) {
    StableTree t;
    t.n_vertices = 1;
    for (int i = 0; i <= n; ++i)
        t.tails.emplace_back(0, i);
    return t;
}

/// Splits the vertex set by removing edge e; returns the side containing
/// `anchor` first.
inline std::pair<std::vector<int>, std::vector<int>> split_by_edge(const StableTree& t,
                                                                   int edge_idx, int anchor) {
    std::vector<int> side(t.n_vertices, -1);
    std::vector<int> stack = {anchor};
    side[anchor] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
            if (static_cast<int>(e) == edge_idx)
                continue;
            const auto& [a, b] = t.edges[e];
            int other = -1;
            if (a == v)
                other = b;
            else if (b == v)
                other = a;
            if (other >= 0 && side[other] < 0) {
                side[other] = 0;
                stack.push_back(other);
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    for (int v = 0; v < t.n_vertices; ++v)
        (side[v] == 0 ? out.first : out.second).push_back(v);
    return out;
}

} // namespace quadrop
