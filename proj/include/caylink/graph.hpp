#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"

namespace caylink {

using Vertex = int;

// Unordered vertex pair, stored with a < b.
struct Edge {
    Vertex a = 0;
    Vertex b = 0;

    Edge() = default;
    Edge(Vertex u, Vertex v) : a(std::min(u, v)), b(std::max(u, v)) {}

    bool contains(Vertex v) const { return a == v || b == v; }
    Vertex other(Vertex v) const { return v == a ? b : a; }
    auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

class Graph {
public:
    Graph() = default;

    void add_vertex(Vertex v) { vertices_.insert(v); }

    void add_edge(Vertex u, Vertex v) {
        if (u == v) throw Error(ErrorKind::DomainError, "self-loop at vertex " + std::to_string(u));
        vertices_.insert(u);
        vertices_.insert(v);
        edges_.insert(Edge(u, v));
    }

    void add_edge(const Edge& e) { add_edge(e.a, e.b); }
    void remove_edge(const Edge& e) { edges_.erase(e); }

    void remove_vertex(Vertex v) {
        vertices_.erase(v);
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->contains(v)) it = edges_.erase(it);
            else ++it;
        }
    }

    bool has_vertex(Vertex v) const { return vertices_.count(v) != 0; }
    bool has_edge(Vertex u, Vertex v) const { return edges_.count(Edge(u, v)) != 0; }
    bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }

    const std::set<Vertex>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    std::vector<Vertex> neighbors(Vertex v) const {
        std::vector<Vertex> out;
        for (const Edge& e : edges_)
            if (e.contains(v)) out.push_back(e.other(v));
        return out;
    }

    std::map<Vertex, std::vector<Vertex>> adjacency() const {
        std::map<Vertex, std::vector<Vertex>> adj;
        for (Vertex v : vertices_) adj[v];
        for (const Edge& e : edges_) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        return adj;
    }

    Graph with_edge(const Edge& e) const {
        Graph g = *this;
        g.add_edge(e);
        return g;
    }

    Graph without_edge(const Edge& e) const {
        Graph g = *this;
        g.remove_edge(e);
        return g;
    }

    Graph without_vertices(const std::set<Vertex>& drop) const {
        Graph g;
        for (Vertex v : vertices_)
            if (!drop.count(v)) g.add_vertex(v);
        for (const Edge& e : edges_)
            if (!drop.count(e.a) && !drop.count(e.b)) g.edges_.insert(e);
        return g;
    }

    bool operator==(const Graph&) const = default;

private:
    std::set<Vertex> vertices_;
    std::set<Edge> edges_;
};

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return true;
    auto adj = g.adjacency();
    std::set<Vertex> seen{*g.vertices().begin()};
    std::vector<Vertex> stack{*g.vertices().begin()};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == g.vertex_count();
}

// Connected components as vertex sets, ordered by smallest member.
inline std::vector<std::set<Vertex>> connected_components(const Graph& g) {
    auto adj = g.adjacency();
    std::set<Vertex> seen;
    std::vector<std::set<Vertex>> out;
    for (Vertex s : g.vertices()) {
        if (seen.count(s)) continue;
        std::set<Vertex> comp{s};
        std::vector<Vertex> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : adj[v])
                if (seen.insert(w).second) {
                    comp.insert(w);
                    stack.push_back(w);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace caylink
