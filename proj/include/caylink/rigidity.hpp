#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace caylink {

// (2,3) pebble game. Edges are offered one at a time; an edge is accepted iff
// it is independent of the accepted ones in the generic 2D rigidity matroid.
class PebbleGame {
public:
    explicit PebbleGame(const std::set<Vertex>& vertices) {
        for (Vertex v : vertices) pebbles_[v] = 2;
    }

    bool add_edge(Vertex u, Vertex v) {
        pebbles_.try_emplace(u, 2);
        pebbles_.try_emplace(v, 2);
        while (pebbles_[u] + pebbles_[v] < 4) {
            if (pebbles_[u] < 2) {
                if (!gather(u, v)) return false;
            } else if (!gather(v, u)) {
                return false;
            }
        }
        out_[u].push_back(v);
        --pebbles_[u];
        ++accepted_;
        return true;
    }

    int accepted() const { return accepted_; }

private:
    bool gather(Vertex root, Vertex keep) {
        std::map<Vertex, Vertex> parent;
        std::set<Vertex> visited{root, keep};
        std::vector<Vertex> stack{root};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : out_[x]) {
                if (!visited.insert(y).second) continue;
                parent[y] = x;
                if (pebbles_[y] > 0) {
                    --pebbles_[y];
                    for (Vertex cur = y; cur != root;) {
                        Vertex p = parent[cur];
                        auto& lst = out_[p];
                        lst.erase(std::find(lst.begin(), lst.end(), cur));
                        out_[cur].push_back(p);
                        cur = p;
                    }
                    ++pebbles_[root];
                    return true;
                }
                stack.push_back(y);
            }
        }
        return false;
    }

    std::map<Vertex, int> pebbles_;
    std::map<Vertex, std::vector<Vertex>> out_;
    int accepted_ = 0;
};

inline int rigidity_rank(const Graph& g) {
    PebbleGame game(g.vertices());
    for (const Edge& e : g.edges()) game.add_edge(e.a, e.b);
    return game.accepted();
}

inline bool is_rigid(const Graph& g) {
    auto n = static_cast<int>(g.vertex_count());
    if (n <= 1) return true;
    return rigidity_rank(g) == 2 * n - 3;
}

inline bool is_minimally_rigid(const Graph& g) {
    auto n = static_cast<int>(g.vertex_count());
    if (n <= 1) return g.edge_count() == 0;
    if (static_cast<int>(g.edge_count()) != 2 * n - 3) return false;
    return rigidity_rank(g) == 2 * n - 3;
}

inline bool is_redundantly_rigid(const Graph& g) {
    if (!is_rigid(g)) return false;
    for (const Edge& e : g.edges())
        if (!is_rigid(g.without_edge(e))) return false;
    return true;
}

// Vertex pairs whose removal disconnects g.
inline std::vector<std::pair<Vertex, Vertex>> two_separators(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Graph h = g.without_vertices({vs[i], vs[j]});
            if (h.vertex_count() > 0 && !is_connected(h)) out.emplace_back(vs[i], vs[j]);
        }
    return out;
}

inline bool is_3_connected(const Graph& g) {
    if (g.vertex_count() < 4 || !is_connected(g)) return false;
    for (Vertex v : g.vertices())
        if (!is_connected(g.without_vertices({v}))) return false;
    return two_separators(g).empty();
}

inline bool is_complete(const Graph& g) {
    auto n = g.vertex_count();
    return g.edge_count() == n * (n - 1) / 2;
}

inline bool is_globally_rigid(const Graph& g) {
    if (g.vertex_count() <= 3) return is_complete(g);
    return is_3_connected(g) && is_redundantly_rigid(g);
}

} // namespace caylink
