#include "arrow/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace arrowreal {

int SimpleGraph::add_vertex() {
    adjacency_.emplace_back();
    return num_vertices() - 1;
}

void SimpleGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("simple graphs have no loops");
    adjacency_[u].insert(v);
    adjacency_[v].insert(u);
}

std::int64_t SimpleGraph::num_edges() const {
    std::int64_t d = 0;
    for (const auto& n : adjacency_) d += static_cast<std::int64_t>(n.size());
    return d / 2;
}

std::vector<std::pair<int, int>> SimpleGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_vertices(); ++u)
        for (int v : adjacency_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

void Digraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw std::out_of_range("edge endpoint out of range");
    out_[u].insert(v);
    in_[v].insert(u);
}

std::vector<std::pair<int, int>> Digraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_vertices(); ++u)
        for (int v : out_[u]) out.push_back({u, v});
    return out;
}

std::int64_t Digraph::num_edges() const {
    std::int64_t d = 0;
    for (const auto& n : out_) d += static_cast<std::int64_t>(n.size());
    return d;
}

bool Digraph::strongly_connected() const {
    if (num_vertices() == 0) return false;
    auto reach = [&](const std::vector<std::set<int>>& adj) {
        std::vector<bool> seen(num_vertices(), false);
        std::deque<int> q{0};
        seen[0] = true;
        int count = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    q.push_back(w);
                }
        }
        return count == num_vertices();
    };
    return reach(out_) && reach(in_);
}

FruchtTree frucht_tree(int a, int b, int c) {
    if (a <= 0 || b <= 0 || c <= 0 || a == b || b == c || a == c)
        throw ArmsNotDistinct("arm lengths must be distinct positive integers");
    FruchtTree t{{a, b, c}, SimpleGraph(1 + a + b + c), 0, -1};
    int next = 1;
    int longest_end = -1;
    int longest = std::max({a, b, c});
    for (int arm : {a, b, c}) {
        int prev = t.root;
        for (int step = 0; step < arm; ++step) {
            t.graph.add_edge(prev, next);
            prev = next++;
        }
        if (arm == longest) longest_end = prev;
    }
    t.leaf = longest_end;
    if (enumerate_graph_automorphisms(t.graph).size() != 1)
        throw InternalInconsistency("starlike tree is not asymmetric");
    return t;
}

std::map<Label, FruchtTree> tree_family(const std::vector<Label>& labels) {
    std::map<Label, FruchtTree> out;
    std::vector<std::array<int, 3>> triples;
    // distinct triples 1 <= a < b < c by increasing total, then lexicographic
    for (int total = 6; triples.size() < labels.size() + 4; ++total)
        for (int a = 1; a < total; ++a)
            for (int b = a + 1; a + b < total; ++b) {
                int c = total - a - b;
                if (c > b) triples.push_back({a, b, c});
            }
    std::vector<Label> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        FruchtTree t = frucht_tree(triples[i][0], triples[i][1], triples[i][2]);
        for (const auto& [l, prev] : out)
            if (graphs_isomorphic(prev.graph, t.graph))
                throw InternalInconsistency("tree family members must be non-isomorphic");
        out.emplace(sorted[i], std::move(t));
    }
    return out;
}

ReplacementMap replace(const RelSystem& s,
                       const std::map<Label, FruchtTree>& family) {
    for (int l = 0; l < s.num_labels(); ++l)
        if (!s.edges(l).empty() && !family.count(s.labels()[l]))
            throw std::invalid_argument("tree family missing label " +
                                        label_name(s.labels()[l]));
    auto degrees = degree_report(s);
    for (int v = 0; v < s.num_vertices(); ++v)
        if (degrees[v].degree() <= 3)
            throw DegreeSeparationViolated(
                "vertex " + vertex_name(s.vertices()[v]) + " has degree " +
                std::to_string(degrees[v].degree()));

    ReplacementMap rm;
    rm.system = &s;
    rm.graph = SimpleGraph(s.num_vertices());
    rm.original_of.assign(s.num_vertices(), 0);
    std::iota(rm.original_of.begin(), rm.original_of.end(), 0);

    for (int l = 0; l < s.num_labels(); ++l) {
        if (s.edges(l).empty()) continue;
        const FruchtTree& tree = family.at(s.labels()[l]);
        for (const auto& [v, w] : s.edges(l)) {
            GadgetInfo gi;
            gi.connector_r = rm.graph.add_vertex();
            gi.connector_p = rm.graph.add_vertex();
            gi.tree_base = rm.graph.num_vertices();
            gi.tree_size = tree.graph.num_vertices();
            for (int t = 0; t < gi.tree_size; ++t) rm.graph.add_vertex();
            for (const auto& [x, y] : tree.graph.edge_list())
                rm.graph.add_edge(gi.tree_base + x, gi.tree_base + y);
            rm.graph.add_edge(v, gi.connector_r);
            rm.graph.add_edge(gi.connector_r, gi.connector_p);
            rm.graph.add_edge(gi.connector_p, w);
            rm.graph.add_edge(gi.connector_p, gi.tree_base + tree.leaf);
            rm.gadget_of[{l, v, w}] = gi;
        }
    }
    rm.original_of.resize(rm.graph.num_vertices(), -1);
    return rm;
}

void GraphMorphism::verify() const {
    for (const auto& [u, v] : source->edge_list()) {
        if (map[u] == map[v] || !target->adjacent(map[u], map[v]))
            throw MorphismCheckFailed("graph edge " + std::to_string(u) + "-" +
                                      std::to_string(v) + " is not preserved");
    }
}

GraphMorphism lift_morphism(const RelMorphism& phi, const ReplacementMap& src,
                            const ReplacementMap& dst) {
    if (src.system != phi.source || dst.system != phi.target)
        throw std::invalid_argument("replacement maps do not match the morphism");
    GraphMorphism f;
    f.source = &src.graph;
    f.target = &dst.graph;
    f.map.assign(src.graph.num_vertices(), -1);
    for (int v = 0; v < phi.source->num_vertices(); ++v) f.map[v] = phi.map[v];
    for (const auto& [key, gi] : src.gadget_of) {
        auto [l, v, w] = key;
        const GadgetInfo& tgt =
            dst.gadget_of.at({l, phi.map[v], phi.map[w]});
        if (tgt.tree_size != gi.tree_size)
            throw MorphismCheckFailed("gadget tree sizes differ");
        f.map[gi.connector_r] = tgt.connector_r;
        f.map[gi.connector_p] = tgt.connector_p;
        for (int t = 0; t < gi.tree_size; ++t)
            f.map[gi.tree_base + t] = tgt.tree_base + t;
    }
    f.verify();
    return f;
}

namespace {

// Iterated degree-refinement colouring: colour = (old colour, sorted multiset
// of neighbour colours), renumbered, until a fixpoint.
std::vector<int> refine_colours(const SimpleGraph& g) {
    int n = g.num_vertices();
    std::vector<int> colour(n, 0);
    for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
    int classes = 0;
    for (;;) {
        std::map<std::pair<int, std::vector<int>>, int> renumber;
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            nb.reserve(g.degree(v));
            for (int w : g.neighbours(v)) nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            auto key = std::make_pair(colour[v], std::move(nb));
            auto it = renumber.emplace(std::move(key),
                                       static_cast<int>(renumber.size())).first;
            next[v] = it->second;
        }
        int new_classes = static_cast<int>(renumber.size());
        colour = std::move(next);
        if (new_classes == classes) return colour;
        classes = new_classes;
    }
}

struct GraphAutSearch {
    const SimpleGraph& g;
    std::vector<int> colour;
    std::vector<int> order;
    std::vector<int> map, inv;
    std::vector<std::vector<int>> result;
    std::int64_t nodes = 0, budget;

    GraphAutSearch(const SimpleGraph& graph, std::int64_t b)
        : g(graph), colour(refine_colours(graph)), budget(b) {
        int n = g.num_vertices();
        std::vector<int> class_size(n + 1, 0);
        for (int v = 0; v < n; ++v) ++class_size[colour[v]];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b2) {
            int ca = class_size[colour[a]], cb = class_size[colour[b2]];
            return ca != cb ? ca < cb : a < b2;
        });
        map.assign(n, -1);
        inv.assign(n, -1);
    }

    bool consistent(int v, int w) const {
        // adjacency with every already-assigned vertex must agree both ways
        for (int u : g.neighbours(v))
            if (map[u] >= 0 && !g.adjacent(w, map[u])) return false;
        for (int u : g.neighbours(w))
            if (inv[u] >= 0 && !g.adjacent(v, inv[u])) return false;
        return true;
    }

    void search(size_t pos) {
        if (++nodes > budget)
            throw SearchBudgetExceeded("graph automorphism search exceeded budget");
        if (pos == order.size()) {
            result.push_back(map);
            return;
        }
        int v = order[pos];
        for (int w = 0; w < g.num_vertices(); ++w) {
            if (inv[w] >= 0 || colour[w] != colour[v]) continue;
            if (!consistent(v, w)) continue;
            map[v] = w;
            inv[w] = v;
            search(pos + 1);
            map[v] = -1;
            inv[w] = -1;
        }
    }
};

}  // namespace

std::vector<std::vector<int>> enumerate_graph_automorphisms(
    const SimpleGraph& g, std::int64_t node_budget) {
    if (g.num_vertices() == 0) return {{}};
    GraphAutSearch search(g, node_budget);
    search.search(0);
    std::sort(search.result.begin(), search.result.end());
    return search.result;
}

std::vector<std::vector<int>> enumerate_digraph_homomorphisms(
    const Digraph& a, const Digraph& b, std::int64_t node_budget) {
    for (const Digraph* d : {&a, &b}) {
        if (d->num_vertices() < 2)
            throw FewerThanTwoVertices("digraphs must have more than one vertex");
        if (!d->strongly_connected())
            throw NotStronglyConnected("digraphs must be strongly connected");
    }
    // DFS order from vertex 0, so every new vertex touches an assigned one
    std::vector<int> order;
    {
        std::vector<bool> seen(a.num_vertices(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int w : a.successors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        for (int v = 0; v < a.num_vertices(); ++v)
            if (!seen[v]) order.push_back(v);  // unreachable only if not connected
    }
    std::vector<std::vector<int>> result;
    std::vector<int> map(a.num_vertices(), -1);
    std::int64_t nodes = 0;
    auto consistent = [&](int v, int w) {
        for (int u = 0; u < a.num_vertices(); ++u) {
            if (map[u] < 0) continue;
            if (a.has_edge(v, u) && !b.has_edge(w, map[u])) return false;
            if (a.has_edge(u, v) && !b.has_edge(map[u], w)) return false;
        }
        if (a.has_edge(v, v) && !b.has_edge(w, w)) return false;
        return true;
    };
    auto rec = [&](auto&& self, size_t pos) -> void {
        if (++nodes > node_budget)
            throw SearchBudgetExceeded("homomorphism search exceeded budget");
        if (pos == order.size()) {
            result.push_back(map);
            return;
        }
        int v = order[pos];
        for (int w = 0; w < b.num_vertices(); ++w) {
            if (!consistent(v, w)) continue;
            map[v] = w;
            self(self, pos + 1);
            map[v] = -1;
        }
    };
    rec(rec, 0);
    std::sort(result.begin(), result.end());
    return result;
}

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
        return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.num_vertices(); ++v) da.push_back(a.degree(v));
    for (int v = 0; v < b.num_vertices(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;

    int n = a.num_vertices();
    std::vector<int> map(n, -1), inv(n, -1);
    auto consistent = [&](int v, int w) {
        for (int u = 0; u < n; ++u) {
            if (map[u] < 0) continue;
            if (a.adjacent(v, u) != b.adjacent(w, map[u])) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (inv[w] >= 0 || a.degree(v) != b.degree(w)) continue;
            if (!consistent(v, w)) continue;
            map[v] = w;
            inv[w] = v;
            if (self(self, v + 1)) return true;
            map[v] = -1;
            inv[w] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

ArrowAutGroup arrow_automorphism_group_graph(const GraphMorphism& f,
                                             std::int64_t node_budget) {
    auto sa = enumerate_graph_automorphisms(*f.source, node_budget);
    auto ta = enumerate_graph_automorphisms(*f.target, node_budget);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const auto& a : sa)
        for (const auto& b : ta) {
            bool commutes = true;
            for (int v = 0; v < f.source->num_vertices() && commutes; ++v)
                commutes = b[f.map[v]] == f.map[a[v]];
            if (commutes) pairs.push_back({a, b});
        }
    return arrow_group_from_pairs(std::move(pairs));
}

}  // namespace arrowreal
