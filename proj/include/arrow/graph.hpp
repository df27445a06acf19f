#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "arrow/relsys.hpp"

namespace arrowreal {

struct ArmsNotDistinct : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegreeSeparationViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotStronglyConnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FewerThanTwoVertices : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph on vertices 0..n-1.
class SimpleGraph {
public:
    explicit SimpleGraph(int n = 0) : adjacency_(n) {}

    int num_vertices() const { return static_cast<int>(adjacency_.size()); }
    int add_vertex();
    void add_edge(int u, int v);
    bool adjacent(int u, int v) const { return adjacency_[u].count(v) > 0; }
    const std::set<int>& neighbours(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    std::int64_t num_edges() const;
    std::vector<std::pair<int, int>> edge_list() const;

private:
    std::vector<std::set<int>> adjacency_;
};

/// Directed graph on vertices 0..n-1 (loops allowed, no multi-edges).
class Digraph {
public:
    explicit Digraph(int n = 0) : out_(n), in_(n) {}

    int num_vertices() const { return static_cast<int>(out_.size()); }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return out_[u].count(v) > 0; }
    const std::set<int>& successors(int v) const { return out_[v]; }
    std::vector<std::pair<int, int>> edge_list() const;
    std::int64_t num_edges() const;
    bool strongly_connected() const;

private:
    std::vector<std::set<int>> out_, in_;
};

/// Starlike tree with one degree-3 root and three pendant paths of pairwise
/// distinct lengths; asymmetric, max degree 3.
struct FruchtTree {
    std::array<int, 3> arms;
    SimpleGraph graph;
    int root;
    int leaf;  // designated attachment point: endpoint of the longest arm
};

FruchtTree frucht_tree(int a, int b, int c);

/// Pairwise non-isomorphic trees, one per label, assigned in label order by
/// enumerating distinct arm triples 1 <= a < b < c by increasing total size.
std::map<Label, FruchtTree> tree_family(const std::vector<Label>& labels);

struct GadgetInfo {
    int connector_r;  // adjacent to the edge's source, degree 2
    int connector_p;  // adjacent to the edge's sink and the tree leaf, degree 3
    int tree_base;    // first vertex of the tree copy
    int tree_size;
};

struct ReplacementMap {
    const RelSystem* system = nullptr;
    SimpleGraph graph;
    std::vector<int> original_of;  // graph vertex -> system vertex, -1 for gadgets
    std::map<std::tuple<int, int, int>, GadgetInfo> gadget_of;  // (label,from,to)
};

/// Substitute every labelled edge by a path through the label's tree gadget.
ReplacementMap replace(const RelSystem& s,
                       const std::map<Label, FruchtTree>& family);

struct GraphMorphism {
    const SimpleGraph* source = nullptr;
    const SimpleGraph* target = nullptr;
    std::vector<int> map;

    void verify() const;  // adjacency preservation
};

GraphMorphism lift_morphism(const RelMorphism& phi, const ReplacementMap& src,
                            const ReplacementMap& dst);

std::vector<std::vector<int>> enumerate_graph_automorphisms(
    const SimpleGraph& g, std::int64_t node_budget = 500000000);

std::vector<std::vector<int>> enumerate_digraph_homomorphisms(
    const Digraph& a, const Digraph& b, std::int64_t node_budget = 500000000);

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b);

ArrowAutGroup arrow_automorphism_group_graph(
    const GraphMorphism& f, std::int64_t node_budget = 500000000);

}  // namespace arrowreal
