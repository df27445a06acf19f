#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrow/goursat.hpp"
#include "arrow/group.hpp"

namespace arrowreal {

struct NotGenerating : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MorphismCheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structured vertex tag: a group element, a class inside a numbered copy of
/// the auxiliary system, or the sink vertex of such a copy.
struct VertexId {
    enum class Kind { group_elem, copy_class, copy_sink };
    Kind kind{Kind::group_elem};
    int a = 0;  // group element, or copy index j
    int b = 0;  // class index for copy_class

    auto operator<=>(const VertexId&) const = default;
};

std::string vertex_name(const VertexId& v);

/// Binary relational system over a label set: an edge-labelled digraph.
class RelSystem {
public:
    RelSystem(std::vector<VertexId> vertices, std::vector<Label> labels);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_labels() const { return static_cast<int>(labels_.size()); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Label>& labels() const { return labels_; }

    int vertex_index(const VertexId& v) const;
    int label_index(const Label& l) const;

    void add_edge(const Label& l, const VertexId& from, const VertexId& to);
    void add_edge(int label, int from, int to);

    const std::set<std::pair<int, int>>& edges(int label) const {
        return edges_[label];
    }
    bool has_edge(int label, int from, int to) const {
        return edges_[label].count({from, to}) > 0;
    }
    std::int64_t total_edges() const;

private:
    std::vector<VertexId> vertices_;
    std::vector<Label> labels_;
    std::map<VertexId, int> vertex_index_;
    std::map<Label, int> label_index_;
    std::vector<std::set<std::pair<int, int>>> edges_;
};

/// A verified morphism of relational systems over the same label set.
struct RelMorphism {
    const RelSystem* source = nullptr;
    const RelSystem* target = nullptr;
    std::vector<int> map;  // source vertex index -> target vertex index

    /// Throws MorphismCheckFailed unless every edge is preserved.
    void verify() const;
};

RelMorphism make_rel_morphism(const RelSystem& source, const RelSystem& target,
                              std::vector<int> map);

struct DegreeEntry {
    int indegree = 0;
    int outdegree = 0;
    int degree() const { return indegree + outdegree; }
};

std::vector<DegreeEntry> degree_report(const RelSystem& s);

RelSystem cayley_diagram(const FiniteGroup& g,
                         const std::vector<std::pair<Label, int>>& labelled_gens);

/// The auxiliary system on the classes of pi1(H)/iota1^{-1}(H), with the
/// extra sink vertex when G1 differs from pi1(H). Label set is the full one;
/// labels from the second side and theta carry no edges here.
RelSystem build_aux_system(const GeneratingData& gd);

/// The big target system: a Cayley diagram of G2, one copy of the auxiliary
/// system per coset in J2, and the matching edges from G2 into the copies.
RelSystem build_target_system(const GeneratingData& gd);

RelSystem build_source_system(const GeneratingData& gd);  // Cay(G1, R)

/// g -> (0,[g]) on pi1(H), g -> (0,sink) elsewhere.
RelMorphism build_arrow(const GeneratingData& gd, const RelSystem& source,
                        const RelSystem& target);

/// The automorphism of the target system induced by right multiplication.
std::vector<int> induced_target_automorphism(const GeneratingData& gd,
                                             const RelSystem& target,
                                             int g_tilde);

std::vector<std::vector<int>> enumerate_rel_automorphisms(
    const RelSystem& s, std::int64_t node_budget = 50000000);

struct ArrowAutGroup {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    FiniteGroup group_table;
};

/// Group structure of a set of (source aut, target aut) pairs under
/// componentwise composition; throws if the set is not closed.
ArrowAutGroup arrow_group_from_pairs(
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs);

ArrowAutGroup arrow_automorphism_group(
    const RelMorphism& phi,
    const std::vector<std::vector<int>>& source_auts,
    const std::vector<std::vector<int>>& target_auts);

ArrowAutGroup arrow_automorphism_group(const RelMorphism& phi,
                                       std::int64_t node_budget = 50000000);

/// Group structure of a set of vertex bijections under composition.
FiniteGroup permutation_composition_group(
    const std::vector<std::vector<int>>& perms);

}  // namespace arrowreal
