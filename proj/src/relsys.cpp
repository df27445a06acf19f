#include "arrow/relsys.hpp"

#include <algorithm>
#include <numeric>

namespace arrowreal {

std::string vertex_name(const VertexId& v) {
    switch (v.kind) {
        case VertexId::Kind::group_elem: return std::to_string(v.a);
        case VertexId::Kind::copy_class:
            return "(" + std::to_string(v.a) + ",[" + std::to_string(v.b) + "])";
        case VertexId::Kind::copy_sink:
            return "(" + std::to_string(v.a) + ",s)";
    }
    return "?";
}

RelSystem::RelSystem(std::vector<VertexId> vertices, std::vector<Label> labels)
    : vertices_(std::move(vertices)), labels_(std::move(labels)) {
    for (int i = 0; i < num_vertices(); ++i) {
        if (!vertex_index_.emplace(vertices_[i], i).second)
            throw std::invalid_argument("duplicate vertex id");
    }
    for (int i = 0; i < num_labels(); ++i) {
        if (!label_index_.emplace(labels_[i], i).second)
            throw std::invalid_argument("duplicate label");
    }
    edges_.resize(labels_.size());
}

int RelSystem::vertex_index(const VertexId& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end())
        throw std::out_of_range("unknown vertex " + vertex_name(v));
    return it->second;
}

int RelSystem::label_index(const Label& l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end())
        throw std::out_of_range("unknown label " + label_name(l));
    return it->second;
}

void RelSystem::add_edge(const Label& l, const VertexId& from, const VertexId& to) {
    add_edge(label_index(l), vertex_index(from), vertex_index(to));
}

void RelSystem::add_edge(int label, int from, int to) {
    if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices())
        throw std::out_of_range("edge endpoint out of range");
    edges_[label].insert({from, to});
}

std::int64_t RelSystem::total_edges() const {
    std::int64_t n = 0;
    for (const auto& e : edges_) n += static_cast<std::int64_t>(e.size());
    return n;
}

void RelMorphism::verify() const {
    for (int l = 0; l < source->num_labels(); ++l) {
        int tl = target->label_index(source->labels()[l]);
        for (const auto& [v, w] : source->edges(l)) {
            if (!target->has_edge(tl, map[v], map[w]))
                throw MorphismCheckFailed(
                    "edge " + vertex_name(source->vertices()[v]) + " -> " +
                    vertex_name(source->vertices()[w]) + " (label " +
                    label_name(source->labels()[l]) + ") is not preserved");
        }
    }
}

RelMorphism make_rel_morphism(const RelSystem& source, const RelSystem& target,
                              std::vector<int> map) {
    if (static_cast<int>(map.size()) != source.num_vertices())
        throw std::invalid_argument("morphism map has wrong size");
    RelMorphism m{&source, &target, std::move(map)};
    m.verify();
    return m;
}

std::vector<DegreeEntry> degree_report(const RelSystem& s) {
    std::vector<DegreeEntry> out(s.num_vertices());
    for (int l = 0; l < s.num_labels(); ++l)
        for (const auto& [v, w] : s.edges(l)) {
            ++out[v].outdegree;
            ++out[w].indegree;
        }
    return out;
}

RelSystem cayley_diagram(const FiniteGroup& g,
                         const std::vector<std::pair<Label, int>>& labelled_gens) {
    std::vector<int> elems;
    for (const auto& [l, e] : labelled_gens) elems.push_back(e);
    if (subgroup_closure(g, elems).size() != g.order())
        throw NotGenerating("listed elements do not generate the group");
    std::vector<VertexId> verts;
    std::vector<Label> labels;
    for (int x = 0; x < g.order(); ++x)
        verts.push_back({VertexId::Kind::group_elem, x, 0});
    for (const auto& [l, e] : labelled_gens) labels.push_back(l);
    RelSystem s(std::move(verts), std::move(labels));
    for (int li = 0; li < static_cast<int>(labelled_gens.size()); ++li) {
        int gen = labelled_gens[li].second;
        for (int x = 0; x < g.order(); ++x) s.add_edge(li, x, g.mul(gen, x));
    }
    return s;
}

RelSystem build_aux_system(const GeneratingData& gd) {
    const GoursatDecomposition& d = gd.dec;
    bool has_sink = d.pi1_h.size() != d.g1->order();
    std::vector<VertexId> verts;
    for (int c = 0; c < d.q1.num_classes(); ++c)
        verts.push_back({VertexId::Kind::copy_class, 0, c});
    if (has_sink) verts.push_back({VertexId::Kind::copy_sink, 0, 0});
    RelSystem s(std::move(verts), gd.all_labels());

    const VertexId sink{VertexId::Kind::copy_sink, 0, 0};
    auto cls = [](int c) { return VertexId{VertexId::Kind::copy_class, 0, c}; };

    for (const Label& l : gd.labels_I1()) {
        if (l.kind == Label::Kind::gen1) {
            for (int c = 0; c < d.q1.num_classes(); ++c) s.add_edge(l, cls(c), cls(c));
        } else {  // coset label j in J1*
            int j = l.idx;
            if (gd.in_j_pi1(j)) {
                int rj = gd.cosets1.reps[j];
                for (int c = 0; c < d.q1.num_classes(); ++c) {
                    int tc = d.q1.class_of[d.g1->mul(rj, d.q1.reps[c])];
                    s.add_edge(l, cls(c), cls(tc));
                }
            } else {
                for (int c = 0; c < d.q1.num_classes(); ++c) {
                    s.add_edge(l, cls(c), sink);
                    s.add_edge(l, sink, cls(c));
                }
            }
        }
        if (has_sink) s.add_edge(l, sink, sink);
    }
    return s;
}

RelSystem build_source_system(const GeneratingData& gd) {
    std::vector<std::pair<Label, int>> gens;
    for (const Label& l : gd.labels_I1()) gens.push_back({l, gd.element_of(l)});
    // same label universe as the target so the arrow is a morphism over I
    RelSystem cay = cayley_diagram(*gd.dec.g1, gens);
    std::vector<VertexId> verts = cay.vertices();
    RelSystem s(std::move(verts), gd.all_labels());
    for (int li = 0; li < cay.num_labels(); ++li) {
        int tl = s.label_index(cay.labels()[li]);
        for (const auto& [v, w] : cay.edges(li)) s.add_edge(tl, v, w);
    }
    return s;
}

RelSystem build_target_system(const GeneratingData& gd) {
    const GoursatDecomposition& d = gd.dec;
    const FiniteGroup& g2 = *d.g2;
    bool has_sink = d.pi1_h.size() != d.g1->order();
    int num_classes = d.q1.num_classes();
    int num_copies = gd.cosets2.num_classes();

    std::vector<VertexId> verts;
    for (int x = 0; x < g2.order(); ++x)
        verts.push_back({VertexId::Kind::group_elem, x, 0});
    for (int j = 0; j < num_copies; ++j) {
        for (int c = 0; c < num_classes; ++c)
            verts.push_back({VertexId::Kind::copy_class, j, c});
        if (has_sink) verts.push_back({VertexId::Kind::copy_sink, j, 0});
    }
    RelSystem s(std::move(verts), gd.all_labels());

    // Cayley edges of G2
    for (const Label& l : gd.labels_I2()) {
        int gen = gd.element_of(l);
        for (int x = 0; x < g2.order(); ++x)
            s.add_edge(l, {VertexId::Kind::group_elem, x, 0},
                       {VertexId::Kind::group_elem, g2.mul(gen, x), 0});
    }
    // theta edges
    const Label theta{Label::Kind::theta, 0};
    for (int x = 0; x < g2.order(); ++x) {
        Factorization f = factor(gd, 2, x);
        int c = d.theta_inv[d.q2.class_of[f.k]];
        s.add_edge(theta, {VertexId::Kind::group_elem, x, 0},
                   {VertexId::Kind::copy_class, f.j, c});
    }
    // one copy of the auxiliary system per coset index
    RelSystem aux = build_aux_system(gd);
    for (int j = 0; j < num_copies; ++j) {
        for (int li = 0; li < aux.num_labels(); ++li) {
            int tl = s.label_index(aux.labels()[li]);
            for (const auto& [v, w] : aux.edges(li)) {
                VertexId a = aux.vertices()[v], b = aux.vertices()[w];
                a.a = j;
                b.a = j;
                s.add_edge(tl, s.vertex_index(a), s.vertex_index(b));
            }
        }
    }
    return s;
}

RelMorphism build_arrow(const GeneratingData& gd, const RelSystem& source,
                        const RelSystem& target) {
    const GoursatDecomposition& d = gd.dec;
    std::vector<int> map(source.num_vertices());
    for (int v = 0; v < source.num_vertices(); ++v) {
        int g = source.vertices()[v].a;
        VertexId img = d.pi1_h.contains(g)
                           ? VertexId{VertexId::Kind::copy_class, 0, d.q1.class_of[g]}
                           : VertexId{VertexId::Kind::copy_sink, 0, 0};
        map[v] = target.vertex_index(img);
    }
    return make_rel_morphism(source, target, std::move(map));
}

std::vector<int> induced_target_automorphism(const GeneratingData& gd,
                                             const RelSystem& target,
                                             int g_tilde) {
    const GoursatDecomposition& d = gd.dec;
    const FiniteGroup& g2 = *d.g2;
    int gt_inv = g2.inv(g_tilde);
    std::vector<int> map(target.num_vertices());
    for (int v = 0; v < target.num_vertices(); ++v) {
        const VertexId& id = target.vertices()[v];
        VertexId img;
        switch (id.kind) {
            case VertexId::Kind::group_elem:
                img = {VertexId::Kind::group_elem, g2.mul(id.a, gt_inv), 0};
                break;
            case VertexId::Kind::copy_class: {
                int moved = g2.mul(gd.cosets2.reps[id.a], gt_inv);
                Factorization f = factor(gd, 2, moved);
                int shift = d.theta_inv[d.q2.class_of[f.k]];
                img = {VertexId::Kind::copy_class, f.j, d.q1_mul(id.b, shift)};
                break;
            }
            case VertexId::Kind::copy_sink: {
                int moved = g2.mul(gd.cosets2.reps[id.a], gt_inv);
                Factorization f = factor(gd, 2, moved);
                img = {VertexId::Kind::copy_sink, f.j, 0};
                break;
            }
        }
        map[v] = target.vertex_index(img);
    }
    make_rel_morphism(target, target, map);  // morphism property check
    return map;
}

namespace {

struct RelAutSearch {
    const RelSystem& s;
    std::vector<std::vector<int>> signature;  // per-vertex, per-label profile
    std::vector<int> order;                   // vertex assignment order
    std::vector<int> map, inv;
    std::vector<std::vector<int>> result;
    std::int64_t nodes = 0, budget;

    explicit RelAutSearch(const RelSystem& sys, std::int64_t b) : s(sys), budget(b) {
        int n = s.num_vertices();
        signature.assign(n, {});
        for (int l = 0; l < s.num_labels(); ++l) {
            std::vector<int> outd(n, 0), ind(n, 0), loop(n, 0);
            for (const auto& [v, w] : s.edges(l)) {
                ++outd[v];
                ++ind[w];
                if (v == w) ++loop[v];
            }
            for (int v = 0; v < n; ++v) {
                signature[v].push_back(outd[v]);
                signature[v].push_back(ind[v]);
                signature[v].push_back(loop[v]);
            }
        }
        std::map<std::vector<int>, int> count;
        for (int v = 0; v < n; ++v) ++count[signature[v]];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int ca = count[signature[a]], cb = count[signature[b]];
            return ca != cb ? ca < cb : a < b;
        });
        map.assign(n, -1);
        inv.assign(n, -1);
    }

    bool consistent(int v, int w) {
        for (int l = 0; l < s.num_labels(); ++l) {
            const auto& e = s.edges(l);
            for (int u = 0; u < s.num_vertices(); ++u) {
                if (map[u] < 0) continue;
                if (e.count({v, u}) != e.count({w, map[u]})) return false;
                if (e.count({u, v}) != e.count({map[u], w})) return false;
            }
        }
        return true;
    }

    void search(size_t pos) {
        if (++nodes > budget)
            throw SearchBudgetExceeded("automorphism enumeration exceeded budget");
        if (pos == order.size()) {
            result.push_back(map);
            return;
        }
        int v = order[pos];
        for (int w = 0; w < s.num_vertices(); ++w) {
            if (inv[w] >= 0 || signature[w] != signature[v]) continue;
            map[v] = w;
            inv[w] = v;
            if (consistent(v, w)) search(pos + 1);
            map[v] = -1;
            inv[w] = -1;
        }
    }
};

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
    return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_rel_automorphisms(const RelSystem& s,
                                                          std::int64_t node_budget) {
    RelAutSearch search(s, node_budget);
    search.search(0);
    std::sort(search.result.begin(), search.result.end());
    // the automorphism set must be closed under composition
    std::set<std::vector<int>> all(search.result.begin(), search.result.end());
    for (const auto& a : search.result)
        for (const auto& b : search.result)
            if (!all.count(compose(a, b)))
                throw InternalInconsistency("automorphisms not closed under composition");
    return search.result;
}

FiniteGroup permutation_composition_group(
    const std::vector<std::vector<int>>& perms) {
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
    std::vector<std::vector<int>> table(perms.size(),
                                        std::vector<int>(perms.size()));
    for (size_t i = 0; i < perms.size(); ++i)
        for (size_t j = 0; j < perms.size(); ++j) {
            auto it = index.find(compose(perms[i], perms[j]));
            if (it == index.end())
                throw InternalInconsistency("permutation set not closed");
            table[i][j] = it->second;
        }
    return build_group(table);
}

ArrowAutGroup arrow_group_from_pairs(
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs) {
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) index[pairs[i]] = i;
    std::vector<std::vector<int>> table(pairs.size(),
                                        std::vector<int>(pairs.size()));
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j) {
            auto c = std::make_pair(compose(pairs[i].first, pairs[j].first),
                                    compose(pairs[i].second, pairs[j].second));
            auto it = index.find(c);
            if (it == index.end())
                throw InternalInconsistency("arrow automorphisms not closed");
            table[i][j] = it->second;
        }
    FiniteGroup g = build_group(table);
    return ArrowAutGroup{std::move(pairs), std::move(g)};
}

ArrowAutGroup arrow_automorphism_group(
    const RelMorphism& phi,
    const std::vector<std::vector<int>>& source_auts,
    const std::vector<std::vector<int>>& target_auts) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const auto& a : source_auts)
        for (const auto& b : target_auts) {
            bool commutes = true;
            for (int v = 0; v < phi.source->num_vertices() && commutes; ++v)
                commutes = b[phi.map[v]] == phi.map[a[v]];
            if (commutes) pairs.push_back({a, b});
        }
    return arrow_group_from_pairs(std::move(pairs));
}

ArrowAutGroup arrow_automorphism_group(const RelMorphism& phi,
                                       std::int64_t node_budget) {
    auto sa = enumerate_rel_automorphisms(*phi.source, node_budget);
    auto ta = enumerate_rel_automorphisms(*phi.target, node_budget);
    return arrow_automorphism_group(phi, sa, ta);
}

}  // namespace arrowreal
