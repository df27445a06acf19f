#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "arrow/relsys.hpp"
#include "test_util.hpp"

using namespace arrowreal;

namespace {

GeneratingData golden_data() {
    return generating_data(testutil::golden_decomposition());
}

/// Oracle: automorphisms of a relational system by trying every bijection.
std::vector<std::vector<int>> aut_all_bijections(const RelSystem& s) {
    std::vector<int> perm(s.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int l = 0; l < s.num_labels() && ok; ++l)
            for (int v = 0; v < s.num_vertices() && ok; ++v)
                for (int w = 0; w < s.num_vertices() && ok; ++w)
                    if (s.has_edge(l, v, w) != s.has_edge(l, perm[v], perm[w]))
                        ok = false;
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TEST_CASE("cayley_diagram: Z8 with R={1,2,3,4}") {
    GeneratingData gd = golden_data();
    RelSystem g1 = build_source_system(gd);
    CHECK(g1.num_vertices() == 8);
    int labels_with_edges = 0;
    for (int l = 0; l < g1.num_labels(); ++l)
        if (!g1.edges(l).empty()) {
            ++labels_with_edges;
            CHECK(g1.edges(l).size() == 8);
        }
    CHECK(labels_with_edges == 4);
}

TEST_CASE("cayley_diagram: trivial group with identity generator") {
    FiniteGroup triv = build_group({{0}});
    RelSystem s = cayley_diagram(triv, {{Label{Label::Kind::gen1, 0}, 0}});
    CHECK(s.num_vertices() == 1);
    CHECK(s.has_edge(0, 0, 0));  // a loop
}

TEST_CASE("cayley_diagram: Z4 with S={1,2}") {
    FiniteGroup z4 = cyclic_group(4);
    RelSystem s = cayley_diagram(z4, {{Label{Label::Kind::gen2, 0}, 1},
                                      {Label{Label::Kind::gen2, 1}, 2}});
    CHECK(s.num_vertices() == 4);
    CHECK(s.has_edge(0, 0, 1));  // 1 + 0 = 1
    CHECK(s.has_edge(1, 3, 1));  // 2 + 3 = 1
}

TEST_CASE("cayley_diagram rejects non-generating sets") {
    FiniteGroup z4 = cyclic_group(4);
    CHECK_THROWS_AS(cayley_diagram(z4, {{Label{Label::Kind::gen2, 0}, 2}}),
                    NotGenerating);
}

TEST_CASE("build_aux_system: worked example has 3 vertices, deg(s)=16") {
    GeneratingData gd = golden_data();
    RelSystem aux = build_aux_system(gd);
    CHECK(aux.num_vertices() == 3);
    int sink = -1;
    for (int v = 0; v < aux.num_vertices(); ++v)
        if (aux.vertices()[v].kind == VertexId::Kind::copy_sink) sink = v;
    REQUIRE(sink >= 0);
    CHECK(degree_report(aux)[sink].degree() == 16);
}

TEST_CASE("build_aux_system: no sink when G1 = pi1(H)") {
    FiniteGroup z2 = cyclic_group(2);
    ProductGroup p = direct_product(z2, z2);
    GeneratingData gd =
        generating_data(goursat_decompose(z2, z2, {p.pair(0, 0), p.pair(1, 1)}));
    RelSystem aux = build_aux_system(gd);
    for (const VertexId& v : aux.vertices())
        CHECK(v.kind != VertexId::Kind::copy_sink);
}

TEST_CASE("build_aux_system: one-class quotient") {
    // H = <(1,1)> in Z2 x Z2: iota1 trivial... use H with iota1 = pi1 instead:
    // H = Z2 x Z2 full product gives pi1 = iota1 = Z2, single class, no sink
    FiniteGroup z2 = cyclic_group(2);
    ProductGroup p = direct_product(z2, z2);
    GeneratingData gd = generating_data(
        goursat_decompose(z2, z2, {0, 1, 2, 3}));
    RelSystem aux = build_aux_system(gd);
    int classes = 0;
    for (const VertexId& v : aux.vertices())
        if (v.kind == VertexId::Kind::copy_class) ++classes;
    CHECK(classes == 1);
}

TEST_CASE("build_target_system: worked example shape and theta edges") {
    GeneratingData gd = golden_data();
    RelSystem t = build_target_system(gd);
    CHECK(t.num_vertices() == 10);
    int theta = t.label_index(Label{Label::Kind::theta, 0});
    // 0 -> (0,[0]), 1 -> (1,[0]), 2 -> (0,[2]), 3 -> (1,[2])
    auto class_of = [&](int g1_elem) {
        return gd.dec.q1.class_of[g1_elem];
    };
    auto copy_class = [&](int j, int cls) {
        return t.vertex_index(VertexId{VertexId::Kind::copy_class, j, cls});
    };
    auto grp = [&](int g) {
        return t.vertex_index(VertexId{VertexId::Kind::group_elem, g, 0});
    };
    CHECK(t.has_edge(theta, grp(0), copy_class(0, class_of(0))));
    CHECK(t.has_edge(theta, grp(1), copy_class(1, class_of(0))));
    CHECK(t.has_edge(theta, grp(2), copy_class(0, class_of(2))));
    CHECK(t.has_edge(theta, grp(3), copy_class(1, class_of(2))));
    CHECK(t.edges(theta).size() == 4);
}

TEST_CASE("degree lemma values on the worked example") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    auto src_deg = degree_report(src);
    for (const DegreeEntry& d : src_deg) CHECK(d.degree() == 8);  // 2|I1|
    auto tgt_deg = degree_report(tgt);
    for (int v = 0; v < tgt.num_vertices(); ++v) {
        const VertexId& id = tgt.vertices()[v];
        if (id.kind == VertexId::Kind::group_elem)
            CHECK(tgt_deg[v].degree() == 5);  // 2|I2| + 1
        else if (id.kind == VertexId::Kind::copy_class)
            CHECK(tgt_deg[v].degree() == 9);  // 2|I1| + |iota2^{-1}(H)|
    }
}

TEST_CASE("degree_report: Cayley diagrams and isolated vertices") {
    FiniteGroup z4 = cyclic_group(4);
    RelSystem s = cayley_diagram(z4, {{Label{Label::Kind::gen2, 0}, 1},
                                      {Label{Label::Kind::gen2, 1}, 2}});
    for (const DegreeEntry& d : degree_report(s)) {
        CHECK(d.indegree == 2);
        CHECK(d.outdegree == 2);
    }
    RelSystem isolated({VertexId{VertexId::Kind::group_elem, 0, 0}},
                       {Label{Label::Kind::gen1, 0}});
    auto rep = degree_report(isolated);
    CHECK(rep[0].degree() == 0);
}

TEST_CASE("build_arrow: worked-example images and fibres") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    RelMorphism phi = build_arrow(gd, src, tgt);
    phi.verify();
    auto expect = [&](int g, VertexId v) {
        CHECK(phi.map[src.vertex_index(VertexId{VertexId::Kind::group_elem, g, 0})] ==
              tgt.vertex_index(v));
    };
    int c0 = gd.dec.q1.class_of[0], c2 = gd.dec.q1.class_of[2];
    expect(0, VertexId{VertexId::Kind::copy_class, 0, c0});
    expect(2, VertexId{VertexId::Kind::copy_class, 0, c2});
    expect(1, VertexId{VertexId::Kind::copy_sink, 0, 0});
    // fibres {0,4}, {2,6}, {1,3,5,7}
    std::map<int, std::vector<int>> fibres;
    for (int g = 0; g < 8; ++g)
        fibres[phi.map[src.vertex_index(VertexId{VertexId::Kind::group_elem, g, 0})]]
            .push_back(g);
    CHECK(fibres.size() == 3);
    std::vector<std::vector<int>> sizes;
    for (auto& [v, f] : fibres) sizes.push_back(f);
    CHECK(fibres[tgt.vertex_index(VertexId{VertexId::Kind::copy_sink, 0, 0})] ==
          std::vector<int>{1, 3, 5, 7});
}

TEST_CASE("induced_target_automorphism: identity and the Phi homomorphism") {
    GeneratingData gd = golden_data();
    RelSystem tgt = build_target_system(gd);
    const FiniteGroup& g2 = *gd.dec.g2;
    std::vector<int> ident = induced_target_automorphism(gd, tgt, g2.identity());
    for (int v = 0; v < tgt.num_vertices(); ++v) CHECK(ident[v] == v);

    // g~ = 2 sends vertex 0 to 2 and (0,[0]) to (0,[2])
    std::vector<int> phi2 = induced_target_automorphism(gd, tgt, 2);
    CHECK(phi2[tgt.vertex_index(VertexId{VertexId::Kind::group_elem, 0, 0})] ==
          tgt.vertex_index(VertexId{VertexId::Kind::group_elem, 2, 0}));
    int c0 = gd.dec.q1.class_of[0], c2 = gd.dec.q1.class_of[2];
    CHECK(phi2[tgt.vertex_index(VertexId{VertexId::Kind::copy_class, 0, c0})] ==
          tgt.vertex_index(VertexId{VertexId::Kind::copy_class, 0, c2}));

    // Phi_{g} o Phi_{h} = Phi_{gh} for all pairs
    std::vector<std::vector<int>> phis;
    for (int g = 0; g < g2.order(); ++g)
        phis.push_back(induced_target_automorphism(gd, tgt, g));
    for (int g = 0; g < g2.order(); ++g)
        for (int h = 0; h < g2.order(); ++h) {
            std::vector<int> composed(tgt.num_vertices());
            for (int v = 0; v < tgt.num_vertices(); ++v)
                composed[v] = phis[g][phis[h][v]];
            CHECK(composed == phis[g2.mul(g, h)]);
        }
}

TEST_CASE("enumerate_rel_automorphisms: worked example counts and groups") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    auto aut1 = enumerate_rel_automorphisms(src);
    CHECK(aut1.size() == 8);
    CHECK(isomorphism_search(permutation_composition_group(aut1), cyclic_group(8))
              .has_value());
    auto aut2 = enumerate_rel_automorphisms(tgt);
    CHECK(aut2.size() == 4);
    CHECK(isomorphism_search(permutation_composition_group(aut2), cyclic_group(4))
              .has_value());
    // every induced automorphism appears; Phi is injective, hence bijective
    std::set<std::vector<int>> enumerated(aut2.begin(), aut2.end());
    std::set<std::vector<int>> induced;
    for (int g = 0; g < 4; ++g)
        induced.insert(induced_target_automorphism(gd, tgt, g));
    CHECK(induced == enumerated);
}

TEST_CASE("enumerate_rel_automorphisms agrees with the all-bijections oracle") {
    GeneratingData gd = golden_data();
    RelSystem aux = build_aux_system(gd);
    CHECK(enumerate_rel_automorphisms(aux) == aut_all_bijections(aux));
    FiniteGroup z4 = cyclic_group(4);
    RelSystem cay = cayley_diagram(z4, {{Label{Label::Kind::gen2, 0}, 1},
                                        {Label{Label::Kind::gen2, 1}, 2}});
    CHECK(enumerate_rel_automorphisms(cay) == aut_all_bijections(cay));
}

TEST_CASE("single vertex system has exactly one automorphism") {
    RelSystem s({VertexId{VertexId::Kind::group_elem, 0, 0}},
                {Label{Label::Kind::gen1, 0}});
    CHECK(enumerate_rel_automorphisms(s).size() == 1);
}

TEST_CASE("Cayley automorphisms fixing a vertex are the identity") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    for (const std::vector<int>& a : enumerate_rel_automorphisms(src))
        if (a[0] == 0)
            for (int v = 0; v < src.num_vertices(); ++v) CHECK(a[v] == v);
}

TEST_CASE("auxiliary-system rigidity: unique automorphism per class image") {
    GeneratingData gd = golden_data();
    RelSystem aux = build_aux_system(gd);
    int e_class = aux.vertex_index(
        VertexId{VertexId::Kind::copy_class, 0, gd.dec.q1.class_of[0]});
    std::map<int, int> images_of_e;
    for (const std::vector<int>& a : enumerate_rel_automorphisms(aux))
        ++images_of_e[a[e_class]];
    for (const VertexId& v : aux.vertices())
        if (v.kind == VertexId::Kind::copy_class)
            CHECK(images_of_e[aux.vertex_index(v)] == 1);
}

TEST_CASE("arrow_automorphism_group: worked example is H") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    RelMorphism phi = build_arrow(gd, src, tgt);
    ArrowAutGroup ag = arrow_automorphism_group(phi);
    CHECK(ag.pairs.size() == 4);
    FiniteGroup h =
        testutil::subgroup_table(gd.dec.product->group, gd.dec.h);
    CHECK(isomorphism_search(ag.group_table, h).has_value());
}

TEST_CASE("arrow_automorphism_group of an identity morphism is the diagonal") {
    GeneratingData gd = golden_data();
    RelSystem src = build_source_system(gd);
    std::vector<int> ident(src.num_vertices());
    std::iota(ident.begin(), ident.end(), 0);
    RelMorphism f = make_rel_morphism(src, src, ident);
    ArrowAutGroup ag = arrow_automorphism_group(f);
    CHECK(ag.pairs.size() == enumerate_rel_automorphisms(src).size());
    for (const auto& [a, b] : ag.pairs) CHECK(a == b);
}

TEST_CASE("arrow_automorphism_group: H = G1 x G2 gives order |G1||G2|") {
    FiniteGroup z2 = cyclic_group(2);
    ProductGroup p = direct_product(z2, z2);
    GeneratingData gd = generating_data(goursat_decompose(z2, z2, {0, 1, 2, 3}));
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    RelMorphism phi = build_arrow(gd, src, tgt);
    ArrowAutGroup ag = arrow_automorphism_group(phi);
    CHECK(ag.pairs.size() == 4);
    FiniteGroup h = testutil::subgroup_table(gd.dec.product->group, gd.dec.h);
    CHECK(isomorphism_search(ag.group_table, h).has_value());
}

TEST_CASE("morphism verification rejects edge-dropping maps") {
    FiniteGroup z4 = cyclic_group(4);
    RelSystem cay = cayley_diagram(z4, {{Label{Label::Kind::gen2, 0}, 1},
                                        {Label{Label::Kind::gen2, 1}, 2}});
    CHECK_THROWS_AS(make_rel_morphism(cay, cay, {0, 2, 1, 3}).verify(),
                    MorphismCheckFailed);
}
