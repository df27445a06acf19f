#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arrow/json_io.hpp"
#include "test_util.hpp"

using namespace arrowreal;

TEST_CASE("group JSON round-trip") {
    FiniteGroup g = dihedral_group(4);
    Json j = group_to_json(g);
    CHECK(j.at("order") == 8);
    FiniteGroup back = group_from_json(j);
    CHECK(back == g);
}

TEST_CASE("group JSON validation") {
    Json j = {{"order", 3}, {"table", Json::array({Json::array({0, 1}),
                                                   Json::array({1, 0})})}};
    CHECK_THROWS_AS(group_from_json(j), NotAGroup);
}

TEST_CASE("product subgroup members accept pairs and flat indices") {
    ProductGroup p = direct_product(cyclic_group(8), cyclic_group(4));
    Json pairs = Json::array({Json::array({2, 2})});
    CHECK(product_subgroup_members_from_json(pairs, p) ==
          std::vector<int>{p.pair(2, 2)});
    Json flat = Json::array({10});
    CHECK(product_subgroup_members_from_json(flat, p) == std::vector<int>{10});
}

TEST_CASE("relational system JSON and DOT") {
    GeneratingData gd = generating_data(testutil::golden_decomposition());
    RelSystem tgt = build_target_system(gd);
    Json j = relsystem_to_json(tgt);
    CHECK(j.at("vertices").size() == 10);
    std::int64_t edges = 0;
    for (int l = 0; l < tgt.num_labels(); ++l) edges += tgt.edges(l).size();
    CHECK(j.at("edges").size() == static_cast<size_t>(edges));
    std::string dot = relsystem_to_dot(tgt);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("simple graph JSON and DOT") {
    SimpleGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    Json j = simple_graph_to_json(g);
    CHECK(j.at("vertices") == 3);
    CHECK(j.at("edges").size() == 2);
    std::string dot = simple_graph_to_dot(g);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);
}

TEST_CASE("presentation and morphism JSON") {
    Digraph c2(2);
    c2.add_edge(0, 1);
    c2.add_edge(1, 0);
    SullivanPresentation p = sullivan_presentation(c2, 1);
    Json j = presentation_to_json(p);
    CHECK(j.at("n") == 1);
    CHECK(j.at("generators").size() == 10);
    CHECK(j.at("generators")[0].at("degree") == 48);
    CHECK(j.at("differential").contains("z"));

    Json mj = algebra_morphism_to_json(identity_morphism(p));
    CHECK(mj.at("images").at("x1") == "1*x1");
}

TEST_CASE("relational morphism JSON") {
    GeneratingData gd = generating_data(testutil::golden_decomposition());
    RelSystem src = build_source_system(gd);
    RelSystem tgt = build_target_system(gd);
    RelMorphism phi = build_arrow(gd, src, tgt);
    Json j = rel_morphism_to_json(phi);
    CHECK(j.at("map").size() == 8);
}
