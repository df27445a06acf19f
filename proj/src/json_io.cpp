#include "arrow/json_io.hpp"

#include <sstream>

namespace arrowreal {

Json group_to_json(const FiniteGroup& g) {
    return Json{{"order", g.order()}, {"table", g.table()}, {"name", g.name()}};
}

FiniteGroup group_from_json(const Json& j) {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    std::string name = j.value("name", std::string{});
    if (j.contains("order") &&
        j.at("order").get<size_t>() != table.size())
        throw NotAGroup("declared order does not match the table");
    return build_group(table, name);
}

Json subset_to_json(const ElementSubset& s) {
    return Json{{"members", s.members}, {"is_subgroup", s.is_subgroup}};
}

std::vector<int> product_subgroup_members_from_json(const Json& j,
                                                    const ProductGroup& p) {
    std::vector<int> members;
    for (const Json& e : j) {
        if (e.is_array()) {
            if (e.size() != 2)
                throw NotASubgroup("pair entries must have two components");
            members.push_back(p.pair(e.at(0).get<int>(), e.at(1).get<int>()));
        } else {
            members.push_back(e.get<int>());
        }
    }
    return members;
}

Json relsystem_to_json(const RelSystem& s) {
    Json vertices = Json::array();
    for (const VertexId& v : s.vertices()) vertices.push_back(vertex_name(v));
    Json labels = Json::array();
    for (const Label& l : s.labels()) labels.push_back(label_name(l));
    Json edges = Json::array();
    for (int li = 0; li < s.num_labels(); ++li)
        for (const auto& [from, to] : s.edges(li))
            edges.push_back(Json{{"label", label_name(s.labels()[li])},
                                 {"from", from},
                                 {"to", to}});
    return Json{{"vertices", vertices}, {"labels", labels}, {"edges", edges}};
}

RelSystem relsystem_from_json(const Json& j) {
    std::vector<VertexId> vertices;
    int n = static_cast<int>(j.at("vertices").size());
    for (int v = 0; v < n; ++v)
        vertices.push_back(VertexId{VertexId::Kind::group_elem, v, 0});
    std::vector<Label> labels;
    std::map<std::string, int> label_pos;
    for (const Json& l : j.at("labels")) {
        label_pos[l.get<std::string>()] = static_cast<int>(labels.size());
        labels.push_back(Label{Label::Kind::gen1, static_cast<int>(labels.size())});
    }
    RelSystem s(std::move(vertices), std::move(labels));
    for (const Json& e : j.at("edges"))
        s.add_edge(label_pos.at(e.at("label").get<std::string>()),
                   e.at("from").get<int>(), e.at("to").get<int>());
    return s;
}

namespace {

const char* kDotPalette[] = {"black",    "red",    "blue",   "forestgreen",
                             "darkorange", "purple", "brown",  "deeppink",
                             "teal",     "gold",   "navy",   "firebrick"};

}  // namespace

std::string relsystem_to_dot(const RelSystem& s) {
    std::ostringstream out;
    out << "digraph relsystem {\n";
    for (int v = 0; v < s.num_vertices(); ++v)
        out << "  v" << v << " [label=\"" << vertex_name(s.vertices()[v])
            << "\"];\n";
    for (int li = 0; li < s.num_labels(); ++li) {
        const char* colour = kDotPalette[li % std::size(kDotPalette)];
        for (const auto& [from, to] : s.edges(li))
            out << "  v" << from << " -> v" << to << " [color=" << colour
                << ", label=\"" << label_name(s.labels()[li]) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

Json simple_graph_to_json(const SimpleGraph& g) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edge_list()) edges.push_back(Json{u, v});
    return Json{{"vertices", g.num_vertices()}, {"edges", edges}};
}

std::string simple_graph_to_dot(const SimpleGraph& g) {
    std::ostringstream out;
    out << "graph simple {\n";
    for (int v = 0; v < g.num_vertices(); ++v) out << "  v" << v << ";\n";
    for (const auto& [u, v] : g.edge_list())
        out << "  v" << u << " -- v" << v << ";\n";
    out << "}\n";
    return out.str();
}

Json presentation_to_json(const SullivanPresentation& p) {
    Json generators = Json::array();
    for (const Generator& g : p.generators)
        generators.push_back(Json{{"name", g.name}, {"degree", g.degree}});
    Json differential = Json::object();
    for (int gi = 0; gi < p.num_generators(); ++gi)
        differential[p.generators[gi].name] =
            render_poly(p, p.differential[gi]);
    return Json{{"n", p.n},
                {"generators", generators},
                {"differential", differential}};
}

Json algebra_morphism_to_json(const AlgebraMorphism& f) {
    Json images = Json::object();
    for (size_t gi = 0; gi < f.images.size(); ++gi)
        images[f.source->generators[gi].name] =
            render_poly(*f.target, f.images[gi]);
    return Json{{"images", images}};
}

Json rel_morphism_to_json(const RelMorphism& f) {
    Json map = Json::object();
    for (size_t v = 0; v < f.map.size(); ++v)
        map[vertex_name(f.source->vertices()[v])] =
            vertex_name(f.target->vertices()[f.map[v]]);
    return Json{{"map", map}};
}

Json permutation_to_json(const std::vector<int>& perm) { return Json(perm); }

}  // namespace arrowreal
