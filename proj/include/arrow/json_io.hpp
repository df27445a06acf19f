#pragma once

#include <string>

#include "arrow/cdga.hpp"
#include "arrow/graph.hpp"
#include "arrow/relsys.hpp"
#include "json.hpp"

namespace arrowreal {

using Json = nlohmann::json;

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// Subgroup of a direct product: either flat indices or [a,b] pairs.
Json subset_to_json(const ElementSubset& s);
std::vector<int> product_subgroup_members_from_json(const Json& j,
                                                    const ProductGroup& p);

Json relsystem_to_json(const RelSystem& s);
/// Rebuild from JSON with synthetic vertex/label tags (names become opaque).
RelSystem relsystem_from_json(const Json& j);
std::string relsystem_to_dot(const RelSystem& s);

Json simple_graph_to_json(const SimpleGraph& g);
std::string simple_graph_to_dot(const SimpleGraph& g);

Json presentation_to_json(const SullivanPresentation& p);
Json algebra_morphism_to_json(const AlgebraMorphism& f);

Json rel_morphism_to_json(const RelMorphism& f);
Json permutation_to_json(const std::vector<int>& perm);

}  // namespace arrowreal
