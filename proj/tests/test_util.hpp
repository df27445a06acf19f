#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "arrow/goursat.hpp"
#include "arrow/group.hpp"

namespace testutil {

using namespace arrowreal;

/// Multiplication table of a subgroup, reindexed to 0..|sub|-1.
inline FiniteGroup subgroup_table(const FiniteGroup& g, const ElementSubset& sub) {
    std::vector<int> pos(g.order(), -1);
    for (size_t i = 0; i < sub.members.size(); ++i) pos[sub.members[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(sub.members.size(),
                                        std::vector<int>(sub.members.size()));
    for (size_t i = 0; i < sub.members.size(); ++i)
        for (size_t j = 0; j < sub.members.size(); ++j)
            table[i][j] = pos[g.mul(sub.members[i], sub.members[j])];
    return build_group(table);
}

/// Oracle: isomorphism testing by trying every bijection. Only for tiny groups.
inline std::optional<std::vector<int>> iso_all_bijections(const FiniteGroup& a,
                                                          const FiniteGroup& b) {
    if (a.order() != b.order()) return std::nullopt;
    std::vector<int> perm(a.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int g = 0; g < a.order() && ok; ++g)
            for (int h = 0; h < a.order() && ok; ++h)
                if (perm[a.mul(g, h)] != b.mul(perm[g], perm[h])) ok = false;
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

inline GoursatDecomposition golden_decomposition() {
    static FiniteGroup z8 = cyclic_group(8);
    static FiniteGroup z4 = cyclic_group(4);
    static ProductGroup prod = direct_product(z8, z4);
    ElementSubset h = subgroup_closure(prod.group, {prod.pair(2, 2)});
    return goursat_decompose(z8, z4, h.members);
}

}  // namespace testutil
