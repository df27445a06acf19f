#include "arrow/group.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace arrowreal {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : order_(static_cast<int>(table.size())),
      table_(std::move(table)),
      name_(std::move(name)) {
    if (order_ == 0) throw NotAGroup("empty multiplication table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != order_)
            throw NotAGroup("table is not square");
        for (int x : row)
            if (x < 0 || x >= order_) throw NotAGroup("entry out of range");
    }
    // Latin square
    for (int g = 0; g < order_; ++g) {
        std::vector<bool> row_seen(order_, false), col_seen(order_, false);
        for (int h = 0; h < order_; ++h) {
            if (row_seen[table_[g][h]])
                throw NotAGroup("row " + std::to_string(g) + " repeats element " +
                                std::to_string(table_[g][h]));
            if (col_seen[table_[h][g]])
                throw NotAGroup("column " + std::to_string(g) + " repeats element " +
                                std::to_string(table_[h][g]));
            row_seen[table_[g][h]] = true;
            col_seen[table_[h][g]] = true;
        }
    }
    // identity
    identity_ = -1;
    for (int e = 0; e < order_; ++e) {
        bool ok = true;
        for (int g = 0; g < order_ && ok; ++g)
            ok = table_[e][g] == g && table_[g][e] == g;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw NotAGroup("no identity element");
    // associativity
    for (int g = 0; g < order_; ++g)
        for (int h = 0; h < order_; ++h)
            for (int k = 0; k < order_; ++k)
                if (table_[table_[g][h]][k] != table_[g][table_[h][k]])
                    throw NotAGroup("associativity fails at (" + std::to_string(g) +
                                    "," + std::to_string(h) + "," + std::to_string(k) +
                                    ")");
    inverse_.assign(order_, -1);
    for (int g = 0; g < order_; ++g)
        for (int h = 0; h < order_; ++h)
            if (table_[g][h] == identity_) inverse_[g] = h;
}

int FiniteGroup::element_order(int g) const {
    int k = 1, x = g;
    while (x != identity_) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

bool ElementSubset::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

ElementSubset make_subset(const FiniteGroup& g, std::vector<int> members) {
    for (int m : members)
        if (m < 0 || m >= g.order())
            throw std::out_of_range("subset element out of range");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return ElementSubset{&g, std::move(members), false};
}

ElementSubset as_subgroup(const FiniteGroup& g, std::vector<int> members) {
    ElementSubset s = make_subset(g, std::move(members));
    if (!s.contains(g.identity())) throw NotASubgroup("missing identity");
    for (int a : s.members) {
        if (!s.contains(g.inv(a))) throw NotASubgroup("not closed under inverse");
        for (int b : s.members)
            if (!s.contains(g.mul(a, b)))
                throw NotASubgroup("not closed under product");
    }
    s.is_subgroup = true;
    return s;
}

FiniteGroup build_group(const std::vector<std::vector<int>>& table,
                        std::string name) {
    return FiniteGroup(table, std::move(name));
}

ProductGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
    long long n = static_cast<long long>(g1.order()) * g2.order();
    if (n > (1 << 20)) throw std::overflow_error("product order too large");
    int order = static_cast<int>(n);
    int n2 = g2.order();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int a = 0; a < g1.order(); ++a)
        for (int b = 0; b < n2; ++b)
            for (int c = 0; c < g1.order(); ++c)
                for (int d = 0; d < n2; ++d)
                    table[a * n2 + b][c * n2 + d] =
                        g1.mul(a, c) * n2 + g2.mul(b, d);
    std::string name = g1.name().empty() || g2.name().empty()
                           ? std::string{}
                           : g1.name() + "x" + g2.name();
    return ProductGroup{FiniteGroup(std::move(table), std::move(name)), n2};
}

ElementSubset subgroup_closure(const FiniteGroup& g,
                               const std::vector<int>& generators) {
    std::vector<bool> in(g.order(), false);
    std::deque<int> queue;
    in[g.identity()] = true;
    queue.push_back(g.identity());
    for (int x : generators) {
        if (x < 0 || x >= g.order())
            throw std::out_of_range("generator out of range");
        if (!in[x]) {
            in[x] = true;
            queue.push_back(x);
        }
    }
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (int s : generators) {
            for (int p : {g.mul(a, s), g.mul(s, a), g.inv(a)}) {
                if (!in[p]) {
                    in[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    std::vector<int> members;
    for (int i = 0; i < g.order(); ++i)
        if (in[i]) members.push_back(i);
    ElementSubset s{&g, std::move(members), true};
    return s;
}

CosetDecomposition right_cosets(const FiniteGroup& g, const ElementSubset& sub) {
    if (!sub.is_subgroup || sub.parent != &g)
        throw NotASubgroup("right_cosets requires a subgroup of the same group");
    CosetDecomposition d;
    d.subgroup = sub;
    d.class_of.assign(g.order(), -1);
    // identity's coset first
    d.reps.push_back(g.identity());
    for (int h : sub.members) d.class_of[h] = 0;
    for (int x = 0; x < g.order(); ++x) {
        if (d.class_of[x] >= 0) continue;
        int rep = static_cast<int>(d.reps.size());
        d.reps.push_back(x);  // x is the smallest unassigned element of its coset
        for (int h : sub.members) d.class_of[g.mul(h, x)] = rep;
    }
    return d;
}

namespace {

// Minimal generating sequence by greedy closure growth.
std::vector<int> generating_sequence(const FiniteGroup& g) {
    std::vector<int> gens;
    ElementSubset cl = subgroup_closure(g, gens);
    while (cl.size() < g.order()) {
        for (int x = 0; x < g.order(); ++x) {
            if (!cl.contains(x)) {
                gens.push_back(x);
                break;
            }
        }
        cl = subgroup_closure(g, gens);
    }
    return gens;
}

struct IsoSearch {
    const FiniteGroup& a;
    const FiniteGroup& b;
    std::vector<int> gens;       // generating sequence of a
    std::vector<int> map;        // a -> b, -1 unknown
    std::vector<bool> used;      // image used in b
    std::int64_t nodes = 0;
    std::int64_t budget;

    // Propagate products of mapped elements; returns false on conflict.
    bool extend() {
        std::vector<int> known;
        for (int x = 0; x < a.order(); ++x)
            if (map[x] >= 0) known.push_back(x);
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 0; i < known.size(); ++i)
                for (size_t j = 0; j < known.size(); ++j) {
                    int p = a.mul(known[i], known[j]);
                    int q = b.mul(map[known[i]], map[known[j]]);
                    if (map[p] < 0) {
                        if (used[q]) return false;
                        map[p] = q;
                        used[q] = true;
                        known.push_back(p);
                        grew = true;
                    } else if (map[p] != q) {
                        return false;
                    }
                }
        }
        return true;
    }

    bool assign(size_t gi) {
        if (++nodes > budget)
            throw SearchBudgetExceeded("isomorphism search exceeded node budget");
        if (gi == gens.size()) {
            for (int x = 0; x < a.order(); ++x)
                if (map[x] < 0) return false;
            return true;
        }
        int gen = gens[gi];
        if (map[gen] >= 0) return assign(gi + 1);
        int ord = a.element_order(gen);
        for (int img = 0; img < b.order(); ++img) {
            if (used[img] || b.element_order(img) != ord) continue;
            auto saved_map = map;
            auto saved_used = used;
            map[gen] = img;
            used[img] = true;
            if (extend() && assign(gi + 1)) return true;
            map = std::move(saved_map);
            used = std::move(saved_used);
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> isomorphism_search(const FiniteGroup& a,
                                                   const FiniteGroup& b,
                                                   std::int64_t node_budget) {
    if (a.order() != b.order()) return std::nullopt;
    // Order-profile pruning
    std::vector<int> pa(a.order() + 1, 0), pb(b.order() + 1, 0);
    for (int x = 0; x < a.order(); ++x) ++pa[a.element_order(x)];
    for (int x = 0; x < b.order(); ++x) ++pb[b.element_order(x)];
    if (pa != pb) return std::nullopt;

    IsoSearch s{a, b, generating_sequence(a),
                std::vector<int>(a.order(), -1),
                std::vector<bool>(b.order(), false), 0, node_budget};
    s.map[a.identity()] = b.identity();
    s.used[b.identity()] = true;
    if (s.assign(0)) return s.map;
    return std::nullopt;
}

std::vector<ElementSubset> subgroups_up_to_two_generators(const FiniteGroup& g) {
    std::set<std::vector<int>> seen;
    std::vector<ElementSubset> out;
    auto add = [&](const std::vector<int>& gens) {
        ElementSubset s = subgroup_closure(g, gens);
        if (seen.insert(s.members).second) out.push_back(std::move(s));
    };
    add({});
    for (int x = 0; x < g.order(); ++x) add({x});
    for (int x = 0; x < g.order(); ++x)
        for (int y = x + 1; y < g.order(); ++y) add({x, y});
    return out;
}

FiniteGroup cyclic_group(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic_group needs n >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t), "Z" + std::to_string(n));
}

FiniteGroup klein_four() {
    // xor on two bits
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return FiniteGroup(std::move(t), "K4");
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) throw std::invalid_argument("dihedral_group needs n >= 1");
    // element r^a s^e encoded as 2a+e; s r = r^{-1} s
    int order = 2 * n;
    auto enc = [&](int a, int e) { return 2 * ((a % n + n) % n) + e; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < 2; ++e)
            for (int b = 0; b < n; ++b)
                for (int f = 0; f < 2; ++f) {
                    int a2 = e == 0 ? a + b : a - b;
                    t[enc(a, e)][enc(b, f)] = enc(a2, e ^ f);
                }
    return FiniteGroup(std::move(t), "D" + std::to_string(n));
}

FiniteGroup symmetric3() {
    // permutations of {0,1,2} in lex order
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2])
                return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
            t[i][j] = index_of(comp);
        }
    return FiniteGroup(std::move(t), "S3");
}

}  // namespace arrowreal
