#include "arrow/goursat.hpp"

#include <algorithm>

namespace arrowreal {

std::string label_name(const Label& l) {
    switch (l.kind) {
        case Label::Kind::gen1: return "r_gen" + std::to_string(l.idx);
        case Label::Kind::coset1: return "r" + std::to_string(l.idx);
        case Label::Kind::gen2: return "s_gen" + std::to_string(l.idx);
        case Label::Kind::coset2: return "s" + std::to_string(l.idx);
        case Label::Kind::theta: return "theta";
    }
    return "?";
}

namespace {

// Right cosets of sub inside an ambient subgroup (both subgroups of g).
// class_of is -1 outside the ambient set.
CosetDecomposition cosets_within(const FiniteGroup& g,
                                 const ElementSubset& ambient,
                                 const ElementSubset& sub) {
    CosetDecomposition d;
    d.subgroup = sub;
    d.class_of.assign(g.order(), -1);
    d.reps.push_back(g.identity());
    for (int h : sub.members) d.class_of[h] = 0;
    for (int x : ambient.members) {
        if (d.class_of[x] >= 0) continue;
        int rep = static_cast<int>(d.reps.size());
        d.reps.push_back(x);
        for (int h : sub.members) d.class_of[g.mul(h, x)] = rep;
    }
    return d;
}

}  // namespace

int GoursatDecomposition::q1_mul(int c1, int c2) const {
    return q1.class_of[g1->mul(q1.reps[c1], q1.reps[c2])];
}

int GoursatDecomposition::q2_mul(int c1, int c2) const {
    return q2.class_of[g2->mul(q2.reps[c1], q2.reps[c2])];
}

GoursatDecomposition goursat_decompose(const FiniteGroup& g1,
                                       const FiniteGroup& g2,
                                       const std::vector<int>& h_members) {
    GoursatDecomposition d;
    d.g1 = &g1;
    d.g2 = &g2;
    d.product = std::make_shared<ProductGroup>(direct_product(g1, g2));
    const FiniteGroup& p = d.product->group;
    d.h = as_subgroup(p, h_members);

    std::vector<int> pi1, pi2, io1, io2;
    for (int x : d.h.members) {
        int a = d.product->first(x), b = d.product->second(x);
        pi1.push_back(a);
        pi2.push_back(b);
        if (b == g2.identity()) io1.push_back(a);
        if (a == g1.identity()) io2.push_back(b);
    }
    d.pi1_h = as_subgroup(g1, pi1);
    d.pi2_h = as_subgroup(g2, pi2);
    d.iota1_h = as_subgroup(g1, io1);
    d.iota2_h = as_subgroup(g2, io2);
    d.q1 = cosets_within(g1, d.pi1_h, d.iota1_h);
    d.q2 = cosets_within(g2, d.pi2_h, d.iota2_h);

    // theta: pick any (a,b) in H with a in the class and record b's class
    int n1 = d.q1.num_classes();
    d.theta.assign(n1, -1);
    for (int x : d.h.members) {
        int a = d.product->first(x), b = d.product->second(x);
        int ca = d.q1.class_of[a], cb = d.q2.class_of[b];
        if (d.theta[ca] < 0)
            d.theta[ca] = cb;
        else if (d.theta[ca] != cb)
            throw InternalInconsistency("theta is not well defined");
    }
    for (int c = 0; c < n1; ++c)
        if (d.theta[c] < 0)
            throw InternalInconsistency("theta not defined on every class");
    if (d.q2.num_classes() != n1)
        throw InternalInconsistency("subquotients have different sizes");
    d.theta_inv.assign(n1, -1);
    for (int c = 0; c < n1; ++c) {
        if (d.theta_inv[d.theta[c]] >= 0)
            throw InternalInconsistency("theta is not injective");
        d.theta_inv[d.theta[c]] = c;
    }
    // multiplication-preserving on the quotients
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b)
            if (d.theta[d.q1_mul(a, b)] != d.q2_mul(d.theta[a], d.theta[b]))
                throw InternalInconsistency("theta does not preserve products");
    // reconstruction of H
    for (int a = 0; a < g1.order(); ++a)
        for (int b = 0; b < g2.order(); ++b) {
            bool in_h = d.h.contains(d.product->pair(a, b));
            bool rebuilt = d.pi1_h.contains(a) && d.pi2_h.contains(b) &&
                           d.theta[d.q1.class_of[a]] == d.q2.class_of[b];
            if (in_h != rebuilt)
                throw InternalInconsistency("H reconstruction failed at (" +
                                            std::to_string(a) + "," +
                                            std::to_string(b) + ")");
        }
    return d;
}

std::vector<Label> GeneratingData::labels_I1() const {
    std::vector<Label> out;
    for (int k = 0; k < static_cast<int>(gens_iota1.size()); ++k)
        out.push_back({Label::Kind::gen1, k});
    for (int j = 1; j < cosets1.num_classes(); ++j)
        out.push_back({Label::Kind::coset1, j});
    return out;
}

std::vector<Label> GeneratingData::labels_I2() const {
    std::vector<Label> out;
    for (int k = 0; k < static_cast<int>(gens_pi2.size()); ++k)
        out.push_back({Label::Kind::gen2, k});
    for (int j = 1; j < cosets2.num_classes(); ++j)
        out.push_back({Label::Kind::coset2, j});
    return out;
}

std::vector<Label> GeneratingData::all_labels() const {
    std::vector<Label> out = labels_I1();
    auto i2 = labels_I2();
    out.insert(out.end(), i2.begin(), i2.end());
    out.push_back({Label::Kind::theta, 0});
    return out;
}

int GeneratingData::element_of(const Label& l) const {
    switch (l.kind) {
        case Label::Kind::gen1: return gens_iota1[l.idx];
        case Label::Kind::coset1: return cosets1.reps[l.idx];
        case Label::Kind::gen2: return gens_pi2[l.idx];
        case Label::Kind::coset2: return cosets2.reps[l.idx];
        case Label::Kind::theta: break;
    }
    throw std::invalid_argument("theta label carries no element");
}

bool GeneratingData::in_j_pi1(int j) const {
    return std::binary_search(j_pi1.begin(), j_pi1.end(), j);
}

namespace {

// Greedy deterministic generating set of a subgroup: repeatedly add the
// smallest element not yet in the closure.
std::vector<int> greedy_generators(const FiniteGroup& g,
                                   const ElementSubset& sub) {
    std::vector<int> gens;
    ElementSubset cl = subgroup_closure(g, gens);
    while (cl.size() < sub.size()) {
        for (int x : sub.members) {
            if (!cl.contains(x)) {
                gens.push_back(x);
                break;
            }
        }
        cl = subgroup_closure(g, gens);
    }
    return gens;
}

}  // namespace

GeneratingData generating_data(const GoursatDecomposition& d) {
    GeneratingData gd;
    gd.dec = d;
    gd.cosets1 = right_cosets(*d.g1, d.iota1_h);
    gd.cosets2 = right_cosets(*d.g2, d.pi2_h);
    gd.gens_iota1 = greedy_generators(*d.g1, d.iota1_h);
    gd.gens_pi2 = greedy_generators(*d.g2, d.pi2_h);
    // pad with identity-labelled generators until both label sets have size 2
    while (static_cast<int>(gd.gens_iota1.size()) + gd.cosets1.num_classes() - 1 < 2)
        gd.gens_iota1.push_back(d.g1->identity());
    while (static_cast<int>(gd.gens_pi2.size()) + gd.cosets2.num_classes() - 1 < 2)
        gd.gens_pi2.push_back(d.g2->identity());
    for (int j = 0; j < gd.cosets1.num_classes(); ++j)
        if (d.pi1_h.contains(gd.cosets1.reps[j])) gd.j_pi1.push_back(j);

    // R generates G1 and S generates G2
    std::vector<int> r_elems, s_elems;
    for (const Label& l : gd.labels_I1()) r_elems.push_back(gd.element_of(l));
    for (const Label& l : gd.labels_I2()) s_elems.push_back(gd.element_of(l));
    if (subgroup_closure(*d.g1, r_elems).size() != d.g1->order())
        throw InternalInconsistency("R does not generate G1");
    if (subgroup_closure(*d.g2, s_elems).size() != d.g2->order())
        throw InternalInconsistency("S does not generate G2");
    return gd;
}

Factorization factor(const GeneratingData& gd, int side, int g) {
    if (side == 1) {
        const FiniteGroup& g1 = *gd.dec.g1;
        int j = gd.cosets1.class_of[g];
        int k = g1.mul(g, g1.inv(gd.cosets1.reps[j]));
        return {k, j};
    }
    if (side == 2) {
        const FiniteGroup& g2 = *gd.dec.g2;
        int j = gd.cosets2.class_of[g];
        int k = g2.mul(g, g2.inv(gd.cosets2.reps[j]));
        return {k, j};
    }
    throw std::invalid_argument("side must be 1 or 2");
}

}  // namespace arrowreal
