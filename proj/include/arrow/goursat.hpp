#pragma once

#include <compare>
#include <memory>
#include <vector>

#include "arrow/group.hpp"

namespace arrowreal {

struct InternalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge labels used by the relational systems. A label is either one of the
/// chosen generators of the two subgroups, a nonzero coset index on either
/// side, or the distinguished quotient-matching label.
struct Label {
    enum class Kind { gen1, coset1, gen2, coset2, theta };
    Kind kind{Kind::theta};
    int idx = 0;

    auto operator<=>(const Label&) const = default;
};

std::string label_name(const Label& l);

/// The data characterising a subgroup H of G1 x G2: projections, preimages,
/// the two subquotients and the matching bijection between their classes.
struct GoursatDecomposition {
    const FiniteGroup* g1 = nullptr;
    const FiniteGroup* g2 = nullptr;
    std::shared_ptr<const ProductGroup> product;  // shared so copies stay valid
    ElementSubset h;          // subgroup of product
    ElementSubset pi1_h;      // projection to G1
    ElementSubset pi2_h;      // projection to G2
    ElementSubset iota1_h;    // {a in G1 : (a,e) in H}
    ElementSubset iota2_h;    // {b in G2 : (e,b) in H}
    CosetDecomposition q1;    // cosets of iota1_h inside pi1_h
    CosetDecomposition q2;    // cosets of iota2_h inside pi2_h
    std::vector<int> theta;   // q1 class index -> q2 class index
    std::vector<int> theta_inv;

    // Quotient multiplication on class indices (well-defined by normality).
    int q1_mul(int c1, int c2) const;
    int q2_mul(int c1, int c2) const;
};

GoursatDecomposition goursat_decompose(const FiniteGroup& g1,
                                       const FiniteGroup& g2,
                                       const std::vector<int>& h_members);

/// Coset representatives, labelled generating sets and the index bookkeeping
/// needed to build the relational systems.
struct GeneratingData {
    GoursatDecomposition dec;
    CosetDecomposition cosets1;      // iota1_h in G1; indices are J1
    CosetDecomposition cosets2;      // pi2_h in G2; indices are J2
    std::vector<int> gens_iota1;     // generators of iota1_h, identity-padded
    std::vector<int> gens_pi2;       // generators of pi2_h, identity-padded
    std::vector<int> j_pi1;          // J1 indices whose rep lies in pi1_h

    std::vector<Label> labels_I1() const;
    std::vector<Label> labels_I2() const;
    std::vector<Label> all_labels() const;  // I1 + I2 + theta

    /// The group element carried by a generator/coset label.
    int element_of(const Label& l) const;

    bool in_j_pi1(int j) const;
};

GeneratingData generating_data(const GoursatDecomposition& d);

struct Factorization {
    int k;  // element of iota1_h (side 1) or pi2_h (side 2)
    int j;  // coset index
};

/// Unique factorization g = k * r_j (side 1) or g = k * s_j (side 2).
Factorization factor(const GeneratingData& gd, int side, int g);

}  // namespace arrowreal
