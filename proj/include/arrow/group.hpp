#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrowreal {

struct NotAGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotASubgroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite group given by its full multiplication table. Elements are the
/// indices 0..order-1; table[g][h] is the product g*h.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table,
                         std::string name = "");

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int g, int h) const { return table_[g][h]; }
    int inv(int g) const { return inverse_[g]; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::string& name() const { return name_; }

    /// Smallest k >= 1 with g^k = e.
    int element_order(int g) const;

    bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

private:
    int order_;
    std::vector<std::vector<int>> table_;
    int identity_;
    std::vector<int> inverse_;
    std::string name_;
};

/// Subset of a group's elements, kept sorted. May be flagged as a subgroup,
/// in which case closure under product/inverse was verified.
struct ElementSubset {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;   // sorted, unique
    bool is_subgroup = false;

    bool contains(int g) const;
    int size() const { return static_cast<int>(members.size()); }
};

ElementSubset make_subset(const FiniteGroup& g, std::vector<int> members);

/// Verifies closure/identity/inverse and returns the subset flagged as a
/// subgroup; throws NotASubgroup otherwise.
ElementSubset as_subgroup(const FiniteGroup& g, std::vector<int> members);

struct CosetDecomposition {
    ElementSubset subgroup;
    std::vector<int> reps;       // reps[0] is the identity
    std::vector<int> class_of;   // group element -> index into reps

    int num_classes() const { return static_cast<int>(reps.size()); }
};

FiniteGroup build_group(const std::vector<std::vector<int>>& table,
                        std::string name = "");

struct ProductGroup {
    FiniteGroup group;
    int order2;  // |G2|, for pairing arithmetic

    int pair(int a, int b) const { return a * order2 + b; }
    int first(int g) const { return g / order2; }
    int second(int g) const { return g % order2; }
};

ProductGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Breadth-first closure of the generators; result is flagged as a subgroup.
ElementSubset subgroup_closure(const FiniteGroup& g,
                               const std::vector<int>& generators);

/// Right cosets sub*r. The subgroup's own coset is represented by the
/// identity; every other representative is the smallest element of its coset.
CosetDecomposition right_cosets(const FiniteGroup& g, const ElementSubset& sub);

/// Multiplication-preserving bijection a -> b, if one exists. Backtracks over
/// images of a generating sequence, pruned by element orders.
std::optional<std::vector<int>> isomorphism_search(const FiniteGroup& a,
                                                   const FiniteGroup& b,
                                                   std::int64_t node_budget = 1000000);

/// All subgroups obtainable as the closure of at most two elements.
std::vector<ElementSubset> subgroups_up_to_two_generators(const FiniteGroup& g);

// Presets
FiniteGroup cyclic_group(int n);
FiniteGroup klein_four();
FiniteGroup dihedral_group(int n);   // order 2n
FiniteGroup symmetric3();

}  // namespace arrowreal
