#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arrow/graph.hpp"

namespace arrowreal {

using Rational = boost::multiprecision::cpp_rational;

struct DegreeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MixedPresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CommutationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::string name;
    std::int64_t degree;
    enum class Origin { base, vertex, edge } origin = Origin::base;
    int v = -1, w = -1;  // vertex index / edge endpoints

    bool odd() const { return degree % 2 != 0; }
};

/// Canonical monomial: factors sorted by generator index; odd generators
/// carry exponent 1 (squares of odd generators vanish).
struct Monomial {
    std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

    auto operator<=>(const Monomial&) const = default;
    bool empty() const { return factors.empty(); }
};

class SullivanPresentation;

/// Polynomial with exact rational coefficients over a presentation's
/// generators; graded-commutative multiplication with Koszul signs.
class GradedPoly {
public:
    GradedPoly() = default;

    static GradedPoly zero() { return {}; }
    static GradedPoly monomial(Monomial m, Rational coeff);
    static GradedPoly generator(int gen_index);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    GradedPoly& add_term(Monomial m, const Rational& coeff);
    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b);
    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b);
    GradedPoly scaled(const Rational& c) const;

    bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, Rational> terms_;
};

class SullivanPresentation {
public:
    std::int64_t n = 1;
    Digraph graph;
    std::vector<Generator> generators;
    std::vector<GradedPoly> differential;  // per generator
    // base generator indices
    int x1 = -1, x2 = -1, y1 = -1, y2 = -1, y3 = -1, z = -1;
    std::vector<int> vertex_gen;                 // vertex -> generator index
    std::map<std::pair<int, int>, int> edge_gen; // edge -> generator index

    int num_generators() const { return static_cast<int>(generators.size()); }
    std::int64_t monomial_degree(const Monomial& m) const;
    /// Total degree if homogeneous (zero polynomial counts as any degree).
    bool is_homogeneous(const GradedPoly& p, std::int64_t* degree_out) const;
};

std::int64_t checked_degree(std::int64_t v);

/// The free graded-commutative presentation attached to a strongly connected
/// digraph with the fixed generator degrees and differentials.
SullivanPresentation sullivan_presentation(const Digraph& g, std::int64_t n);

GradedPoly poly_multiply(const SullivanPresentation& pres, const GradedPoly& a,
                         const GradedPoly& b);
GradedPoly poly_pow(const SullivanPresentation& pres, const GradedPoly& a, int e);

/// Extends the differential by the graded Leibniz rule.
GradedPoly apply_derivation(const SullivanPresentation& pres,
                            const GradedPoly& p);

struct ResidueReport {
    struct Entry {
        std::string what;
        bool ok;
        std::string residue;  // rendered nonzero residue, empty when ok
    };
    std::vector<Entry> entries;
    bool all_ok() const;
};

ResidueReport check_d_squared(const SullivanPresentation& pres);

std::vector<Monomial> basis_at_degree(const SullivanPresentation& pres,
                                      std::int64_t degree);

struct AlgebraMorphism {
    const SullivanPresentation* source = nullptr;
    const SullivanPresentation* target = nullptr;
    std::vector<GradedPoly> images;  // per source generator

    bool operator==(const AlgebraMorphism& o) const {
        return images == o.images;
    }
};

GradedPoly apply_morphism(const AlgebraMorphism& f, const GradedPoly& p);

/// Degree preservation and d-commutation on every generator.
void verify_morphism(const AlgebraMorphism& f);

AlgebraMorphism induced_algebra_morphism(const std::vector<int>& sigma,
                                         const SullivanPresentation& m1,
                                         const SullivanPresentation& m2);

AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g);
AlgebraMorphism identity_morphism(const SullivanPresentation& m);
AlgebraMorphism zero_morphism(const SullivanPresentation& m1,
                              const SullivanPresentation& m2);

/// Presentation with the pure differential: only the summands lying in the
/// even subalgebra are kept.
SullivanPresentation pure_differential(const SullivanPresentation& pres);

ResidueReport check_ellipticity_witnesses(const SullivanPresentation& pres);

std::vector<AlgebraMorphism> enumerate_morphisms_constrained(
    const SullivanPresentation& m1, const SullivanPresentation& m2,
    const std::vector<Rational>& coeff_set = {-1, 0, 1},
    std::int64_t node_budget = 500000000);

/// Coefficients of the single-generator monomials of each image.
std::vector<std::map<int, Rational>> linear_part(const AlgebraMorphism& f);

std::string render_poly(const SullivanPresentation& pres, const GradedPoly& p);

}  // namespace arrowreal
