#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "arrow/cdga.hpp"
#include "arrow/graph.hpp"

using namespace arrowreal;

namespace {

Digraph cycle_digraph(int n) {
    Digraph d(n);
    for (int i = 0; i < n; ++i) d.add_edge(i, (i + 1) % n);
    return d;
}

}  // namespace

TEST_CASE("generator degrees at n=1") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    CHECK(p.generators[p.x1].degree == 48);
    CHECK(p.generators[p.x2].degree == 58);
    CHECK(p.generators[p.y1].degree == 201);
    CHECK(p.generators[p.y2].degree == 211);
    CHECK(p.generators[p.y3].degree == 221);
    CHECK(p.generators[p.vertex_gen[0]].degree == 464);
    CHECK(p.generators[p.z].degree == 1391);
}

TEST_CASE("2-cycle at n=1 has 6 base + 2 vertex + 2 edge generators") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    CHECK(p.num_generators() == 10);
    CHECK(p.vertex_gen.size() == 2);
    CHECK(p.edge_gen.size() == 2);
}

TEST_CASE("presentation rejects bad digraphs and parameters") {
    Digraph single(1);
    single.add_edge(0, 0);
    CHECK_THROWS_AS(sullivan_presentation(single, 1), FewerThanTwoVertices);
    Digraph not_sc(2);
    not_sc.add_edge(0, 1);
    CHECK_THROWS_AS(sullivan_presentation(not_sc, 1), NotStronglyConnected);
    CHECK_THROWS_AS(sullivan_presentation(cycle_digraph(2), 1'000'000'000'000),
                    DegreeOverflow);
}

TEST_CASE("differentials are homogeneous of degree |gen|+1") {
    for (std::int64_t n : {1, 2}) {
        SullivanPresentation p = sullivan_presentation(cycle_digraph(3), n);
        for (int g = 0; g < p.num_generators(); ++g) {
            if (p.differential[g].is_zero()) {
                CHECK(!p.generators[g].odd());
                continue;
            }
            std::int64_t deg = -1;
            CHECK(p.is_homogeneous(p.differential[g], &deg));
            CHECK(deg == p.generators[g].degree + 1);
        }
    }
}

TEST_CASE("Koszul signs: y1*y2 = -y2*y1 and z*z = 0") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    GradedPoly y1 = GradedPoly::generator(p.y1), y2 = GradedPoly::generator(p.y2);
    CHECK(poly_multiply(p, y1, y2) ==
          poly_multiply(p, y2, y1).scaled(Rational(-1)));
    GradedPoly z = GradedPoly::generator(p.z);
    CHECK(poly_multiply(p, z, z).is_zero());
}

TEST_CASE("graded commutativity on random homogeneous pairs") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> gen_pick(0, p.num_generators() - 1),
        exp_pick(1, 3), coeff_pick(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto random_monomial = [&]() {
            Monomial m;
            std::set<int> used;
            int parts = 1 + trial % 3;
            for (int i = 0; i < parts; ++i) {
                int g = gen_pick(rng);
                if (!used.insert(g).second) continue;
                m.factors.push_back({g, p.generators[g].odd() ? 1 : exp_pick(rng)});
            }
            std::sort(m.factors.begin(), m.factors.end());
            return m;
        };
        GradedPoly a = GradedPoly::monomial(random_monomial(), coeff_pick(rng));
        GradedPoly b = GradedPoly::monomial(random_monomial(), coeff_pick(rng));
        std::int64_t da = 0, db = 0;
        p.is_homogeneous(a, &da);
        p.is_homogeneous(b, &db);
        int sign = (da % 2 != 0 && db % 2 != 0) ? -1 : 1;
        CHECK(poly_multiply(p, a, b) ==
              poly_multiply(p, b, a).scaled(Rational(sign)));
    }
}

TEST_CASE("Leibniz rule: d(z*x1) = (dz)*x1") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    GradedPoly zx1 =
        poly_multiply(p, GradedPoly::generator(p.z), GradedPoly::generator(p.x1));
    CHECK(apply_derivation(p, zx1) ==
          poly_multiply(p, p.differential[p.z], GradedPoly::generator(p.x1)));
}

TEST_CASE("d squared vanishes") {
    CHECK(check_d_squared(sullivan_presentation(cycle_digraph(2), 1)).all_ok());
    CHECK(check_d_squared(sullivan_presentation(cycle_digraph(3), 2)).all_ok());
}

TEST_CASE("basis_at_degree matches the degree lemmas") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    auto bxv = basis_at_degree(p, p.generators[p.vertex_gen[0]].degree);
    std::vector<Monomial> expected_xv = {
        Monomial{{{p.x2, 8}}},  // x2^{5n+3}
        Monomial{{{p.vertex_gen[0], 1}}},
        Monomial{{{p.vertex_gen[1], 1}}},
    };
    std::sort(expected_xv.begin(), expected_xv.end());
    CHECK(bxv == expected_xv);

    auto bz = basis_at_degree(p, p.generators[p.z].degree);
    std::vector<Monomial> expected_z = {Monomial{{{p.z, 1}}}};
    for (const auto& [e, g] : p.edge_gen) expected_z.push_back(Monomial{{{g, 1}}});
    std::sort(expected_z.begin(), expected_z.end());
    CHECK(bz == expected_z);

    CHECK(basis_at_degree(p, 0) == std::vector<Monomial>{Monomial{}});
    CHECK(basis_at_degree(p, 1).empty());
}

TEST_CASE("induced_algebra_morphism: identity and swap on the 2-cycle") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    AlgebraMorphism id = induced_algebra_morphism({0, 1}, p, p);
    CHECK(id == identity_morphism(p));
    AlgebraMorphism swap = induced_algebra_morphism({1, 0}, p, p);
    CHECK(swap.images[p.vertex_gen[0]] ==
          GradedPoly::generator(p.vertex_gen[1]));
    CHECK(!(swap == id));  // injectivity on this pair
}

TEST_CASE("induced_algebra_morphism rejects non-homomorphisms") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(3), 1);
    CHECK_THROWS_AS(induced_algebra_morphism({0, 0, 0}, p, p), CommutationFailed);
}

TEST_CASE("ellipticity witnesses hold for n=1 and n=2") {
    CHECK(check_ellipticity_witnesses(sullivan_presentation(cycle_digraph(2), 1))
              .all_ok());
    CHECK(check_ellipticity_witnesses(sullivan_presentation(cycle_digraph(3), 2))
              .all_ok());
}

TEST_CASE("corrupted differential breaks a witness identity") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    // shift the x2 exponent in dz: x2^{15n+9} -> x2^{15n+8}
    GradedPoly dz;
    for (const auto& [m, c] : p.differential[p.z].terms()) {
        Monomial mm = m;
        if (mm.factors.size() == 1 && mm.factors[0].first == p.x2)
            mm.factors[0].second -= 1;
        dz.add_term(mm, c);
    }
    p.differential[p.z] = dz;
    ResidueReport r = check_ellipticity_witnesses(p);
    CHECK(!r.all_ok());
}

TEST_CASE("constrained enumeration: 2-cycle to 2-cycle") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    auto morphs = enumerate_morphisms_constrained(p, p);
    CHECK(morphs.size() == 3);
    bool has_zero = false, has_id = false, has_swap = false;
    AlgebraMorphism id = identity_morphism(p);
    AlgebraMorphism swap = induced_algebra_morphism({1, 0}, p, p);
    for (const AlgebraMorphism& m : morphs) {
        if (m == zero_morphism(p, p)) has_zero = true;
        if (m == id) has_id = true;
        if (m == swap) has_swap = true;
    }
    CHECK(has_zero);
    CHECK(has_id);
    CHECK(has_swap);
}

TEST_CASE("constrained enumeration: 3-cycle to 3-cycle gives zero + rotations") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(3), 1);
    auto morphs = enumerate_morphisms_constrained(p, p);
    CHECK(morphs.size() == 4);
}

TEST_CASE("linear parts distinguish all verified morphisms") {
    SullivanPresentation p = sullivan_presentation(cycle_digraph(2), 1);
    auto morphs = enumerate_morphisms_constrained(p, p);
    std::set<std::vector<std::map<int, Rational>>> parts;
    for (const AlgebraMorphism& m : morphs) parts.insert(linear_part(m));
    CHECK(parts.size() == morphs.size());
    // the identity's linear part is the identity matrix
    auto lp = linear_part(identity_morphism(p));
    for (int g = 0; g < p.num_generators(); ++g) {
        CHECK(lp[g].size() == 1);
        CHECK(lp[g].at(g) == 1);
    }
    // the zero morphism's is empty
    for (const auto& row : linear_part(zero_morphism(p, p))) CHECK(row.empty());
}

TEST_CASE("functoriality on digraph homomorphisms") {
    Digraph c2 = cycle_digraph(2), c3 = cycle_digraph(3);
    SullivanPresentation m2 = sullivan_presentation(c2, 1);
    SullivanPresentation m3 = sullivan_presentation(c3, 1);
    auto homs22 = enumerate_digraph_homomorphisms(c2, c2);
    auto homs33 = enumerate_digraph_homomorphisms(c3, c3);
    for (const auto& s : homs22)
        for (const auto& t : homs22) {
            std::vector<int> st(2);
            for (int v = 0; v < 2; ++v) st[v] = s[t[v]];
            CHECK(compose(induced_algebra_morphism(s, m2, m2),
                          induced_algebra_morphism(t, m2, m2)) ==
                  induced_algebra_morphism(st, m2, m2));
        }
    // injectivity across all enumerated homomorphisms
    std::set<std::vector<std::map<Monomial, Rational>>> images;
    for (const auto& s : homs33) {
        AlgebraMorphism m = induced_algebra_morphism(s, m3, m3);
        std::vector<std::map<Monomial, Rational>> key;
        for (const GradedPoly& img : m.images) key.push_back(img.terms());
        images.insert(key);
    }
    CHECK(images.size() == homs33.size());
}
