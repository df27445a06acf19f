#include "arrow/cdga.hpp"

#include <algorithm>
#include <limits>

namespace arrowreal {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw DegreeOverflow("degree overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw DegreeOverflow("degree overflow");
    return r;
}

}  // namespace

std::int64_t checked_degree(std::int64_t v) {
    if (v < 0 || v > (std::int64_t{1} << 40))
        throw DegreeOverflow("degree out of budget: " + std::to_string(v));
    return v;
}

GradedPoly GradedPoly::monomial(Monomial m, Rational coeff) {
    GradedPoly p;
    p.add_term(std::move(m), coeff);
    return p;
}

GradedPoly GradedPoly::generator(int gen_index) {
    return monomial(Monomial{{{gen_index, 1}}}, 1);
}

GradedPoly& GradedPoly::add_term(Monomial m, const Rational& coeff) {
    if (coeff == 0) return *this;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

GradedPoly GradedPoly::scaled(const Rational& c) const {
    GradedPoly out;
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

std::int64_t SullivanPresentation::monomial_degree(const Monomial& m) const {
    std::int64_t d = 0;
    for (const auto& [g, e] : m.factors)
        d = checked_add(d, checked_mul(generators.at(g).degree, e));
    return d;
}

bool SullivanPresentation::is_homogeneous(const GradedPoly& p,
                                          std::int64_t* degree_out) const {
    std::int64_t deg = -1;
    for (const auto& [m, c] : p.terms()) {
        std::int64_t d = monomial_degree(m);
        if (deg < 0)
            deg = d;
        else if (d != deg)
            return false;
    }
    if (degree_out) *degree_out = deg;
    return true;
}

namespace {

void validate_monomial(const SullivanPresentation& pres, const Monomial& m) {
    for (const auto& [g, e] : m.factors) {
        if (g < 0 || g >= pres.num_generators())
            throw MixedPresentation("monomial references an unknown generator");
        if (e <= 0 || (pres.generators[g].odd() && e > 1))
            throw MixedPresentation("monomial exponent is not canonical");
    }
}

// Product of two canonical monomials; returns sign 0 when an odd generator
// repeats.
int multiply_monomials(const SullivanPresentation& pres, const Monomial& a,
                       const Monomial& b, Monomial& out) {
    std::vector<int> odd_a, odd_b;
    for (const auto& [g, e] : a.factors)
        if (pres.generators[g].odd()) odd_a.push_back(g);
    for (const auto& [g, e] : b.factors)
        if (pres.generators[g].odd()) odd_b.push_back(g);
    long long inversions = 0;
    for (int gb : odd_b) {
        for (int ga : odd_a) {
            if (ga == gb) return 0;  // odd square
            if (ga > gb) ++inversions;
        }
    }
    out.factors.clear();
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() ||
                   b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            out.factors.push_back(
                {a.factors[i].first, a.factors[i].second + b.factors[j].second});
            ++i;
            ++j;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

GradedPoly poly_multiply(const SullivanPresentation& pres, const GradedPoly& a,
                         const GradedPoly& b) {
    for (const auto& [m, c] : a.terms()) validate_monomial(pres, m);
    for (const auto& [m, c] : b.terms()) validate_monomial(pres, m);
    GradedPoly out;
    Monomial prod;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int sign = multiply_monomials(pres, ma, mb, prod);
            if (sign == 0) continue;
            out.add_term(prod, ca * cb * sign);
        }
    return out;
}

GradedPoly poly_pow(const SullivanPresentation& pres, const GradedPoly& a, int e) {
    GradedPoly out = GradedPoly::monomial(Monomial{}, 1);
    for (int i = 0; i < e; ++i) out = poly_multiply(pres, out, a);
    return out;
}

GradedPoly apply_derivation(const SullivanPresentation& pres,
                            const GradedPoly& p) {
    GradedPoly out;
    for (const auto& [m, coeff] : p.terms()) {
        std::int64_t prefix_degree = 0;
        for (size_t t = 0; t < m.factors.size(); ++t) {
            auto [g, e] = m.factors[t];
            const GradedPoly& dg = pres.differential[g];
            if (!dg.is_zero()) {
                // prefix * d(g^e) * suffix, with the Koszul sign of the prefix
                Monomial prefix, suffix;
                prefix.factors.assign(m.factors.begin(), m.factors.begin() + t);
                suffix.factors.assign(m.factors.begin() + t + 1, m.factors.end());
                GradedPoly block;  // d(g^e) = e * g^{e-1} * dg
                if (e > 1) {
                    Monomial rest{{{g, e - 1}}};
                    block = poly_multiply(pres, GradedPoly::monomial(rest, e), dg);
                } else {
                    block = dg;
                }
                GradedPoly term = poly_multiply(
                    pres, GradedPoly::monomial(prefix, 1), block);
                term = poly_multiply(pres, term, GradedPoly::monomial(suffix, 1));
                int sign = prefix_degree % 2 == 0 ? 1 : -1;
                out = out + term.scaled(coeff * sign);
            }
            prefix_degree =
                checked_add(prefix_degree,
                            checked_mul(pres.generators[g].degree, e));
        }
    }
    return out;
}

SullivanPresentation sullivan_presentation(const Digraph& g, std::int64_t n) {
    if (g.num_vertices() < 2)
        throw FewerThanTwoVertices("digraph must have more than one vertex");
    if (!g.strongly_connected())
        throw NotStronglyConnected("digraph must be strongly connected");
    if (n < 1) throw std::invalid_argument("n must be a positive integer");

    SullivanPresentation pres;
    pres.n = n;
    pres.graph = g;
    auto deg_x1 = checked_degree(30 * n + 18);
    auto deg_x2 = checked_degree(36 * n + 22);
    auto deg_y1 = checked_degree(126 * n + 75);
    auto deg_y2 = checked_degree(132 * n + 79);
    auto deg_y3 = checked_degree(138 * n + 83);
    auto deg_xv = checked_degree(checked_add(checked_mul(180, checked_mul(n, n)),
                                             218 * n + 66));
    auto deg_z = checked_degree(checked_add(checked_mul(540, checked_mul(n, n)),
                                            654 * n + 197));

    auto add_gen = [&](std::string name, std::int64_t degree,
                       Generator::Origin origin, int v = -1, int w = -1) {
        pres.generators.push_back({std::move(name), degree, origin, v, w});
        pres.differential.emplace_back();
        return pres.num_generators() - 1;
    };
    pres.x1 = add_gen("x1", deg_x1, Generator::Origin::base);
    pres.x2 = add_gen("x2", deg_x2, Generator::Origin::base);
    pres.y1 = add_gen("y1", deg_y1, Generator::Origin::base);
    pres.y2 = add_gen("y2", deg_y2, Generator::Origin::base);
    pres.y3 = add_gen("y3", deg_y3, Generator::Origin::base);
    pres.z = add_gen("z", deg_z, Generator::Origin::base);
    for (int v = 0; v < g.num_vertices(); ++v)
        pres.vertex_gen.push_back(add_gen("x_v" + std::to_string(v), deg_xv,
                                          Generator::Origin::vertex, v));
    for (const auto& [v, w] : g.edge_list())
        pres.edge_gen[{v, w}] =
            add_gen("z_(" + std::to_string(v) + "," + std::to_string(w) + ")",
                    deg_z, Generator::Origin::edge, v, w);

    auto mono = [](std::initializer_list<std::pair<int, int>> fs) {
        Monomial m;
        for (auto f : fs)
            if (f.second > 0) m.factors.push_back(f);
        std::sort(m.factors.begin(), m.factors.end());
        return m;
    };
    int X1 = pres.x1, X2 = pres.x2, Y1 = pres.y1, Y2 = pres.y2, Y3 = pres.y3;
    pres.differential[Y1] = GradedPoly::monomial(mono({{X1, 3}, {X2, 1}}), 1);
    pres.differential[Y2] = GradedPoly::monomial(mono({{X1, 2}, {X2, 2}}), 1);
    pres.differential[Y3] = GradedPoly::monomial(mono({{X1, 1}, {X2, 3}}), 1);

    int e18n = static_cast<int>(18 * n), e15n9 = static_cast<int>(15 * n + 9);
    int e18n11 = static_cast<int>(18 * n + 11), e5n3 = static_cast<int>(5 * n + 3);
    GradedPoly dz;
    dz.add_term(mono({{X1, e18n}, {X2, 2}, {Y1, 1}, {Y2, 1}}), 1);
    dz.add_term(mono({{X1, e18n + 1}, {X2, 1}, {Y1, 1}, {Y3, 1}}), -1);
    dz.add_term(mono({{X1, e18n + 2}, {Y2, 1}, {Y3, 1}}), 1);
    dz.add_term(mono({{X1, e18n11}}), 1);
    dz.add_term(mono({{X2, e15n9}}), 1);
    pres.differential[pres.z] = dz;

    for (const auto& [edge, gen] : pres.edge_gen) {
        auto [v, w] = edge;
        int xv = pres.vertex_gen[v], xw = pres.vertex_gen[w];
        GradedPoly d;
        d.add_term(mono({{xv, 3}}), 1);
        if (xv == xw)
            d.add_term(mono({{xv, 2}, {X2, e5n3}}), 1);  // loop edge
        else
            d.add_term(mono({{xv, 1}, {xw, 1}, {X2, e5n3}}), 1);
        d.add_term(mono({{X1, e18n11}}), 1);
        pres.differential[gen] = d;
    }

    // every differential raises degree by exactly one; even generators are
    // closed
    for (int gi = 0; gi < pres.num_generators(); ++gi) {
        const GradedPoly& d = pres.differential[gi];
        if (!pres.generators[gi].odd() && !d.is_zero())
            throw InternalInconsistency("even generator with nonzero differential");
        std::int64_t deg = -1;
        if (!pres.is_homogeneous(d, &deg))
            throw InternalInconsistency("non-homogeneous differential");
        if (!d.is_zero() && deg != pres.generators[gi].degree + 1)
            throw InternalInconsistency("differential does not raise degree by 1");
    }
    return pres;
}

bool ResidueReport::all_ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Entry& e) { return e.ok; });
}

ResidueReport check_d_squared(const SullivanPresentation& pres) {
    ResidueReport report;
    for (int gi = 0; gi < pres.num_generators(); ++gi) {
        GradedPoly dd = apply_derivation(pres, pres.differential[gi]);
        report.entries.push_back({"d(d " + pres.generators[gi].name + "))",
                                  dd.is_zero(),
                                  dd.is_zero() ? "" : render_poly(pres, dd)});
    }
    return report;
}

namespace {

void basis_dfs(const SullivanPresentation& pres, int gen, std::int64_t remaining,
               Monomial& current, std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    if (gen >= pres.num_generators()) return;
    std::int64_t d = pres.generators[gen].degree;
    int max_exp = pres.generators[gen].odd()
                      ? 1
                      : static_cast<int>(std::min<std::int64_t>(
                            remaining / std::max<std::int64_t>(d, 1), 1 << 20));
    basis_dfs(pres, gen + 1, remaining, current, out);  // exponent 0
    for (int e = 1; e <= max_exp; ++e) {
        std::int64_t used = checked_mul(d, e);
        if (used > remaining) break;
        current.factors.push_back({gen, e});
        basis_dfs(pres, gen + 1, remaining - used, current, out);
        current.factors.pop_back();
    }
}

}  // namespace

std::vector<Monomial> basis_at_degree(const SullivanPresentation& pres,
                                      std::int64_t degree) {
    checked_degree(degree);
    std::vector<Monomial> out;
    Monomial current;
    basis_dfs(pres, 0, degree, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

GradedPoly apply_morphism(const AlgebraMorphism& f, const GradedPoly& p) {
    const SullivanPresentation& tgt = *f.target;
    GradedPoly out;
    for (const auto& [m, coeff] : p.terms()) {
        GradedPoly term = GradedPoly::monomial(Monomial{}, coeff);
        for (const auto& [g, e] : m.factors) {
            GradedPoly img_pow = poly_pow(tgt, f.images.at(g), e);
            term = poly_multiply(tgt, term, img_pow);
            if (term.is_zero()) break;
        }
        out = out + term;
    }
    return out;
}

void verify_morphism(const AlgebraMorphism& f) {
    const SullivanPresentation& src = *f.source;
    const SullivanPresentation& tgt = *f.target;
    if (static_cast<int>(f.images.size()) != src.num_generators())
        throw CommutationFailed("morphism image list has wrong size");
    for (int gi = 0; gi < src.num_generators(); ++gi) {
        std::int64_t deg = -1;
        if (!tgt.is_homogeneous(f.images[gi], &deg))
            throw CommutationFailed("image of " + src.generators[gi].name +
                                    " is not homogeneous");
        if (!f.images[gi].is_zero() && deg != src.generators[gi].degree)
            throw CommutationFailed("image of " + src.generators[gi].name +
                                    " has the wrong degree");
    }
    for (int gi = 0; gi < src.num_generators(); ++gi) {
        GradedPoly lhs = apply_derivation(tgt, f.images[gi]);
        GradedPoly rhs = apply_morphism(f, src.differential[gi]);
        if (!(lhs == rhs))
            throw CommutationFailed("d-commutation fails at " +
                                    src.generators[gi].name);
    }
}

AlgebraMorphism induced_algebra_morphism(const std::vector<int>& sigma,
                                         const SullivanPresentation& m1,
                                         const SullivanPresentation& m2) {
    if (m1.n != m2.n)
        throw MixedPresentation("presentations have different n");
    AlgebraMorphism f{&m1, &m2, {}};
    f.images.resize(m1.num_generators());
    auto base = [&](int src_idx, int tgt_idx) {
        f.images[src_idx] = GradedPoly::generator(tgt_idx);
    };
    base(m1.x1, m2.x1);
    base(m1.x2, m2.x2);
    base(m1.y1, m2.y1);
    base(m1.y2, m2.y2);
    base(m1.y3, m2.y3);
    base(m1.z, m2.z);
    for (int v = 0; v < m1.graph.num_vertices(); ++v)
        f.images[m1.vertex_gen[v]] =
            GradedPoly::generator(m2.vertex_gen.at(sigma.at(v)));
    for (const auto& [edge, gen] : m1.edge_gen) {
        auto [v, w] = edge;
        auto it = m2.edge_gen.find({sigma.at(v), sigma.at(w)});
        if (it == m2.edge_gen.end())
            throw CommutationFailed("sigma is not a digraph homomorphism");
        f.images[gen] = GradedPoly::generator(it->second);
    }
    verify_morphism(f);
    return f;
}

AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g) {
    if (g.target != f.source)
        throw MixedPresentation("morphisms are not composable");
    AlgebraMorphism out{g.source, f.target, {}};
    for (const GradedPoly& img : g.images)
        out.images.push_back(apply_morphism(f, img));
    return out;
}

AlgebraMorphism identity_morphism(const SullivanPresentation& m) {
    AlgebraMorphism f{&m, &m, {}};
    for (int gi = 0; gi < m.num_generators(); ++gi)
        f.images.push_back(GradedPoly::generator(gi));
    return f;
}

AlgebraMorphism zero_morphism(const SullivanPresentation& m1,
                              const SullivanPresentation& m2) {
    AlgebraMorphism f{&m1, &m2, {}};
    f.images.assign(m1.num_generators(), GradedPoly::zero());
    return f;
}

SullivanPresentation pure_differential(const SullivanPresentation& pres) {
    SullivanPresentation pure = pres;
    for (int gi = 0; gi < pure.num_generators(); ++gi) {
        GradedPoly filtered;
        for (const auto& [m, c] : pres.differential[gi].terms()) {
            bool even_only = true;
            for (const auto& [g, e] : m.factors)
                if (pres.generators[g].odd()) even_only = false;
            if (even_only) filtered.add_term(m, c);
        }
        pure.differential[gi] = filtered;
    }
    return pure;
}

ResidueReport check_ellipticity_witnesses(const SullivanPresentation& pres) {
    SullivanPresentation pure = pure_differential(pres);
    std::int64_t n = pres.n;
    ResidueReport report;
    auto power = [](int gen, std::int64_t e) {
        return GradedPoly::monomial(Monomial{{{gen, static_cast<int>(e)}}}, 1);
    };
    auto check = [&](const std::string& what, const GradedPoly& lhs,
                     const GradedPoly& rhs) {
        GradedPoly residue = lhs - rhs;
        report.entries.push_back({what, residue.is_zero(),
                                  residue.is_zero() ? ""
                                                    : render_poly(pure, residue)});
    };
    // d_sigma(z x1 - y3 x2^{15n+6}) = x1^{18n+12}
    GradedPoly w1 = poly_multiply(pure, GradedPoly::generator(pure.z),
                                  GradedPoly::generator(pure.x1)) -
                    poly_multiply(pure, GradedPoly::generator(pure.y3),
                                  power(pure.x2, 15 * n + 6));
    check("d_sigma(z*x1 - y3*x2^(15n+6)) = x1^(18n+12)",
          apply_derivation(pure, w1), power(pure.x1, 18 * n + 12));
    // d_sigma(z x2 - y1 x1^{18n+8}) = x2^{15n+10}
    GradedPoly w2 = poly_multiply(pure, GradedPoly::generator(pure.z),
                                  GradedPoly::generator(pure.x2)) -
                    poly_multiply(pure, GradedPoly::generator(pure.y1),
                                  power(pure.x1, 18 * n + 8));
    check("d_sigma(z*x2 - y1*x1^(18n+8)) = x2^(15n+10)",
          apply_derivation(pure, w2), power(pure.x2, 15 * n + 10));
    // each edge relation is d_sigma-exact: it is d_sigma of the edge generator
    for (const auto& [edge, gen] : pres.edge_gen) {
        GradedPoly expected;
        int xv = pres.vertex_gen[edge.first], xw = pres.vertex_gen[edge.second];
        Monomial cube{{{xv, 3}}};
        expected.add_term(cube, 1);
        Monomial mixed;
        if (xv == xw)
            mixed.factors = {{xv, 2}, {pres.x2, static_cast<int>(5 * n + 3)}};
        else
            mixed.factors = {{xv, 1}, {xw, 1}, {pres.x2, static_cast<int>(5 * n + 3)}};
        std::sort(mixed.factors.begin(), mixed.factors.end());
        expected.add_term(mixed, 1);
        expected.add_term(Monomial{{{pres.x1, static_cast<int>(18 * n + 11)}}}, 1);
        check("d_sigma(" + pres.generators[gen].name + ") is the edge relation",
              apply_derivation(pure, GradedPoly::generator(gen)), expected);
    }
    return report;
}

namespace {

struct MorphismSearch {
    const SullivanPresentation& src;
    const SullivanPresentation& tgt;
    std::vector<std::vector<GradedPoly>> candidates;  // per source generator
    std::vector<int> order;                           // generator positions
    std::vector<std::vector<int>> check_at;           // gens checkable per step
    // for odd generators: candidates keyed by the derivative of the image,
    // so the image is solved from d-commutation rather than enumerated
    std::vector<const std::map<std::map<Monomial, Rational>,
                               std::vector<GradedPoly>>*> solve_table;
    std::map<std::int64_t,
             std::map<std::map<Monomial, Rational>, std::vector<GradedPoly>>>
        d_index_by_degree;
    AlgebraMorphism current;
    std::vector<AlgebraMorphism> found;
    std::int64_t nodes = 0, budget;

    MorphismSearch(const SullivanPresentation& s, const SullivanPresentation& t,
                   const std::vector<Rational>& coeffs, std::int64_t b)
        : src(s), tgt(t), budget(b) {
        current.source = &src;
        current.target = &tgt;
        current.images.assign(src.num_generators(), GradedPoly::zero());

        // assignment order: base generators, then per edge: x_v, x_w, z_(v,w)
        std::vector<bool> placed(src.num_generators(), false);
        auto place = [&](int g) {
            if (g >= 0 && !placed[g]) {
                placed[g] = true;
                order.push_back(g);
            }
        };
        for (int g : {src.x1, src.x2, src.y1, src.y2, src.y3, src.z}) place(g);
        for (const auto& [edge, gen] : src.edge_gen) {
            place(src.vertex_gen[edge.first]);
            place(src.vertex_gen[edge.second]);
            place(gen);
        }
        for (int g = 0; g < src.num_generators(); ++g) place(g);

        // candidates: all coefficient combinations over the degree basis
        std::map<std::int64_t, std::vector<GradedPoly>> by_degree;
        for (int g : order) {
            std::int64_t d = src.generators[g].degree;
            auto it = by_degree.find(d);
            if (it == by_degree.end()) {
                std::vector<Monomial> basis = basis_at_degree(tgt, d);
                double count = 1;
                for (size_t i = 0; i < basis.size(); ++i) count *= coeffs.size();
                if (count > 2e6)
                    throw SearchBudgetExceeded(
                        "candidate space too large at degree " + std::to_string(d));
                std::vector<GradedPoly> cands;
                std::vector<size_t> pick(basis.size(), 0);
                for (;;) {
                    GradedPoly p;
                    for (size_t i = 0; i < basis.size(); ++i)
                        p.add_term(basis[i], coeffs[pick[i]]);
                    cands.push_back(std::move(p));
                    size_t i = 0;
                    while (i < basis.size() && ++pick[i] == coeffs.size())
                        pick[i++] = 0;
                    if (i == basis.size()) break;
                }
                it = by_degree.emplace(d, std::move(cands)).first;
            }
        }
        candidates.resize(src.num_generators());
        for (int g : order) candidates[g] = by_degree[src.generators[g].degree];

        // commutation for g is checkable once g and the support of d(g) are
        // assigned
        std::vector<int> pos_of(src.num_generators(), -1);
        for (size_t p = 0; p < order.size(); ++p) pos_of[order[p]] = static_cast<int>(p);
        check_at.resize(order.size());
        std::vector<int> support_pos(src.num_generators(), -1);
        for (int g = 0; g < src.num_generators(); ++g) {
            int last = pos_of[g];
            for (const auto& [m, c] : src.differential[g].terms())
                for (const auto& [gg, e] : m.factors) {
                    last = std::max(last, pos_of[gg]);
                    support_pos[g] = std::max(support_pos[g], pos_of[gg]);
                }
            check_at[last].push_back(g);
        }

        // image of an odd generator is forced by d-commutation when its
        // differential's support is already assigned; index candidates by
        // their derivative so it becomes a lookup
        solve_table.assign(order.size(), nullptr);
        for (size_t p = 0; p < order.size(); ++p) {
            int g = order[p];
            if (!src.generators[g].odd() || src.differential[g].is_zero())
                continue;
            if (support_pos[g] >= static_cast<int>(p)) continue;
            std::int64_t d = src.generators[g].degree;
            auto it = d_index_by_degree.find(d);
            if (it == d_index_by_degree.end()) {
                std::map<std::map<Monomial, Rational>, std::vector<GradedPoly>>
                    index;
                for (const GradedPoly& cand : candidates[g])
                    index[apply_derivation(tgt, cand).terms()].push_back(cand);
                it = d_index_by_degree.emplace(d, std::move(index)).first;
            }
            solve_table[p] = &it->second;
        }
    }

    bool commutes(int g) const {
        GradedPoly lhs = apply_derivation(tgt, current.images[g]);
        GradedPoly rhs = apply_morphism(current, src.differential[g]);
        return lhs == rhs;
    }

    void search(size_t pos) {
        if (pos == order.size()) {
            AlgebraMorphism m = current;
            verify_morphism(m);
            found.push_back(std::move(m));
            return;
        }
        int g = order[pos];
        if (solve_table[pos]) {
            if (++nodes > budget)
                throw SearchBudgetExceeded("morphism enumeration exceeded budget");
            GradedPoly rhs = apply_morphism(current, src.differential[g]);
            auto it = solve_table[pos]->find(rhs.terms());
            if (it != solve_table[pos]->end()) {
                for (const GradedPoly& cand : it->second) {
                    current.images[g] = cand;
                    bool ok = true;
                    for (int cg : check_at[pos])
                        if (cg != g && !commutes(cg)) {
                            ok = false;
                            break;
                        }
                    if (ok) search(pos + 1);
                }
            }
            current.images[g] = GradedPoly::zero();
            return;
        }
        for (const GradedPoly& cand : candidates[g]) {
            if (++nodes > budget)
                throw SearchBudgetExceeded("morphism enumeration exceeded budget");
            current.images[g] = cand;
            bool ok = true;
            for (int cg : check_at[pos])
                if (!commutes(cg)) {
                    ok = false;
                    break;
                }
            if (ok) search(pos + 1);
        }
        current.images[g] = GradedPoly::zero();
    }
};

}  // namespace

std::vector<AlgebraMorphism> enumerate_morphisms_constrained(
    const SullivanPresentation& m1, const SullivanPresentation& m2,
    const std::vector<Rational>& coeff_set, std::int64_t node_budget) {
    if (m1.n != m2.n)
        throw MixedPresentation("presentations have different n");
    MorphismSearch s(m1, m2, coeff_set, node_budget);
    s.search(0);
    std::sort(s.found.begin(), s.found.end(),
              [](const AlgebraMorphism& a, const AlgebraMorphism& b) {
                  for (size_t i = 0; i < a.images.size(); ++i) {
                      if (!(a.images[i] == b.images[i]))
                          return a.images[i].terms() < b.images[i].terms();
                  }
                  return false;
              });
    return s.found;
}

std::vector<std::map<int, Rational>> linear_part(const AlgebraMorphism& f) {
    std::vector<std::map<int, Rational>> out;
    for (const GradedPoly& img : f.images) {
        std::map<int, Rational> row;
        for (const auto& [m, c] : img.terms())
            if (m.factors.size() == 1 && m.factors[0].second == 1)
                row[m.factors[0].first] = c;
        out.push_back(std::move(row));
    }
    return out;
}

std::string render_poly(const SullivanPresentation& pres, const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += c.str();
        for (const auto& [g, e] : m.factors) {
            out += "*" + pres.generators[g].name;
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

}  // namespace arrowreal
