#pragma once

// Generators for the worked example theories: torsors under a finite group,
// finite-dimensional vector spaces over a finite field, and continuous flat
// functors on a finite monic site.

#include "geocoord/logic.hpp"
#include "geocoord/morleyize.hpp"
#include "geocoord/params.hpp"
#include "geocoord/structure.hpp"
#include "geocoord/syntax.hpp"

#include <memory>
#include <string>
#include <vector>

namespace geocoord {

struct GeneratedTheory {
    Theory theory;
    WitnessScheme witness;
    std::vector<std::pair<std::string, ParameterTable>> tables;

    [[nodiscard]] TheoryDocument document() const { return make_document(theory, {witness}, tables); }
};

namespace detail {

inline Term var(const std::string& v) { return Term::var(v); }
inline Term fn1(const std::string& f, Term a) { return Term::app(f, {std::move(a)}); }

inline std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

/// All tuples in {0..q-1}^n, lexicographically.
inline std::vector<std::vector<std::size_t>> coefficient_tuples(std::size_t q, std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < ipow(q, n); ++i) {
        std::vector<std::size_t> t(n);
        auto idx = i;
        for (std::size_t j = n; j-- > 0;) {
            t[j] = idx % q;
            idx /= q;
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// G-torsors

/// Function symbols are the group labels; the transitivity disjunction and
/// the Θ family range over the group table "G".
inline GeneratedTheory gen_torsor(const FiniteGroup& g, const std::string& name = "torsor") {
    GeneratedTheory out;
    auto& t = out.theory;
    t.name = name;
    t.provenance = "free and transitive actions of a group of order " + std::to_string(g.order());
    const auto& L = g.labels();
    for (const auto& l : L) t.signature.add_function(l, 1);
    const auto x = detail::var("x"), y = detail::var("y");

    t.axioms.push_back({"unit", {"x"}, Formula::top(), Formula::eq(detail::fn1(L[g.identity()], x), x)});
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            t.axioms.push_back({"act_" + L[a] + "_" + L[b], {"x"}, Formula::top(),
                                Formula::eq(detail::fn1(L[a], detail::fn1(L[b], x)), detail::fn1(L[g.mul(a, b)], x))});
    t.axioms.push_back({"inhabited", {}, Formula::top(), Formula::exists({"x"}, Formula::eq(x, x))});
    auto orbit = std::make_shared<DisjunctionFamily>("g", FamilyDomain::of_table("G", L),
                                                     Formula::eq(y, Term::param_app("g", {x})));
    t.axioms.push_back({"transitive", {"x", "y"}, Formula::eq(y, y) && Formula::eq(x, x), Formula::family(orbit)});
    for (std::size_t a = 0; a < g.order(); ++a)
        if (a != g.identity())
            t.axioms.push_back({"free_" + L[a], {"x"}, Formula::eq(detail::fn1(L[a], x), x), Formula::bot()});

    PsiEntry psi{"X", {"x"}, Formula::eq(x, x), "y", {}};
    psi.thetas.members = std::shared_ptr<const DisjunctionFamily>(orbit);
    out.witness = {"orbit", {std::move(psi)}};
    out.tables.emplace_back("G", g);
    return out;
}

// ---------------------------------------------------------------------------
// Finite-dimensional vector spaces

inline std::string scalar_symbol(const FiniteField& f, std::size_t lambda) { return "s" + f.label(lambda); }

/// λ1·x1 + ... + λn·xn as a left-nested sum; the empty sum is `zero`.
inline Term linear_combination(const FiniteField& f, const std::vector<std::size_t>& lambda,
                               const std::vector<Term>& xs) {
    if (lambda.empty()) return Term::app("zero");
    Term acc = detail::fn1(scalar_symbol(f, lambda[0]), xs[0]);
    for (std::size_t i = 1; i < lambda.size(); ++i)
        acc = Term::app("plus", {acc, detail::fn1(scalar_symbol(f, lambda[i]), xs[i])});
    return acc;
}

struct VectSymbols {
    std::string nonzero = "NZ";
    /// NE<n>(x̄): no vector extends x̄ to a longer independent tuple.
    static std::string no_extension(std::size_t n) { return "NE" + std::to_string(n); }
};

/// B_n(x1..xn): the x_i are nonzero, every nontrivial combination is
/// nonzero, and no nonzero y extends them independently.
inline Formula basis_formula(const FiniteField& f, std::size_t n) {
    const VectSymbols sym;
    const auto names = detail::numbered("x", n);
    std::vector<Term> xs;
    for (const auto& v : names) xs.push_back(Term::var(v));
    std::vector<Formula> parts;
    for (const auto& x : xs) parts.push_back(Formula::rel(sym.nonzero, {x}));
    for (const auto& lambda : detail::coefficient_tuples(f.order(), n)) {
        if (std::all_of(lambda.begin(), lambda.end(), [&](std::size_t l) { return l == f.zero(); })) continue;
        parts.push_back(Formula::rel(sym.nonzero, {linear_combination(f, lambda, xs)}));
    }
    parts.push_back(Formula::rel(VectSymbols::no_extension(n), xs));
    return Formula::conj(std::move(parts));
}

/// ∃y. y ≠ 0 ∧ ⋀_{λ ∈ F^{n+1}∖0} λ·(x̄,y) ≠ 0, over the NZ symbol.
inline Formula extension_formula(const FiniteField& f, std::size_t n) {
    const VectSymbols sym;
    std::vector<Term> xs;
    for (const auto& v : detail::numbered("x", n)) xs.push_back(Term::var(v));
    xs.push_back(Term::var("y"));
    std::vector<Formula> parts{Formula::rel(sym.nonzero, {Term::var("y")})};
    for (const auto& lambda : detail::coefficient_tuples(f.order(), n + 1)) {
        if (std::all_of(lambda.begin(), lambda.end(), [&](std::size_t l) { return l == f.zero(); })) continue;
        parts.push_back(Formula::rel(sym.nonzero, {linear_combination(f, lambda, xs)}));
    }
    return Formula::exists({"y"}, Formula::conj(std::move(parts)));
}

inline constexpr std::size_t kMaxVectDimension = 3;

inline GeneratedTheory gen_vect(const FiniteField& f, std::size_t dmax, const std::string& name = "vect") {
    if (dmax > kMaxVectDimension)
        throw InvalidParameters("dimension bound " + std::to_string(dmax) + " exceeds " +
                                std::to_string(kMaxVectDimension));
    GeneratedTheory out;
    Theory base;
    base.name = name;
    base.provenance = "vector spaces of dimension at most " + std::to_string(dmax) + " over a field of order " +
                      std::to_string(f.order());
    auto& sig = base.signature;
    sig.add_function("plus", 2);
    sig.add_function("zero", 0);
    for (std::size_t l = 0; l < f.order(); ++l) sig.add_function(scalar_symbol(f, l), 1);

    const auto x = detail::var("x"), y = detail::var("y"), z = detail::var("z");
    const auto zero = Term::app("zero");
    auto plus = [](Term a, Term b) { return Term::app("plus", {std::move(a), std::move(b)}); };
    auto s = [&](std::size_t l, Term a) { return detail::fn1(scalar_symbol(f, l), std::move(a)); };
    auto law = [&](std::string n, std::vector<std::string> ctx, Term a, Term b) {
        base.axioms.push_back({std::move(n), std::move(ctx), Formula::top(), Formula::eq(std::move(a), std::move(b))});
    };

    law("plus_assoc", {"x", "y", "z"}, plus(plus(x, y), z), plus(x, plus(y, z)));
    law("plus_comm", {"x", "y"}, plus(x, y), plus(y, x));
    law("plus_zero", {"x"}, plus(x, zero), x);
    law("plus_neg", {"x"}, plus(x, s(f.neg(f.one()), x)), zero);
    law("scale_one", {"x"}, s(f.one(), x), x);
    for (std::size_t a = 0; a < f.order(); ++a) {
        law("scale_" + f.label(a) + "_plus", {"x", "y"}, s(a, plus(x, y)), plus(s(a, x), s(a, y)));
        for (std::size_t b = 0; b < f.order(); ++b) {
            law("sum_" + f.label(a) + "_" + f.label(b), {"x"}, s(f.add(a, b), x), plus(s(a, x), s(b, x)));
            law("prod_" + f.label(a) + "_" + f.label(b), {"x"}, s(f.mul(a, b), x), s(a, s(b, x)));
        }
    }

    const VectSymbols sym;
    Theory t = morleyize(base, {{Formula::eq(x, zero), std::vector<std::string>{"x"}, sym.nonzero}});
    std::vector<MorleyTarget> extensions;
    for (std::size_t n = 0; n <= dmax; ++n)
        extensions.push_back({extension_formula(f, n), detail::numbered("x", n), VectSymbols::no_extension(n)});
    t = morleyize(t, extensions);

    DisjunctionFamily::Cases cases;
    for (std::size_t n = 0; n <= dmax; ++n)
        cases.emplace_back(std::to_string(n), Formula::exists(detail::numbered("x", n), basis_formula(f, n)));
    auto dims = std::make_shared<DisjunctionFamily>("n", FamilyDomain::range_capped(0, static_cast<long>(dmax)),
                                                    std::move(cases));
    t.axioms.push_back({"finite_dimension", {}, Formula::top(), Formula::family(dims)});

    WitnessScheme w{"basis", {}};
    for (std::size_t n = 0; n <= dmax; ++n) {
        PsiEntry psi{"B" + std::to_string(n), detail::numbered("x", n), basis_formula(f, n), "y", {}};
        std::vector<Term> xs;
        for (const auto& v : psi.context) xs.push_back(Term::var(v));
        std::vector<Formula> thetas;
        for (const auto& lambda : detail::coefficient_tuples(f.order(), n))
            thetas.push_back(psi.formula && Formula::eq(linear_combination(f, lambda, xs), y));
        psi.thetas.members = std::move(thetas);
        w.psis.push_back(std::move(psi));
    }
    out.theory = std::move(t);
    out.witness = std::move(w);
    out.tables.emplace_back("F", f);
    return out;
}

// ---------------------------------------------------------------------------
// Continuous flat functors on a monic site

inline std::string object_symbol(const FiniteCategory& c, std::size_t o) { return "R_" + c.objects()[o]; }
inline std::string arrow_symbol(const FiniteCategory& c, std::size_t a) { return "G_" + c.arrow(a).name; }

/// f̄(a) = b, i.e. the graph relation of f.
inline Formula graph(const FiniteCategory& c, std::size_t f, Term a, Term b) {
    return Formula::rel(arrow_symbol(c, f), {std::move(a), std::move(b)});
}

inline GeneratedTheory gen_flat_monic(const FiniteCategory& c, const std::string& name = "flat") {
    if (auto mono = check_monic(c); !mono.monic) {
        const auto& [f, h, h2] = *mono.violation;
        throw InvalidParameters("arrow '" + c.arrow(f).name + "' is not mono: it equalises '" + c.arrow(h).name +
                                "' and '" + c.arrow(h2).name + "'");
    }
    GeneratedTheory out;
    auto& t = out.theory;
    t.name = name;
    t.provenance = "continuous flat functors on a monic site with " + std::to_string(c.objects().size()) +
                   " objects and " + std::to_string(c.arrows().size()) + " arrows";
    const auto nobj = c.objects().size();
    const auto narr = c.arrows().size();
    for (std::size_t o = 0; o < nobj; ++o) t.signature.add_relation(object_symbol(c, o), 1);
    for (std::size_t a = 0; a < narr; ++a) t.signature.add_relation(arrow_symbol(c, a), 2);

    const auto x = detail::var("x"), y = detail::var("y"), z = detail::var("z"), y2 = detail::var("y'");
    auto R = [&](std::size_t o, Term v) { return Formula::rel(object_symbol(c, o), {std::move(v)}); };

    // (1) the R_c cover the carrier, and some R_c is inhabited
    std::vector<Formula> cover, inhabited;
    for (std::size_t o = 0; o < nobj; ++o) {
        cover.push_back(R(o, x));
        inhabited.push_back(Formula::exists({"x"}, R(o, x)));
    }
    t.axioms.push_back({"sorts_cover", {"x"}, Formula::eq(x, x), Formula::disj(cover)});
    t.axioms.push_back({"inhabited", {}, Formula::top(), Formula::disj(inhabited)});

    // (2) each arrow is the graph of a function R_c → R_d; functoriality
    for (std::size_t a = 0; a < narr; ++a) {
        const auto& ar = c.arrow(a);
        const auto n = ar.name;
        t.axioms.push_back({"graph_" + n + "_typed", {"x", "y"}, graph(c, a, x, y), R(ar.source, x) && R(ar.target, y)});
        t.axioms.push_back({"graph_" + n + "_total", {"x"}, R(ar.source, x), Formula::exists({"y"}, graph(c, a, x, y))});
        t.axioms.push_back(
            {"graph_" + n + "_functional", {"x", "y", "y'"}, graph(c, a, x, y) && graph(c, a, x, y2), Formula::eq(y, y2)});
    }
    for (std::size_t o = 0; o < nobj; ++o)
        t.axioms.push_back({"identity_" + c.objects()[o], {"x"}, R(o, x),
                            Formula::exists({"y"}, graph(c, c.identity(o), x, y) && Formula::eq(y, x))});
    for (std::size_t f = 0; f < narr; ++f)
        for (std::size_t h = 0; h < narr; ++h) {
            if (c.arrow(f).target != c.arrow(h).source) continue;
            const auto hf = *c.compose(h, f);
            t.axioms.push_back({"compose_" + c.arrow(h).name + "_" + c.arrow(f).name, {"x"}, R(c.arrow(f).source, x),
                                Formula::exists({"y", "z"}, Formula::conj({graph(c, f, x, y), graph(c, h, y, z),
                                                                           graph(c, hf, x, z)}))});
        }

    // (3) flatness: spans into any pair of objects, and equalisers
    for (std::size_t a = 0; a < nobj; ++a)
        for (std::size_t b = 0; b < nobj; ++b) {
            std::vector<Formula> spans;
            for (std::size_t f = 0; f < narr; ++f)
                for (std::size_t g = 0; g < narr; ++g)
                    if (c.arrow(f).target == a && c.arrow(g).target == b && c.arrow(f).source == c.arrow(g).source)
                        spans.push_back(Formula::exists({"z"}, graph(c, f, z, x) && graph(c, g, z, y)));
            t.axioms.push_back({"span_" + c.objects()[a] + "_" + c.objects()[b], {"x", "y"}, R(a, x) && R(b, y),
                                Formula::disj(spans)});
        }
    for (std::size_t f = 0; f < narr; ++f)
        for (std::size_t g = 0; g < narr; ++g) {
            const auto& F = c.arrow(f);
            const auto& G = c.arrow(g);
            if (F.source != G.source || F.target != G.target) continue;
            std::vector<Formula> eqs;
            for (std::size_t h = 0; h < narr; ++h)
                if (c.arrow(h).target == F.source && c.compose(f, h) == c.compose(g, h))
                    eqs.push_back(Formula::exists({"z"}, graph(c, h, z, x)));
            t.axioms.push_back({"equalise_" + F.name + "_" + G.name, {"x"},
                                Formula::exists({"y"}, graph(c, f, x, y) && graph(c, g, x, y)), Formula::disj(eqs)});
        }

    // (4) covering sieves
    const auto sieves = c.covering_sieves();
    for (std::size_t i = 0; i < sieves.size(); ++i) {
        const auto& S = sieves[i];
        std::vector<Formula> parts;
        for (auto f : S.arrows) parts.push_back(Formula::exists({"y"}, graph(c, f, y, x)));
        t.axioms.push_back(
            {"cover_" + c.objects()[S.object] + "_" + std::to_string(i + 1), {"x"}, R(S.object, x), Formula::disj(parts)});
    }

    WitnessScheme w{"spans", {}};
    for (std::size_t a = 0; a < nobj; ++a) {
        PsiEntry psi{object_symbol(c, a), {"x"}, R(a, x), "y", {}};
        std::vector<Formula> thetas;
        for (std::size_t b = 0; b < nobj; ++b)
            for (std::size_t f = 0; f < narr; ++f)
                for (std::size_t g = 0; g < narr; ++g)
                    if (c.arrow(f).target == a && c.arrow(g).target == b && c.arrow(f).source == c.arrow(g).source)
                        thetas.push_back(Formula::conj(
                            {R(a, x), R(b, y), Formula::exists({"z"}, graph(c, f, z, x) && graph(c, g, z, y))}));
        psi.thetas.members = std::move(thetas);
        w.psis.push_back(std::move(psi));
    }
    out.witness = std::move(w);
    out.tables.emplace_back("C", c);
    return out;
}

/// f̄(x) = f̄(y) ⊢ x = y for every arrow f.
inline std::vector<Sequent> flat_mono_sequents(const FiniteCategory& c) {
    std::vector<Sequent> out;
    const auto x = detail::var("x"), y = detail::var("y"), w = detail::var("w");
    for (std::size_t f = 0; f < c.arrows().size(); ++f)
        out.push_back({"mono_" + c.arrow(f).name, {"x", "y"},
                       Formula::exists({"w"}, graph(c, f, x, w) && graph(c, f, y, w)), Formula::eq(x, y)});
    return out;
}

// ---------------------------------------------------------------------------
// Presets

inline std::optional<FiniteGroup> group_preset(const std::string& name) {
    if (name == "z1") return FiniteGroup::cyclic(1);
    if (name == "z2") return FiniteGroup::cyclic(2);
    if (name == "z3") return FiniteGroup::cyclic(3);
    if (name == "z4") return FiniteGroup::cyclic(4);
    if (name == "s3") return FiniteGroup::symmetric3();
    return std::nullopt;
}

inline std::optional<FiniteField> field_preset(const std::string& name) {
    if (name == "f2") return FiniteField::prime(2);
    if (name == "f3") return FiniteField::prime(3);
    if (name == "f4") return FiniteField::f4();
    if (name == "f5") return FiniteField::prime(5);
    return std::nullopt;
}

inline std::optional<FiniteCategory> category_preset(const std::string& name) {
    if (name == "point") return FiniteCategory::point();
    if (name == "arrow") return FiniteCategory::arrow_category();
    if (name == "split") return FiniteCategory::split_idempotent();
    return std::nullopt;
}

}  // namespace geocoord
