#include "geocoord/checkers.hpp"
#include "geocoord/maps.hpp"
#include "geocoord/mutants.hpp"
#include "geocoord/search.hpp"

#include "oracle.hpp"
#include "random_formula.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace geocoord;

namespace {

Term v(const std::string& n) { return Term::var(n); }

std::vector<std::pair<std::vector<std::string>, Formula>> formulae_of(const GeneratedTheory& g, std::size_t n) {
    std::vector<std::pair<std::vector<std::string>, Formula>> out;
    for (const auto& ax : g.theory.axioms) {
        out.emplace_back(ax.context, ax.antecedent);
        out.emplace_back(ax.context, ax.consequent);
    }
    for (const auto& p : g.witness.psis) {
        out.emplace_back(p.context, p.formula);
        auto ctx = p.context;
        ctx.push_back(p.extra);
        if (p.thetas.is_family())
            for (const auto& th : p.thetas.disjunction().family().instances(n)) out.emplace_back(ctx, th);
        else
            for (const auto& th : p.thetas.list()) out.emplace_back(ctx, th);
    }
    return out;
}

void expect_eval_agrees(const FiniteStructure& m, const std::vector<std::string>& ctx, const Formula& f,
                        const std::string& where) {
    for (const auto& a : oracle::assignments(ctx, m.size()))
        ASSERT_EQ(eval(m, f, a), oracle::satisfies(m, f, a)) << where;
}

std::shared_ptr<const Signature> sig_of(const Theory& t) { return std::make_shared<const Signature>(t.signature); }

Theory empty_theory() { return {}; }

}  // namespace

TEST(Eval, AgreesWithNaiveOnLibraryModels) {
    for (const auto& nt : library_theories())
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& m : enumerate_models(nt.generated.theory, n, true))
                for (const auto& [ctx, f] : formulae_of(nt.generated, n))
                    expect_eval_agrees(m, ctx, f, nt.name + " size " + std::to_string(n));
}

TEST(Eval, AgreesWithNaiveOnRandomStructuresOfLibrarySignatures) {
    std::mt19937_64 rng(31);
    for (const auto& nt : library_theories()) {
        const auto sig = sig_of(nt.generated.theory);
        for (std::size_t n = 1; n <= 3; ++n)
            for (int k = 0; k < 4; ++k) {
                const auto m = oracle::random_structure(sig, n, rng);
                for (const auto& [ctx, f] : formulae_of(nt.generated, n)) expect_eval_agrees(m, ctx, f, nt.name);
            }
    }
}

TEST(Eval, AgreesWithNaiveOnRandomFormulae) {
    std::mt19937_64 rng(17);
    randf::Generator gen(17);
    const auto sig = randf::signature();
    for (int i = 0; i < 400; ++i) {
        const auto n = 1 + rng() % 3;
        const auto m = oracle::random_structure(sig, n, rng);
        const auto f = gen.formula(3);
        expect_eval_agrees(m, randf::variables(), f, std::to_string(i));
    }
}

TEST(Eval, ExhaustiveOverAllStructuresOfASmallSignature) {
    auto sig = std::make_shared<Signature>();
    sig->add_function("f", 1);
    sig->add_relation("R", 1);
    randf::Generator gen(3);
    std::vector<Formula> fs;
    for (int i = 0; i < 40; ++i) {
        // only symbols f and R: rebuild from a tiny grammar
        const auto k = gen.pick(4);
        const auto x = v(gen.variable()), y = v(gen.variable());
        switch (k) {
        case 0: fs.push_back(Formula::exists({"y"}, Formula::eq(Term::app("f", {x}), y) && Formula::rel("R", {y}))); break;
        case 1: fs.push_back(Formula::rel("R", {Term::app("f", {Term::app("f", {x})})}) || Formula::eq(x, y)); break;
        case 2: fs.push_back(Formula::exists({"z"}, Formula::eq(Term::app("f", {v("z")}), x))); break;
        default: fs.push_back(Formula::eq(Term::app("f", {x}), Term::app("f", {y})) && Formula::rel("R", {x})); break;
        }
    }
    for (std::size_t n = 0; n <= 3; ++n) {
        std::size_t total = ipow(n, n) * ipow(2, n);
        for (std::size_t code = 0; code < total; ++code) {
            FiniteStructure m(sig, n);
            auto c = code;
            for (std::size_t x = 0; x < n; ++x) {
                m.set_fn("f", {static_cast<int>(x)}, static_cast<int>(c % n));
                c /= n;
            }
            for (std::size_t x = 0; x < n; ++x) {
                m.set_rel("R", {static_cast<int>(x)}, c % 2 == 1);
                c /= 2;
            }
            for (const auto& f : fs) expect_eval_agrees(m, randf::variables(), f, "exhaustive");
        }
    }
}

TEST(HoldsSequent, Examples) {
    auto sig = std::make_shared<Signature>();
    sig->add_relation("R", 1);
    FiniteStructure m(sig, 2);
    m.set_rel("R", {1});
    const Sequent all{"all", {"x"}, Formula::top(), Formula::rel("R", {v("x")})};
    const auto r = holds_sequent(m, all);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.counterexample);
    EXPECT_EQ(r.counterexample->at("x"), 0);
    const Sequent some{"some", {}, Formula::top(), Formula::exists({"x"}, Formula::rel("R", {v("x")}))};
    EXPECT_TRUE(holds_sequent(m, some).holds);
    EXPECT_FALSE(holds_sequent(FiniteStructure(sig, 0), some).holds);
    EXPECT_TRUE(holds_sequent(FiniteStructure(sig, 0), all).holds);
}

TEST(Enumerate, TorsorZ3) {
    const auto t = gen_torsor(FiniteGroup::cyclic(3)).theory;
    EXPECT_EQ(enumerate_models(t, 3, true).size(), 1u);
    EXPECT_EQ(enumerate_models(t, 2, true).size(), 0u);
    EXPECT_EQ(enumerate_models(t, 0, true).size(), 0u);
}

TEST(Enumerate, EmptyTheory) {
    EXPECT_EQ(enumerate_models(empty_theory(), 1, true).size(), 1u);
    EXPECT_EQ(enumerate_models(empty_theory(), 0, true).size(), 1u);
}

TEST(Enumerate, BareSetHasOneModelPerSize) {
    for (std::size_t n = 0; n <= 5; ++n) {
        EXPECT_EQ(enumerate_models(empty_theory(), n, true).size(), 1u);
        EXPECT_EQ(enumerate_models(empty_theory(), n, false).size(), 1u);
    }
}

TEST(Enumerate, RawCountsMatchBruteForceTorsors) {
    for (std::size_t k : {1u, 2u, 3u}) {
        const auto g = FiniteGroup::cyclic(k);
        const auto t = gen_torsor(g).theory;
        for (std::size_t n = 0; n <= 3; ++n)
            EXPECT_EQ(enumerate_models(t, n, false).size(), oracle::brute_torsors(g, n)) << "Z" << k << " size " << n;
    }
}

TEST(Enumerate, EveryModelSatisfiesTheTheory) {
    for (const auto& nt : library_theories())
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& m : enumerate_models(nt.generated.theory, n, false)) ASSERT_TRUE(is_model(m, nt.generated.theory));
}

TEST(Enumerate, RawCountIsOrbitStabilizerSum) {
    for (const auto& nt : library_theories())
        for (std::size_t n = 0; n <= 4; ++n) {
            std::size_t expected = 0;
            for (const auto& m : enumerate_models(nt.generated.theory, n, true))
                expected += oracle::factorial(n) / oracle::automorphisms(m).size();
            EXPECT_EQ(enumerate_models(nt.generated.theory, n, false).size(), expected) << nt.name << " size " << n;
        }
}

TEST(Enumerate, IsoClassesArePairwiseNonIsomorphic) {
    for (const auto& nt : library_theories())
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto ms = enumerate_models(nt.generated.theory, n, true);
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = i + 1; j < ms.size(); ++j)
                    EXPECT_TRUE(find_maps(ms[i], ms[j], MapKind::iso).empty()) << nt.name;
        }
}

TEST(Enumerate, CeilingIsEnforced) {
    EXPECT_THROW((void)enumerate_models(empty_theory(), 7, true), ResourceLimit);
    EXPECT_NO_THROW((void)enumerate_models(empty_theory(), 7, EnumerationOptions{8, true}));
}

TEST(Automorphisms, MatchPermutationOracle) {
    std::mt19937_64 rng(5);
    for (const auto& nt : library_theories())
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& m : enumerate_models(nt.generated.theory, n, true)) {
                std::vector<std::vector<int>> got;
                for (const auto& a : automorphisms(m)) got.push_back(a.image);
                std::sort(got.begin(), got.end());
                EXPECT_EQ(got, oracle::automorphisms(m)) << nt.name;
            }
    const auto sig = randf::signature();
    for (int i = 0; i < 50; ++i) {
        const auto m = oracle::random_structure(sig, 1 + rng() % 4, rng);
        std::vector<std::vector<int>> got;
        for (const auto& a : automorphisms(m)) got.push_back(a.image);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, oracle::automorphisms(m));
    }
}

TEST(Automorphisms, FormAGroup) {
    for (const auto& nt : library_theories())
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto& m : enumerate_models(nt.generated.theory, n, true)) {
                const auto auts = automorphisms(m);
                std::set<std::vector<int>> set;
                for (const auto& a : auts) set.insert(a.image);
                std::vector<int> id(n);
                std::iota(id.begin(), id.end(), 0);
                EXPECT_TRUE(set.contains(id));
                for (const auto& a : auts)
                    for (const auto& b : auts) {
                        std::vector<int> ab(n);
                        for (std::size_t i = 0; i < n; ++i) ab[i] = a.image[static_cast<std::size_t>(b.image[i])];
                        EXPECT_TRUE(set.contains(ab));
                    }
            }
}

TEST(Automorphisms, PinningShrinksTheSet) {
    const auto ms = enumerate_models(gen_torsor(FiniteGroup::symmetric3()).theory, 6, true);
    ASSERT_EQ(ms.size(), 1u);
    const auto all = automorphisms(ms[0]);
    EXPECT_EQ(all.size(), 6u);
    const auto pinned = automorphisms(ms[0], fixing({0}));
    ASSERT_EQ(pinned.size(), 1u);
    EXPECT_TRUE(pinned[0].is_identity());
    for (const auto& a : pinned) EXPECT_NE(std::find(all.begin(), all.end(), a), all.end());
}

TEST(FindMaps, HomomorphismsMatchOracle) {
    std::mt19937_64 rng(9);
    auto sig = std::make_shared<Signature>();
    sig->add_function("f", 1);
    sig->add_relation("R", 2);
    for (int i = 0; i < 60; ++i) {
        const auto a = oracle::random_structure(sig, rng() % 4, rng);
        const auto b = oracle::random_structure(sig, rng() % 4, rng);
        Pins pins;
        if (a.size() > 0 && b.size() > 0 && rng() % 2) pins.emplace_back(0, static_cast<int>(rng() % b.size()));
        std::vector<std::vector<int>> got;
        for (const auto& h : find_maps(a, b, MapKind::hom, pins)) got.push_back(h.image);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, oracle::homomorphisms(a, b, pins)) << i;
    }
}

TEST(FindMaps, TorsorMapsAreDeterminedByOnePoint) {
    const auto ms = enumerate_models(gen_torsor(FiniteGroup::cyclic(3)).theory, 3, true);
    ASSERT_EQ(ms.size(), 1u);
    for (int t = 0; t < 3; ++t) EXPECT_EQ(find_maps(ms[0], ms[0], MapKind::hom, {{0, t}}).size(), 1u);
}

TEST(FindMaps, AutRequiresEqualStructures) {
    const auto ms = enumerate_models(gen_torsor(FiniteGroup::cyclic(2)).theory, 2, false);
    ASSERT_EQ(ms.size(), 1u);
    FiniteStructure other(ms[0].signature_ptr(), 3);
    EXPECT_THROW((void)find_maps(ms[0], other, MapKind::aut), ContractViolation);
}

TEST(CanonicalForm, IsomorphicStructuresShareKeys) {
    std::mt19937_64 rng(12);
    const auto sig = randf::signature();
    for (int i = 0; i < 60; ++i) {
        const auto n = 1 + rng() % 4;
        const auto m = oracle::random_structure(sig, n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto p = m.relabel(perm);
        EXPECT_EQ(canonical_key(m), canonical_key(p));
        EXPECT_EQ(canonical_representative(m), canonical_representative(p));
        EXPECT_FALSE(find_maps(m, p, MapKind::iso).empty());
    }
}

TEST(CanonicalForm, DistinguishesNonIsomorphicStructures) {
    auto sig = std::make_shared<Signature>();
    sig->add_relation("R", 1);
    FiniteStructure a(sig, 2), b(sig, 2), c(sig, 2);
    a.set_rel("R", {0});
    b.set_rel("R", {1});
    c.set_rel("R", {0});
    c.set_rel("R", {1});
    EXPECT_EQ(canonical_key(a), canonical_key(b));
    EXPECT_NE(canonical_key(a), canonical_key(c));
    const auto r = canonical_representative(a);
    EXPECT_TRUE(r == canonical_representative(b));
}

TEST(PsiElements, VectF2Dimension2) {
    const auto g = gen_vect(FiniteField::prime(2), 2);
    const auto ms = enumerate_models(g.theory, 4, true);
    ASSERT_EQ(ms.size(), 1u);
    const auto psi = psi_elements(ms[0], g.witness);
    EXPECT_EQ(psi.count("B2"), 6u);
    EXPECT_EQ(psi.count("B1"), 0u);
    EXPECT_EQ(psi.count("B0"), 0u);
    EXPECT_EQ(psi.size(), 6u);
}

TEST(PsiElements, VectF2Dimension1) {
    const auto g = gen_vect(FiniteField::prime(2), 1);
    const auto ms = enumerate_models(g.theory, 2, true);
    ASSERT_EQ(ms.size(), 1u);
    const auto psi = psi_elements(ms[0], g.witness);
    ASSERT_EQ(psi.size(), 1u);
    EXPECT_EQ(psi.items[0].tag, "B1");
    EXPECT_EQ(psi.items[0].tuple, (std::vector<int>{1}));
}

TEST(PsiElements, ZeroSpaceHasTheEmptyBasis) {
    const auto g = gen_vect(FiniteField::prime(2), 1);
    const auto ms = enumerate_models(g.theory, 1, true);
    ASSERT_EQ(ms.size(), 1u);
    const auto psi = psi_elements(ms[0], g.witness);
    ASSERT_EQ(psi.size(), 1u);
    EXPECT_EQ(psi.items[0].tag, "B0");
    EXPECT_TRUE(psi.items[0].tuple.empty());
}

TEST(PsiElements, TorsorEveryPoint) {
    const auto g = gen_torsor(FiniteGroup::cyclic(3));
    const auto ms = enumerate_models(g.theory, 3, true);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(psi_elements(ms[0], g.witness).size(), 3u);
}
