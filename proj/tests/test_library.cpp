#include "geocoord/checkers.hpp"
#include "geocoord/library.hpp"
#include "geocoord/mutants.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace geocoord;

namespace {

std::vector<std::size_t> aut_counts(const std::vector<FiniteStructure>& ms) {
    std::vector<std::size_t> out;
    for (const auto& m : ms) out.push_back(automorphisms(m).size());
    return out;
}

std::vector<FiniteStructure> models_up_to(const Theory& t, std::size_t max) {
    std::vector<FiniteStructure> out;
    for (std::size_t n = 0; n <= max; ++n)
        for (auto& m : enumerate_models(t, n, true)) out.push_back(std::move(m));
    return out;
}

std::vector<std::size_t> sizes(const std::vector<FiniteStructure>& ms) {
    std::vector<std::size_t> out;
    for (const auto& m : ms) out.push_back(m.size());
    return out;
}

}  // namespace

TEST(Groups, PresetsAreGroups) {
    for (const auto* name : {"z1", "z2", "z3", "z4", "s3"}) {
        const auto g = group_preset(name);
        ASSERT_TRUE(g) << name;
        for (std::size_t a = 0; a < g->order(); ++a) {
            EXPECT_EQ(g->mul(a, g->identity()), a);
            for (std::size_t b = 0; b < g->order(); ++b)
                for (std::size_t c = 0; c < g->order(); ++c)
                    EXPECT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c)));
        }
    }
    EXPECT_FALSE(group_preset("z9"));
}

TEST(Groups, RejectsNonGroupTables) {
    EXPECT_THROW(FiniteGroup({"e", "a"}, {{0, 1}, {1, 1}}, 0), InvalidParameters);
}

TEST(Torsor, TrivialGroupHasOnlyThePoint) {
    const auto g = gen_torsor(FiniteGroup::cyclic(1));
    EXPECT_EQ(sizes(models_up_to(g.theory, 4)), (std::vector<std::size_t>{1}));
}

TEST(Torsor, Z3HasOneModelOfSizeThree) {
    const auto g = gen_torsor(FiniteGroup::cyclic(3));
    const auto ms = models_up_to(g.theory, 5);
    EXPECT_EQ(sizes(ms), (std::vector<std::size_t>{3}));
    EXPECT_EQ(aut_counts(ms), (std::vector<std::size_t>{3}));
    EXPECT_EQ(g.witness.psis[0].thetas.cardinality(), 3u);
}

TEST(Torsor, S3HasOneModelWithSixAutomorphisms) {
    const auto g = gen_torsor(FiniteGroup::symmetric3());
    const auto ms = enumerate_models(g.theory, 6, true);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(oracle::automorphisms(ms[0]).size(), 6u);
    EXPECT_EQ(models_up_to(g.theory, 5).size(), 0u);
    const auto labelled = oracle::labelled_torsors(FiniteGroup::symmetric3());
    EXPECT_EQ(labelled, 120u);
    EXPECT_EQ(enumerate_models(g.theory, 6, false).size(), labelled);
}

TEST(Torsor, SmallLabelledCountsAgree) {
    for (const auto* name : {"z1", "z2", "z3", "z4"}) {
        const auto grp = *group_preset(name);
        const auto t = gen_torsor(grp).theory;
        EXPECT_EQ(enumerate_models(t, grp.order(), false).size(), oracle::labelled_torsors(grp)) << name;
    }
}

TEST(Fields, PresetsAreFields) {
    for (const auto* name : {"f2", "f3", "f4", "f5"}) {
        const auto f = field_preset(name);
        ASSERT_TRUE(f) << name;
        for (std::size_t a = 1; a < f->order(); ++a) {
            bool invertible = false;
            for (std::size_t b = 1; b < f->order(); ++b) invertible = invertible || f->mul(a, b) == 1;
            EXPECT_TRUE(invertible) << name << " " << a;
        }
    }
    EXPECT_THROW((void)FiniteField::prime(4), InvalidParameters);
}

TEST(Vect, F2DimensionOne) {
    const auto g = gen_vect(FiniteField::prime(2), 1);
    const auto ms = models_up_to(g.theory, 5);
    EXPECT_EQ(sizes(ms), (std::vector<std::size_t>{1, 2}));
    const auto* b1 = g.witness.find("B1");
    ASSERT_NE(b1, nullptr);
    EXPECT_EQ(b1->thetas.cardinality(), 2u);
}

TEST(Vect, F2DimensionTwo) {
    const auto g = gen_vect(FiniteField::prime(2), 2);
    const auto ms = models_up_to(g.theory, 5);
    EXPECT_EQ(sizes(ms), (std::vector<std::size_t>{1, 2, 4}));
    EXPECT_EQ(aut_counts(ms), (std::vector<std::size_t>{1, 1, oracle::gl_order(2, 2)}));
    EXPECT_EQ(oracle::gl_order(2, 2), 6u);
    const auto* b2 = g.witness.find("B2");
    ASSERT_NE(b2, nullptr);
    EXPECT_EQ(b2->thetas.cardinality(), 4u);
    EXPECT_EQ(psi_elements(ms[2], g.witness).count("B2"), oracle::ordered_bases(2, 2));
}

TEST(Vect, F3DimensionOne) {
    const auto g = gen_vect(FiniteField::prime(3), 1);
    const auto ms = enumerate_models(g.theory, 3, true);
    ASSERT_EQ(ms.size(), 1u);
    const auto psi = psi_elements(ms[0], g.witness);
    ASSERT_EQ(psi.count("B1"), 2u);
    for (const auto& t : psi.items) EXPECT_NE(t.tuple[0], ms[0].fn("zero", {}));
    EXPECT_EQ(automorphisms(ms[0]).size(), oracle::gl_order(3, 1));
}

TEST(Vect, F4DimensionOne) {
    const auto g = gen_vect(FiniteField::f4(), 1);
    const auto ms = enumerate_models(g.theory, 4, true);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(psi_elements(ms[0], g.witness).count("B1"), oracle::gl_order(4, 1));
    EXPECT_EQ(automorphisms(ms[0]).size(), oracle::gl_order(4, 1));
}

TEST(Vect, DimensionBoundIsEnforced) {
    EXPECT_THROW((void)gen_vect(FiniteField::prime(2), kMaxVectDimension + 1), InvalidParameters);
}

TEST(Categories, MonicExamples) {
    const FiniteCategory poset({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ac", "a", "c"}},
                               {{{"bc", "ab"}, "ac"}});
    EXPECT_TRUE(check_monic(poset).monic);
    const FiniteCategory group({"o"}, {{"g", "o", "o"}}, {{{"g", "g"}, "id_o"}});
    EXPECT_TRUE(check_monic(group).monic);
    const auto split = FiniteCategory::split_idempotent();
    const auto r = check_monic(split);
    EXPECT_FALSE(r.monic);
    ASSERT_TRUE(r.violation);
    const auto& [f, h, h2] = *r.violation;
    EXPECT_EQ(split.arrow(f).name, "pr");
    std::vector<std::string> pair{split.arrow(h).name, split.arrow(h2).name};
    std::sort(pair.begin(), pair.end());
    EXPECT_EQ(pair, (std::vector<std::string>{"e", "id_p"}));
}

TEST(Categories, RejectsBadTables) {
    EXPECT_THROW(FiniteCategory({"a"}, {{"f", "a", "z"}}, {}), InvalidParameters);
    EXPECT_THROW(FiniteCategory({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}}, {}), InvalidParameters);
}

TEST(Flat, PointHasOneModel) {
    const auto g = gen_flat_monic(FiniteCategory::point());
    EXPECT_EQ(sizes(models_up_to(g.theory, 4)), (std::vector<std::size_t>{1}));
}

TEST(Flat, ArrowPassesUcoord) {
    const auto g = gen_flat_monic(FiniteCategory::arrow_category());
    EXPECT_TRUE(check_ucoord(g.theory, g.witness, 4).passed());
}

TEST(Flat, MonoSequentHoldsInEveryModel) {
    const auto c = FiniteCategory::arrow_category();
    const auto g = gen_flat_monic(c);
    const auto ms = models_up_to(g.theory, 4);
    ASSERT_FALSE(ms.empty());
    for (const auto& m : ms)
        for (const auto& s : flat_mono_sequents(c)) EXPECT_TRUE(holds_sequent(m, s).holds) << s.name;
}

TEST(Flat, ArrowModels) {
    const auto g = gen_flat_monic(FiniteCategory::arrow_category());
    EXPECT_EQ(sizes(models_up_to(g.theory, 5)), (std::vector<std::size_t>{1, 1, 2}));
}

TEST(Flat, SplitIdempotentIsRejected) {
    try {
        (void)gen_flat_monic(FiniteCategory::split_idempotent());
        FAIL();
    } catch (const InvalidParameters& e) {
        EXPECT_NE(std::string(e.what()).find("'pr' is not mono"), std::string::npos);
    }
}

TEST(Generators, AllChecksPass) {
    for (const auto& nt : library_theories()) {
        const auto& g = nt.generated;
        const auto models = ModelSet::enumerate(g.theory, 5);
        CheckOptions opts;
        opts.models = &models;
        EXPECT_TRUE(check_inhabited(g.theory, g.witness, 5, opts).passed()) << nt.name;
        EXPECT_TRUE(check_ucoord(g.theory, g.witness, 5, opts).passed()) << nt.name;
        EXPECT_TRUE(check_urigid(g.theory, g.witness, 5, opts).passed()) << nt.name;
        EXPECT_TRUE(check_coord(g.theory, g.witness, 5, opts).passed()) << nt.name;
        EXPECT_TRUE(check_cardinality_bound(g.theory, g.witness, 5, opts).passed()) << nt.name;
        EXPECT_TRUE(implication_audit(g.theory, g.witness, 5, opts).passed()) << nt.name;
    }
}

TEST(Generators, S3ChecksPassAtItsSize) {
    const auto g = gen_torsor(FiniteGroup::symmetric3());
    const auto models = ModelSet::enumerate(g.theory, 6);
    CheckOptions opts;
    opts.models = &models;
    EXPECT_TRUE(check_inhabited(g.theory, g.witness, 6, opts).passed());
    EXPECT_TRUE(check_ucoord(g.theory, g.witness, 6, opts).passed());
    EXPECT_TRUE(check_urigid(g.theory, g.witness, 6, opts).passed());
    EXPECT_TRUE(implication_audit(g.theory, g.witness, 6, opts).passed());
}

TEST(Generators, Deterministic) {
    EXPECT_EQ(gen_vect(FiniteField::prime(3), 2).document().text, gen_vect(FiniteField::prime(3), 2).document().text);
    EXPECT_EQ(gen_torsor(FiniteGroup::symmetric3()).document().text, gen_torsor(FiniteGroup::symmetric3()).document().text);
}
