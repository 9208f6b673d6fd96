#include "../common/support.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/kummer.hpp"
#include "flatdyn/parser.hpp"

#include <gtest/gtest.h>

using namespace flatdyn;
using namespace flatdyn::kummer;
using flatdyn::fixtures::mat;
using flatdyn::fixtures::Rng;

namespace {

AlgNum p(const char* s) { return parse_algnum(s); }

// T-vector from the six coefficients in the order T12, T13, T14, T23, T24, T34.
PeriodVector tvec(std::array<AlgNum, 6> t) {
    PeriodVector v;
    v.t_part = t;
    return v;
}

// Period of a pair of complex vectors (u1, u2), (v1, v2) expanded by hand:
// u1 v2 - u2 v1 with (a + ib)(c + id) = (ac - bd) + i(ad + bc).
std::pair<AlgNum, AlgNum> wedge(const AlgMatrix& g, std::size_t i, std::size_t j) {
    auto re = [&](std::size_t r, std::size_t k) { return g(r, 2 * k); };
    auto im = [&](std::size_t r, std::size_t k) { return g(r, 2 * k + 1); };
    AlgNum real = re(i, 0) * re(j, 1) - im(i, 0) * im(j, 1) - (re(i, 1) * re(j, 0) - im(i, 1) * im(j, 0));
    AlgNum imag = re(i, 0) * im(j, 1) + im(i, 0) * re(j, 1) - (re(i, 1) * im(j, 0) + im(i, 1) * re(j, 0));
    return {real, imag};
}

}  // namespace

TEST(IntersectionForm, Structure) {
    IntersectionForm q;
    for (std::size_t a = 0; a < kRank; ++a)
        for (std::size_t b = 0; b < kRank; ++b)
            EXPECT_EQ(q.entry(a, b), q.entry(b, a));
    // <T12, T34> = sgn(1234) = 1, <T13, T24> = sgn(1324) = -1, <T14, T23> = sgn(1423) = 1.
    EXPECT_EQ(q.entry(0, 5), 1);
    EXPECT_EQ(q.entry(1, 4), -1);
    EXPECT_EQ(q.entry(2, 3), 1);
    EXPECT_EQ(q.entry(0, 1), 0);
    EXPECT_EQ(q.entry(6, 6), -2);
    EXPECT_EQ(q.entry(0, 6), 0);
    // Signature (3, 3): the T-block is three hyperbolic planes, up to sign.
    AlgMatrix t(6, 6);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b)
            t(a, b) = AlgNum(q.entry(a, b));
    EXPECT_EQ(determinant(t), AlgNum(-1L));
    EXPECT_EQ(torus_class_name(0), "T12");
    EXPECT_EQ(torus_class_name(5), "T34");
}

TEST(Periods, Identity) {
    KummerPeriods k = periods_from_lattice(fixtures::identity4());
    EXPECT_EQ(k.eta1, tvec({0L, 1L, 0L, 0L, 0L, 0L}));
    EXPECT_EQ(k.eta2, tvec({0L, 0L, 0L, 0L, -1L, 0L}));
    EXPECT_EQ(k.eta3, tvec({0L, 0L, 1L, 1L, 0L, 0L}));
    EXPECT_EQ(k.omega, tvec({1L, 0L, 0L, 0L, 0L, 1L}));
}

TEST(Periods, PairLattices) {
    KummerPeriods h = periods_from_lattice(fixtures::pair_h());
    EXPECT_EQ(h.eta2, tvec({0L, 0L, 0L, -1L, p("-sqrt(2)"), p("sqrt(3)")}));
    KummerPeriods g = periods_from_lattice(fixtures::pair_g());
    EXPECT_EQ(g.eta2, tvec({0L, 0L, -1L, 0L, p("-sqrt(2)"), p("sqrt(3)")}));
    KummerPeriods d = periods_from_lattice(fixtures::divergent_ue());
    EXPECT_EQ(d.eta2, tvec({0L, 0L, 0L, p("-sqrt(2)"), -1L, p("-sqrt(5)")}));
}

TEST(Periods, DirectExpansionOracle) {
    Rng rng(40);
    for (int t = 0; t < 10; ++t) {
        auto l = fixtures::random_lattice(rng);
        ComplexPeriod c = expand_period(l);
        KummerPeriods k = periods_from_lattice(l);
        for (std::size_t idx = 0; idx < kTorusClasses; ++idx) {
            auto [re, im] = wedge(l.rows(), kTorusPairs[idx][0], kTorusPairs[idx][1]);
            EXPECT_EQ(c.real.t_part[idx], re);
            EXPECT_EQ(c.imag.t_part[idx], im);
            EXPECT_EQ(k.eta1.t_part[idx] + k.eta2.t_part[idx], re);
            EXPECT_EQ(k.eta3.t_part[idx], im);
        }
        for (const auto& v : {k.eta1, k.eta2, k.eta3, k.omega})
            for (const auto& x : v.c_part)
                EXPECT_TRUE(x.is_zero());
    }
}

TEST(Periods, WrongDimension) {
    auto l2 = lattice::lattice_from_rows(AlgMatrix::identity(2));
    EXPECT_THROW(periods_from_lattice(l2), DomainError);
    EXPECT_THROW(eta2_rank(l2), DomainError);
}

TEST(GeodesicPeriod, Examples) {
    auto id = fixtures::identity4();
    KummerPeriods k = periods_from_lattice(id);
    ComplexPeriod one = geodesic_period(id, lattice::FlowTime(1L));
    EXPECT_EQ(one.real, k.eta1 + k.eta2);
    EXPECT_EQ(one.imag, k.eta3);
    ComplexPeriod two = geodesic_period(id, lattice::FlowTime(2L));
    EXPECT_EQ(two.real, tvec({0L, AlgNum(Rational(1, 4)), 0L, 0L, -4L, 0L}));
}

TEST(GeodesicPeriod, FactorizationAndOmegaInvariance) {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        auto l = fixtures::random_lattice(rng);
        KummerPeriods k = periods_from_lattice(l);
        for (const char* s : {"1/3", "1/2", "2", "3", "sqrt(2)"}) {
            lattice::FlowTime ft(p(s));
            ComplexPeriod c = geodesic_period(l, ft);
            EXPECT_EQ(c.imag, k.eta3);
            EXPECT_EQ(periods_from_lattice(lattice::apply_geodesic(l, ft)).omega, k.omega);
        }
    }
}

TEST(Relations, IdentityValues) {
    RelationReport r = verify_period_relations(periods_from_lattice(fixtures::identity4()));
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.checks.size(), 10u);
    for (const auto& c : r.checks)
        if (c.name == "eta3.eta3 > 0")
            EXPECT_EQ(c.residual, AlgNum(2L));
    IntersectionForm q;
    KummerPeriods k = periods_from_lattice(fixtures::identity4());
    EXPECT_EQ(q.pair(k.eta3, k.eta3), AlgNum(2L));
    EXPECT_EQ(AlgNum(2L) * q.pair(k.eta1, k.eta2), AlgNum(2L));
}

TEST(Relations, RandomLattices) {
    Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        auto l = fixtures::random_lattice(rng);
        RelationReport r = verify_period_relations(periods_from_lattice(l));
        EXPECT_TRUE(r.all_pass());
        EXPECT_EQ(r.orientation, l.det().sign());
    }
    for (auto l : {fixtures::divergent_ue(), fixtures::pair_g(), fixtures::pair_h()})
        EXPECT_TRUE(verify_period_relations(periods_from_lattice(l)).all_pass());
}

TEST(Relations, OrientationMatters) {
    // Reflecting one generator flips det; without the orientation factor the
    // positivity check would see eta3.eta3 = -2.
    auto l = lattice::lattice_from_rows(mat("-1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"));
    KummerPeriods k = periods_from_lattice(l);
    EXPECT_EQ(IntersectionForm().pair(k.eta3, k.eta3), AlgNum(-2L));
    RelationReport r = verify_period_relations(k);
    EXPECT_EQ(r.orientation, -1);
    EXPECT_TRUE(r.all_pass());
}

TEST(Relations, MutationIsDetected) {
    Rng rng(43);
    std::uniform_int_distribution<std::size_t> which(0, kTorusClasses - 1);
    for (int t = 0; t < 20; ++t) {
        KummerPeriods k = periods_from_lattice(fixtures::random_lattice(rng));
        k.eta2.t_part[which(rng)] += AlgNum(1L);
        RelationReport r = verify_period_relations(k);
        EXPECT_FALSE(r.all_pass());
        bool nonzero_residual = false;
        for (const auto& c : r.checks)
            if (!c.pass && !c.residual.is_zero())
                nonzero_residual = true;
        EXPECT_TRUE(nonzero_residual);
    }
    KummerPeriods k = periods_from_lattice(fixtures::identity4());
    k.omega.c_part[3] = AlgNum(1L);
    EXPECT_FALSE(verify_period_relations(k).all_pass());
}

TEST(Relations, TBlockScaling) {
    Rng rng(44);
    for (int t = 0; t < 10; ++t) {
        auto l = fixtures::random_lattice(rng);
        KummerPeriods k = periods_from_lattice(l);
        RelationReport a = verify_period_relations(k);
        RelationReport b = verify_period_relations(k, IntersectionForm(2));
        ASSERT_EQ(a.checks.size(), b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i)
            EXPECT_EQ(a.checks[i].pass, b.checks[i].pass);
        EXPECT_EQ(eta2_rank(l), eta2_rank(l, IntersectionForm(2)));
        EXPECT_EQ(eta2_rank(l), eta2_rank(l, IntersectionForm(-3)));
        k.eta1.t_part[0] += AlgNum(1L);
        RelationReport c = verify_period_relations(k);
        RelationReport d = verify_period_relations(k, IntersectionForm(2));
        for (std::size_t i = 0; i < c.checks.size(); ++i)
            EXPECT_EQ(c.checks[i].pass, d.checks[i].pass);
    }
}

TEST(Eta2Rank, Examples) {
    EXPECT_EQ(eta2_rank(fixtures::identity4()), 21);
    EXPECT_EQ(eta2_rank(fixtures::divergent_ue()), 19);
    EXPECT_EQ(eta2_rank(fixtures::pair_h()), 19);
    EXPECT_EQ(eta2_rank(fixtures::pair_g()), 19);
}

TEST(Eta2Rank, UnimodularInvariance) {
    Rng rng(45);
    for (auto l : {fixtures::identity4(), fixtures::divergent_ue(), fixtures::pair_h(), fixtures::random_lattice(rng)}) {
        int base = eta2_rank(l);
        for (int t = 0; t < 5; ++t)
            EXPECT_EQ(eta2_rank(lattice::lattice_from_rows(fixtures::random_unimodular(rng, 4) * l.rows())), base);
    }
}

TEST(RankCriterion, Reports) {
    RankCriterionReport id = rank_criterion_report(fixtures::identity4());
    EXPECT_EQ(id.verdict, foliation::Verdict::NotUniquelyErgodic);
    EXPECT_EQ(id.rank, 21);
    EXPECT_TRUE(id.implication_holds);
    EXPECT_FALSE(id.converse_flag);

    RankCriterionReport d = rank_criterion_report(fixtures::divergent_ue());
    EXPECT_EQ(d.verdict, foliation::Verdict::UniquelyErgodic);
    EXPECT_EQ(d.rank, 19);
    EXPECT_TRUE(d.implication_holds);
    EXPECT_TRUE(d.converse_flag);

    RankCriterionReport g = rank_criterion_report(fixtures::pair_g());
    EXPECT_EQ(g.verdict, foliation::Verdict::NotUniquelyErgodic);
    EXPECT_EQ(g.rank, 19);
    EXPECT_TRUE(g.implication_holds);
}

TEST(RankCriterion, CollinearFamily) {
    Rng rng(46);
    for (int t = 0; t < 10; ++t) {
        RankCriterionReport r = rank_criterion_report(fixtures::collinear_lattice(rng));
        EXPECT_EQ(r.verdict, foliation::Verdict::NotUniquelyErgodic);
        EXPECT_GE(r.rank, 19);
        EXPECT_TRUE(r.implication_holds);
    }
}

TEST(Eta2Swap, PairLattices) {
    Eta2Comparison c = compare_eta2_by_swap(fixtures::pair_g(), fixtures::pair_h());
    EXPECT_TRUE(c.swap_is_isometry);
    EXPECT_TRUE(c.related_by_swap);
    Eta2Comparison n = compare_eta2_by_swap(fixtures::identity4(), fixtures::divergent_ue());
    EXPECT_FALSE(n.related_by_swap);
    EXPECT_FALSE(n.related_by_swap_up_to_sign);
}
