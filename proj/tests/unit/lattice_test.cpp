#include "../common/oracles.hpp"
#include "../common/support.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/foliation.hpp"
#include "flatdyn/lll.hpp"
#include "flatdyn/parser.hpp"

#include <gtest/gtest.h>

using namespace flatdyn;
using namespace flatdyn::lattice;
using flatdyn::fixtures::mat;
using flatdyn::fixtures::Rng;

namespace {

FlowTime s_of(const char* e) { return FlowTime(parse_algnum(e)); }

IntVector ints(std::initializer_list<long> v) {
    IntVector out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

}  // namespace

TEST(Lattice, FromRows) {
    TorusLattice id = fixtures::identity4();
    EXPECT_EQ(id.n(), 2u);
    EXPECT_EQ(id.det(), AlgNum(1L));
    EXPECT_EQ(fixtures::divergent_ue().det(), AlgNum(1L));
    EXPECT_THROW(lattice_from_rows(mat("1 2 3 4\n1 2 3 4\n0 0 1 0\n0 0 0 1\n")), DomainError);
    EXPECT_THROW(lattice_from_rows(mat("1 0 0\n0 1 0\n0 0 1\n")), DomainError);
    EXPECT_THROW(lattice_from_rows(mat("1 0\n0 1\n1 1\n")), DomainError);
}

TEST(Lattice, Normalization) {
    TorusLattice l = lattice_from_rows(mat("2 0 0 0\n0 2 0 0\n0 0 2 0\n0 0 0 2\n"), true);
    EXPECT_EQ(l.det(), AlgNum(1L));
    EXPECT_EQ(l.rows()(0, 0), AlgNum(1L));
    TorusLattice m = lattice_from_rows(mat("4 0 0 0\n0 1 0 0\n0 0 -1 0\n0 0 0 1\n"), true);
    EXPECT_EQ(abs(m.det()), AlgNum(1L));
    EXPECT_EQ(m.rows()(0, 0), AlgNum(2L) * AlgNum::sqrt(2));  // 4 / sqrt(2)
    // |det| = 2: 2^(-1/4) is not in any multi-quadratic field.
    EXPECT_THROW(lattice_from_rows(mat("2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), true), DomainError);
    EXPECT_THROW(lattice_from_rows(mat("sqrt(2) 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), true), DomainError);
}

TEST(Flow, Examples) {
    TorusLattice id = fixtures::identity4();
    EXPECT_EQ(apply_geodesic(id, s_of("1")), id);
    EXPECT_EQ(apply_geodesic(id, s_of("2")).rows(), mat("1/2 0 0 0\n0 2 0 0\n0 0 1/2 0\n0 0 0 2\n"));
    TorusLattice g = apply_geodesic(fixtures::divergent_ue(), s_of("4"));
    EXPECT_EQ(g.rows()(0, 0), AlgNum(Rational(1, 4)));
    EXPECT_THROW(FlowTime{AlgNum()}, DomainError);
    EXPECT_THROW(FlowTime(parse_algnum("1-sqrt(2)")), DomainError);
}

TEST(Flow, GroupLawAndDeterminant) {
    Rng rng(20);
    std::uniform_int_distribution<long> num(1, 9), den(1, 5);
    for (int i = 0; i < 20; ++i) {
        TorusLattice l = fixtures::random_lattice(rng);
        FlowTime a(AlgNum(Rational(num(rng), den(rng)))), b(AlgNum(Rational(num(rng), den(rng))));
        EXPECT_EQ(apply_geodesic(apply_geodesic(l, a), b), apply_geodesic(l, FlowTime(a.s() * b.s())));
        EXPECT_EQ(apply_geodesic(l, a).det(), l.det());
    }
    FlowTime r(AlgNum::sqrt(2));
    TorusLattice g = fixtures::pair_g();
    EXPECT_EQ(apply_geodesic(apply_geodesic(g, r), r), apply_geodesic(g, s_of("2")));
}

TEST(Gram, Examples) {
    EXPECT_EQ(gram(fixtures::identity4()), AlgMatrix::identity(4));
    AlgMatrix gg = gram(fixtures::divergent_ue());
    EXPECT_EQ(gg, gg.transpose());
    for (std::size_t k = 1; k <= 4; ++k) {
        AlgMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                minor(i, j) = gg(i, j);
        EXPECT_EQ(sign(determinant(minor)), 1) << k;
    }
    Rng rng(21);
    AlgMatrix r = gram(fixtures::random_lattice(rng));
    EXPECT_EQ(r, r.transpose());
}

TEST(Systole, Examples) {
    SystoleResult id = systole(fixtures::identity4());
    EXPECT_EQ(id.norm_sq, AlgNum(1L));
    EXPECT_EQ(id.vector, ints({1, 0, 0, 0}));

    SystoleResult d = systole(apply_geodesic(fixtures::divergent_ue(), s_of("4")));
    EXPECT_EQ(d.norm_sq, AlgNum(Rational(1, 16)));
    EXPECT_EQ(d.vector, ints({1, 0, 0, 0}));

    SystoleResult q = systole(lattice_from_rows(mat("1/2 0 0 0\n0 2 0 0\n0 0 1/2 0\n0 0 0 2\n")));
    EXPECT_EQ(q.norm_sq, AlgNum(Rational(1, 4)));
    EXPECT_EQ(q.vector, ints({1, 0, 0, 0}));
    EXPECT_EQ(q.realization, (AlgVector{AlgNum(Rational(1, 2)), 0L, 0L, 0L}));
}

TEST(Systole, GuardIndependence) {
    Rng rng(22);
    for (int i = 0; i < 10; ++i) {
        TorusLattice l = fixtures::random_lattice(rng);
        SystoleResult a = systole(l);
        SystoleResult b = systole(l, {0.99, 0.25});
        SystoleResult c = systole(l, {0.75, 1e-9});
        EXPECT_EQ(a.norm_sq, b.norm_sq);
        EXPECT_EQ(a.vector, b.vector);
        EXPECT_EQ(a.norm_sq, c.norm_sq);
        EXPECT_EQ(a.vector, c.vector);
    }
}

TEST(Systole, UpperBoundSoundness) {
    Rng rng(23);
    for (int i = 0; i < 10; ++i) {
        TorusLattice l = fixtures::random_lattice(rng);
        SystoleResult s = systole(l);
        RealMatrix b = to_real(l.rows());
        TransformMatrix u = lll_reduce(b);
        for (std::size_t r = 0; r < 4; ++r) {
            IntVector m;
            for (std::size_t k = 0; k < 4; ++k)
                m.emplace_back(static_cast<long>(u(r, k)));
            EXPECT_LE(s.norm_sq, norm_sq(row_times(std::span<const Integer>(m), l.rows())));
        }
        EXPECT_EQ(norm_sq(s.realization), s.norm_sq);
        EXPECT_EQ(row_times(std::span<const Integer>(s.vector), l.rows()), s.realization);
    }
}

TEST(Systole, BruteForceOracle) {
    Rng rng(24);
    int checked = 0;
    while (checked < 8) {
        TorusLattice l = fixtures::random_lattice(rng);
        auto ref = oracle::brute_force_systole(l.rows());
        if (!ref)
            continue;
        ++checked;
        SystoleResult s = systole(l);
        EXPECT_EQ(s.norm_sq, AlgNum(ref->norm_sq));
        IntVector w;
        for (auto x : ref->witness)
            w.emplace_back(static_cast<long>(x));
        EXPECT_EQ(s.vector, w);
    }
}

TEST(Systole, IrrationalEntries) {
    // (1, 1 - sqrt(2)) direction: v1 - v2 of the first pair lattice.
    TorusLattice g = fixtures::pair_g();
    SystoleResult s = systole(apply_geodesic(g, s_of("1/8")));
    AlgNum bound = AlgNum(Rational(1, 64)) * (AlgNum(1L) - AlgNum::sqrt(2)) * (AlgNum(1L) - AlgNum::sqrt(2));
    EXPECT_LE(s.norm_sq, bound);
}

TEST(Probe, IdentityScaling) {
    ProbeResult r = divergence_probe(fixtures::identity4(), {s_of("1"), s_of("2"), s_of("4")});
    ASSERT_EQ(r.samples.size(), 3u);
    EXPECT_EQ(r.samples[0].systole.norm_sq, AlgNum(1L));
    EXPECT_EQ(r.samples[1].systole.norm_sq, AlgNum(Rational(1, 4)));
    EXPECT_EQ(r.samples[2].systole.norm_sq, AlgNum(Rational(1, 16)));
    EXPECT_TRUE(r.strictly_decreasing);
    EXPECT_EQ(r.samples[1].norm_sq.lo_string(), "0.250000000000");
    EXPECT_THROW(divergence_probe(fixtures::identity4(), {}), DomainError);
}

TEST(Probe, NonMonotoneFlagged) {
    ProbeResult r = divergence_probe(fixtures::identity4(), {s_of("2"), s_of("1")});
    EXPECT_FALSE(r.strictly_decreasing);
}

TEST(Probe, PairGShrinksTowardsNegativeTime) {
    // s = e^-5 as an exact rational; bound (1 - sqrt 2)^2 s^2 from v1 - v2.
    Rational s(std::exp(-5.0));
    TorusLattice g = fixtures::pair_g();
    ProbeResult r = divergence_probe(g, {FlowTime(AlgNum(s))});
    AlgNum one_minus = AlgNum(1L) - AlgNum::sqrt(2);
    EXPECT_LE(r.samples[0].systole.norm_sq, AlgNum(s * s) * one_minus * one_minus);
}

TEST(ClosedDirection, Examples) {
    auto h = foliation::horizontal_plane(2);
    EXPECT_EQ(closed_direction_certificate(fixtures::identity4(), h), ints({1, 0, 0, 0}));
    EXPECT_EQ(closed_direction_certificate(fixtures::divergent_ue(), h), ints({1, 0, 0, 0}));
    EXPECT_EQ(closed_direction_certificate(fixtures::pair_h(), h), ints({1, 0, 0, 0}));
    // A lattice with no real vector at all.
    TorusLattice irr = lattice_from_rows(mat("1 sqrt(2) 0 0\n0 1 0 0\n0 0 1 sqrt(3)\n0 0 0 1\n"));
    EXPECT_FALSE(closed_direction_certificate(irr, h).has_value());
}

TEST(ClosedDirection, ShrinkingWitness) {
    Rng rng(25);
    auto h = foliation::horizontal_plane(2);
    for (int i = 0; i < 10; ++i) {
        TorusLattice l = fixtures::random_lattice(rng);
        auto m = closed_direction_certificate(l, h);
        ASSERT_TRUE(m.has_value());  // rational lattices always have real vectors
        AlgNum len = norm_sq(row_times(std::span<const Integer>(*m), l.rows()));
        for (long s : {2L, 3L, 10L}) {
            AlgNum sv(s);
            EXPECT_LE(systole(apply_geodesic(l, FlowTime(sv))).norm_sq, len / (sv * sv));
        }
    }
}
