#include "flatdyn/kummer.hpp"

#include "flatdyn/errors.hpp"

#include <stdexcept>

namespace flatdyn::kummer {

namespace {

void require_surface(const lattice::TorusLattice& l) {
    if (l.n() != 2)
        throw DomainError("Kummer periods need a lattice in C^2 (4 x 4 matrix)");
}

int permutation_sign(std::array<std::size_t, 4> p) {
    int inversions = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (p[i] > p[j])
                ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::string torus_class_name(std::size_t index) {
    const auto& p = kTorusPairs.at(index);
    return "T" + std::to_string(p[0] + 1) + std::to_string(p[1] + 1);
}

AlgNum PeriodVector::coordinate(std::size_t index) const {
    return index < kTorusClasses ? t_part.at(index) : c_part.at(index - kTorusClasses);
}

PeriodVector operator+(const PeriodVector& a, const PeriodVector& b) {
    PeriodVector out;
    for (std::size_t i = 0; i < kTorusClasses; ++i)
        out.t_part[i] = a.t_part[i] + b.t_part[i];
    for (std::size_t i = 0; i < kExceptionalClasses; ++i)
        out.c_part[i] = a.c_part[i] + b.c_part[i];
    return out;
}

PeriodVector operator*(const AlgNum& k, const PeriodVector& v) {
    PeriodVector out;
    for (std::size_t i = 0; i < kTorusClasses; ++i)
        out.t_part[i] = k * v.t_part[i];
    for (std::size_t i = 0; i < kExceptionalClasses; ++i)
        out.c_part[i] = k * v.c_part[i];
    return out;
}

IntersectionForm::IntersectionForm(long t_scale) {
    for (std::size_t a = 0; a < kTorusClasses; ++a)
        for (std::size_t b = 0; b < kTorusClasses; ++b) {
            auto [i, j] = kTorusPairs[a];
            auto [k, l] = kTorusPairs[b];
            bool disjoint = i != k && i != l && j != k && j != l;
            q_[a][b] = disjoint ? t_scale * permutation_sign({i, j, k, l}) : 0;
        }
    for (std::size_t c = 0; c < kExceptionalClasses; ++c)
        q_[kTorusClasses + c][kTorusClasses + c] = -2;
}

AlgNum IntersectionForm::pair(const PeriodVector& a, const PeriodVector& b) const {
    AlgNum s;
    for (std::size_t i = 0; i < kRank; ++i) {
        AlgNum ai = a.coordinate(i);
        if (ai.is_zero())
            continue;
        for (std::size_t j = 0; j < kRank; ++j)
            if (q_[i][j] != 0)
                s += ai * b.coordinate(j) * AlgNum(q_[i][j]);
    }
    return s;
}

std::array<AlgNum, kTorusClasses> IntersectionForm::torus_pairings(const PeriodVector& v) const {
    std::array<AlgNum, kTorusClasses> out;
    for (std::size_t a = 0; a < kTorusClasses; ++a)
        for (std::size_t b = 0; b < kTorusClasses; ++b)
            if (q_[a][b] != 0)
                out[a] += AlgNum(q_[a][b]) * v.t_part[b];
    return out;
}

KummerPeriods periods_from_lattice(const lattice::TorusLattice& l) {
    require_surface(l);
    KummerPeriods p{{}, {}, {}, {}, l};
    for (std::size_t k = 0; k < kTorusClasses; ++k) {
        auto [i, j] = kTorusPairs[k];
        const AlgNum &ri1 = l.re(i, 0), &ri2 = l.re(i, 1), &ii1 = l.im(i, 0), &ii2 = l.im(i, 1);
        const AlgNum &rj1 = l.re(j, 0), &rj2 = l.re(j, 1), &ij1 = l.im(j, 0), &ij2 = l.im(j, 1);
        p.eta1.t_part[k] = ri1 * rj2 - ri2 * rj1;
        p.eta2.t_part[k] = -(ii1 * ij2 - ii2 * ij1);
        p.eta3.t_part[k] = ri1 * ij2 - ri2 * ij1 + ii1 * rj2 - ii2 * rj1;
        p.omega.t_part[k] = ri1 * ij1 - rj1 * ii1 + ri2 * ij2 - rj2 * ii2;
    }
    return p;
}

ComplexPeriod expand_period(const lattice::TorusLattice& l) {
    require_surface(l);
    struct Complex {
        AlgNum re, im;
    };
    auto mul = [](const Complex& a, const Complex& b) {
        return Complex{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    };
    auto entry = [&](std::size_t i, std::size_t j) { return Complex{l.re(i, j), l.im(i, j)}; };
    ComplexPeriod out;
    for (std::size_t k = 0; k < kTorusClasses; ++k) {
        auto [i, j] = kTorusPairs[k];
        Complex a = mul(entry(i, 0), entry(j, 1));
        Complex b = mul(entry(i, 1), entry(j, 0));
        out.real.t_part[k] = a.re - b.re;
        out.imag.t_part[k] = a.im - b.im;
    }
    return out;
}

ComplexPeriod geodesic_period(const lattice::TorusLattice& l, const lattice::FlowTime& time) {
    require_surface(l);
    ComplexPeriod direct = expand_period(lattice::apply_geodesic(l, time));
    KummerPeriods p = periods_from_lattice(l);
    AlgNum s2 = time.s() * time.s();
    ComplexPeriod factored{s2.inverse() * p.eta1 + s2 * p.eta2, p.eta3};
    if (!(direct == factored))
        throw std::logic_error("flowed period disagrees with s^-2 eta1 + s^2 eta2 + i eta3");
    return direct;
}

bool RelationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

RelationReport verify_period_relations(const KummerPeriods& p, const IntersectionForm& form) {
    RelationReport r;
    r.orientation = p.source.det().sign();
    AlgNum orient(static_cast<long>(r.orientation));
    auto dot = [&](const PeriodVector& a, const PeriodVector& b) { return orient * form.pair(a, b); };
    auto zero = [&](std::string name, AlgNum v) {
        bool ok = v.is_zero();
        r.checks.push_back({std::move(name), std::move(v), ok});
    };

    zero("eta1.eta1 = 0", dot(p.eta1, p.eta1));
    zero("eta2.eta2 = 0", dot(p.eta2, p.eta2));
    zero("eta1.eta3 = 0", dot(p.eta1, p.eta3));
    zero("eta2.eta3 = 0", dot(p.eta2, p.eta3));
    AlgNum e3sq = dot(p.eta3, p.eta3);
    zero("2 eta1.eta2 = eta3.eta3", AlgNum(2L) * dot(p.eta1, p.eta2) - e3sq);
    r.checks.push_back({"eta3.eta3 > 0", e3sq, e3sq.sign() > 0});
    zero("omega.eta1 = 0", dot(p.omega, p.eta1));
    zero("omega.eta2 = 0", dot(p.omega, p.eta2));
    zero("omega.eta3 = 0", dot(p.omega, p.eta3));

    AlgNum c_residual;
    for (const PeriodVector* v : {&p.eta1, &p.eta2, &p.eta3, &p.omega})
        for (const auto& c : v->c_part)
            c_residual += abs(c);
    zero("C_k.(eta_i, omega) = 0", c_residual);
    return r;
}

int eta2_rank(const lattice::TorusLattice& l, const IntersectionForm& form) {
    require_surface(l);
    PeriodVector eta2 = periods_from_lattice(l).eta2;
    std::array<AlgNum, kTorusClasses> w = form.torus_pairings(eta2);
    AlgMatrix row(1, kTorusClasses);
    for (std::size_t j = 0; j < kTorusClasses; ++j)
        row(0, j) = w[j];
    IntMatrix k = foliation::integer_covector_kernel(row);
    return static_cast<int>(kExceptionalClasses + k.rows());
}

RankCriterionReport rank_criterion_report(const lattice::TorusLattice& l) {
    require_surface(l);
    RankCriterionReport r;
    r.verdict = foliation::unique_ergodicity(l, foliation::horizontal_plane(2)).verdict;
    r.rank = eta2_rank(l);
    bool not_ue = r.verdict == foliation::Verdict::NotUniquelyErgodic;
    r.implication_holds = !not_ue || r.rank >= 19;
    r.converse_flag = !not_ue && r.rank >= 19;
    return r;
}

Eta2Comparison compare_eta2_by_swap(const lattice::TorusLattice& first, const lattice::TorusLattice& second) {
    Eta2Comparison c;
    c.eta2_first = periods_from_lattice(first).eta2;
    c.eta2_second = periods_from_lattice(second).eta2;

    // Swap of T14 (index 2) and T23 (index 3).
    constexpr std::size_t a = 2, b = 3;
    IntersectionForm form;
    c.swap_is_isometry = true;
    auto swapped = [&](std::size_t i) { return i == a ? b : i == b ? a : i; };
    for (std::size_t i = 0; i < kRank; ++i)
        for (std::size_t j = 0; j < kRank; ++j)
            if (form.entry(swapped(i), swapped(j)) != form.entry(i, j))
                c.swap_is_isometry = false;

    PeriodVector image = c.eta2_first;
    std::swap(image.t_part[a], image.t_part[b]);
    c.related_by_swap = image == c.eta2_second;
    c.related_by_swap_up_to_sign = c.related_by_swap || AlgNum(-1L) * image == c.eta2_second;
    return c;
}

}  // namespace flatdyn::kummer
