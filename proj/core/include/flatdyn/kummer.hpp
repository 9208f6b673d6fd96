#pragma once

#include "flatdyn/foliation.hpp"
#include "flatdyn/lattice.hpp"

#include <array>
#include <string>
#include <vector>

namespace flatdyn::kummer {

inline constexpr std::size_t kTorusClasses = 6;
inline constexpr std::size_t kExceptionalClasses = 16;
inline constexpr std::size_t kRank = kTorusClasses + kExceptionalClasses;

// Index pairs (i, j), 0-based, in the order T12, T13, T14, T23, T24, T34.
inline constexpr std::array<std::array<std::size_t, 2>, kTorusClasses> kTorusPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::string torus_class_name(std::size_t index);  // "T12", ...

/// Second cohomology class in the basis {T_ij} + {C_k}.
struct PeriodVector {
    std::array<AlgNum, kTorusClasses> t_part;
    std::array<AlgNum, kExceptionalClasses> c_part;

    AlgNum coordinate(std::size_t index) const;  // 0..21
    friend bool operator==(const PeriodVector&, const PeriodVector&) = default;
};

PeriodVector operator+(const PeriodVector& a, const PeriodVector& b);
PeriodVector operator*(const AlgNum& k, const PeriodVector& v);

/**
 * Integer pairing on the T + C basis.
 *
 * <T_ij, T_kl> = sign of the permutation (i j k l) when {i,j,k,l} = {1,2,3,4},
 * <C_i, C_j> = -2 delta_ij, and T and C are orthogonal. The T-block has
 * signature (3, 3). `t_scale` multiplies the T-block (relations and ranks are
 * insensitive to it; it exists to test that).
 */
class IntersectionForm {
public:
    explicit IntersectionForm(long t_scale = 1);

    long entry(std::size_t a, std::size_t b) const { return q_[a][b]; }
    AlgNum pair(const PeriodVector& a, const PeriodVector& b) const;
    // Row of pairings <T_ij, v> over the six torus classes.
    std::array<AlgNum, kTorusClasses> torus_pairings(const PeriodVector& v) const;

private:
    std::array<std::array<long, kRank>, kRank> q_{};
};

struct KummerPeriods {
    PeriodVector eta1;
    PeriodVector eta2;
    PeriodVector eta3;
    PeriodVector omega;
    lattice::TorusLattice source;
};

/**
 * Period invariants of Kum(g) for a lattice with n = 2, from the real and
 * imaginary parts of lambda^i_1, lambda^i_2:
 *
 *   eta1^ij  =   Re_i1 Re_j2 - Re_i2 Re_j1
 *   eta2^ij  = -(Im_i1 Im_j2 - Im_i2 Im_j1)
 *   eta3^ij  =   Re_i1 Im_j2 - Re_i2 Im_j1 + Im_i1 Re_j2 - Im_i2 Re_j1
 *   omega^ij =   Re_i1 Im_j1 - Re_j1 Im_i1 + Re_i2 Im_j2 - Re_j2 Im_i2
 *
 * The minus sign on eta2 is what makes the flowed period equal
 * s^-2 eta1 + s^2 eta2 + i eta3 exactly: Re[(a + ib)(c + id)] = ac - bd.
 */
KummerPeriods periods_from_lattice(const lattice::TorusLattice& lattice);

struct ComplexPeriod {
    PeriodVector real;
    PeriodVector imag;
    friend bool operator==(const ComplexPeriod&, const ComplexPeriod&) = default;
};

// Direct complex expansion of lambda^i_1 lambda^j_2 - lambda^i_2 lambda^j_1.
ComplexPeriod expand_period(const lattice::TorusLattice& lattice);

/**
 * Period of the flowed lattice, computed by direct expansion of the flowed
 * matrix and checked against s^-2 eta1 + s^2 eta2, eta3 built from the
 * unflowed invariants. A mismatch throws std::logic_error.
 */
ComplexPeriod geodesic_period(const lattice::TorusLattice& lattice, const lattice::FlowTime& time);

struct RelationCheck {
    std::string name;
    AlgNum residual;  // lhs - rhs; for the positivity check, the value itself
    bool pass = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    int orientation = 1;  // sign of det(g), applied to the pairing
    bool all_pass() const;
};

/**
 * Exact check of the period relations
 *   eta1^2 = 0, eta2^2 = 0, eta1.eta3 = 0, eta2.eta3 = 0,
 *   2 eta1.eta2 = eta3^2, eta3^2 > 0, omega.eta_i = 0 (i = 1, 2, 3)
 * and that every class is orthogonal to the sixteen C_k.
 *
 * The pairing is taken with the complex orientation of the torus, i.e. the
 * T-block is multiplied by sign(det g); a negatively oriented row basis flips
 * the sign of the cup product otherwise.
 */
RelationReport verify_period_relations(const KummerPeriods& periods,
                                       const IntersectionForm& form = IntersectionForm());

/**
 * 16 + rank of {m in Z^6 : <m, eta2> = 0} under the T-block pairing.
 * The C_k pair trivially with eta2 and contribute all 16.
 */
int eta2_rank(const lattice::TorusLattice& lattice, const IntersectionForm& form = IntersectionForm());

struct RankCriterionReport {
    foliation::Verdict verdict;
    int rank = 0;
    bool implication_holds = true;  // NotUniquelyErgodic => rank >= 19
    bool converse_flag = false;     // uniquely ergodic while rank >= 19
};

RankCriterionReport rank_criterion_report(const lattice::TorusLattice& lattice);

struct Eta2Comparison {
    PeriodVector eta2_first;
    PeriodVector eta2_second;
    bool swap_is_isometry = false;        // T14 <-> T23 preserves the form
    bool related_by_swap = false;         // eta2_second = swap(eta2_first)
    bool related_by_swap_up_to_sign = false;
};

// Compares eta2 of two lattices under the T14 <-> T23 exchange.
Eta2Comparison compare_eta2_by_swap(const lattice::TorusLattice& first, const lattice::TorusLattice& second);

}  // namespace flatdyn::kummer
