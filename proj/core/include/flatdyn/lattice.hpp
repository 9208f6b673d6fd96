#pragma once

#include "flatdyn/matrix.hpp"

#include <optional>
#include <vector>

namespace flatdyn::foliation {
class Plane;
}

namespace flatdyn::lattice {

/**
 * Lattice in C^n spanned by the rows of a real 2n x 2n matrix g.
 *
 * Row i is the generator lambda^i in coordinates (x_1, y_1, ..., x_n, y_n),
 * so the complex entry lambda^i_j is (g(i, 2j), g(i, 2j+1)) (0-based).
 * Any invertible g is accepted; unit covolume is only imposed on request.
 */
class TorusLattice {
public:
    // Throws DomainError if `rows` is not square of even size >= 2 or is singular.
    static TorusLattice from_rows(AlgMatrix rows);

    std::size_t n() const { return rows_.rows() / 2; }
    std::size_t dim() const { return rows_.rows(); }
    const AlgMatrix& rows() const { return rows_; }
    const AlgNum& det() const { return det_; }

    const AlgNum& re(std::size_t i, std::size_t j) const { return rows_(i, 2 * j); }
    const AlgNum& im(std::size_t i, std::size_t j) const { return rows_(i, 2 * j + 1); }

    friend bool operator==(const TorusLattice&, const TorusLattice&) = default;

private:
    TorusLattice(AlgMatrix rows, AlgNum det) : rows_(std::move(rows)), det_(std::move(det)) {}

    AlgMatrix rows_;
    AlgNum det_;
};

/// Flow time in multiplicative form s = e^t, kept exact.
class FlowTime {
public:
    // Throws DomainError unless s > 0.
    explicit FlowTime(AlgNum s);

    const AlgNum& s() const { return s_; }

private:
    AlgNum s_;
};

// With `normalize`, rows are scaled by |det|^(-1/2n); this succeeds only when
// that scalar is exactly representable (rational det with a rational n-th
// root of |det|), otherwise DomainError.
TorusLattice lattice_from_rows(AlgMatrix entries, bool normalize = false);

// L * diag(1/s, s, ..., 1/s, s).
TorusLattice apply_geodesic(const TorusLattice& lattice, const FlowTime& time);

// g * g^T.
AlgMatrix gram(const TorusLattice& lattice);

struct SystoleResult {
    AlgNum norm_sq;
    IntVector vector;       // m with first nonzero entry positive
    AlgVector realization;  // m * g
};

struct SystoleOptions {
    double delta = 0.99;
    double guard = 1.0 / (1 << 20);  // relative inflation of the enumeration bound
};

/**
 * Exact shortest nonzero lattice vector.
 *
 * A float LLL pass provides a reduced basis; the smallest exact norm among its
 * rows bounds the search radius. All integer vectors within the (slightly
 * inflated) radius are enumerated in floats and then compared exactly, so the
 * float stage can only affect running time. Ties are broken towards the
 * lexicographically greatest sign-normalized vector, making e_1 the witness
 * for Z^2n.
 */
SystoleResult systole(const TorusLattice& lattice, const SystoleOptions& options = {});

struct ProbeSample {
    AlgNum s;
    SystoleResult systole;
    DecimalInterval norm_sq;
};

struct ProbeResult {
    std::vector<ProbeSample> samples;
    bool strictly_decreasing = false;  // exact comparison of consecutive samples
};

// Throws DomainError on an empty time list.
ProbeResult divergence_probe(const TorusLattice& lattice, const std::vector<FlowTime>& times,
                             int digits = 12);

/**
 * Nonzero m in Z^2n with m * g inside the plane, or nothing. The returned
 * vector is the first row of the Hermite basis of all such m.
 */
std::optional<IntVector> closed_direction_certificate(const TorusLattice& lattice,
                                                      const foliation::Plane& plane);

// Double-precision copy of the rows.
Matrix<double> to_real(const AlgMatrix& m);

}  // namespace flatdyn::lattice
