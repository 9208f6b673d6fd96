#pragma once

#include "flatdyn/lattice.hpp"
#include "flatdyn/matrix.hpp"

#include <string>

namespace flatdyn::foliation {

/// Linear n-dimensional subspace of R^2n given by an exact basis of row vectors.
class Plane {
public:
    // Throws DomainError unless basis is n x 2n with exact rank n.
    static Plane from_basis(AlgMatrix basis);

    std::size_t n() const { return basis_.rows(); }
    const AlgMatrix& basis() const { return basis_; }

private:
    explicit Plane(AlgMatrix basis) : basis_(std::move(basis)) {}

    AlgMatrix basis_;
};

// Leaves y = const, spanned by the x-axes.
Plane horizontal_plane(std::size_t n);
// Leaves x = const, spanned by the y-axes.
Plane vertical_plane(std::size_t n);

// {y1 = a x1 + b x2, y2 = b x1 - a x2} with basis (1, a, 0, b), (0, b, 1, -a).
Plane slag_plane(const AlgNum& a, const AlgNum& b);

// omega_0 = sum dx_i ^ dy_i vanishes on every pair of basis vectors.
bool is_lagrangian(const Plane& plane);

struct SpecialLagrangianCheck {
    bool lagrangian = false;
    AlgNum re_omega;  // Re(dz1 ^ dz2) on the basis bivector, in the reported orientation
    AlgNum im_omega;
    bool special = false;
    bool reversed = false;  // basis order swapped to make Re > 0
};

// Complex dimension 2 only (DomainError otherwise).
SpecialLagrangianCheck check_special_lagrangian(const Plane& plane);
inline bool is_special_lagrangian(const Plane& plane) { return check_special_lagrangian(plane).special; }

// Matrix C with C * g = basis(plane).
AlgMatrix plane_in_lattice_coords(const lattice::TorusLattice& lattice, const Plane& plane);

/**
 * Hermite basis of {m in Z^k : C * m = 0} for an exact matrix C with k columns.
 *
 * Each entry is split over its square-root basis, giving one rational row per
 * (row of C, radicand) pair. Integer m kills an exact row iff it kills every
 * rational layer, so the kernel of the stacked rational matrix, saturated in
 * Z^k, is the answer.
 */
IntMatrix integer_covector_kernel(const AlgMatrix& c);

enum class Verdict { UniquelyErgodic, NotUniquelyErgodic };

std::string to_string(Verdict v);

struct UEDecision {
    Verdict verdict = Verdict::UniquelyErgodic;
    IntMatrix certificate;              // empty iff uniquely ergodic
    std::size_t rational_span_rank = 0;  // 2n - rank(certificate)
    AlgMatrix lattice_coords;            // the plane in lattice coordinates
};

/**
 * Exact unique-ergodicity decision for the linear foliation with leaves
 * parallel to `plane`.
 *
 * The foliation fails to be uniquely ergodic exactly when its leaves lie in the
 * real span of a proper sublattice, i.e. when some nonzero integer covector
 * (in lattice coordinates) vanishes on the plane. The certificate is the
 * Hermite basis of all such covectors; when it is empty a generic direction
 * in the plane is totally irrational and its straight-line flow equidistributes.
 */
UEDecision unique_ergodicity(const lattice::TorusLattice& lattice, const Plane& plane);

// Every certificate row annihilates every row of `coords`, exactly.
bool certificate_annihilates(const IntMatrix& certificate, const AlgMatrix& coords);

// Lattice-coordinate row of v admits no nonzero integer annihilator.
// Throws DomainError for v = 0.
bool totally_irrational(const lattice::TorusLattice& lattice, const AlgVector& v);

}  // namespace flatdyn::foliation
