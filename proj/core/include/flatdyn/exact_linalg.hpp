#pragma once

#include "flatdyn/matrix.hpp"

#include <span>

namespace flatdyn {

// Gaussian elimination over the multi-quadratic field. Pivots are chosen by
// exact zero test, so every result is exact.

AlgNum determinant(AlgMatrix a);
std::size_t rank(AlgMatrix a);

// Throws DomainError when singular.
AlgMatrix inverse(const AlgMatrix& a);

// Reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(AlgMatrix& a);

// Rows form a basis of {x : a * x = 0}.
AlgMatrix right_nullspace(AlgMatrix a);

AlgVector row_times(std::span<const Integer> m, const AlgMatrix& g);
AlgVector row_times(std::span<const AlgNum> v, const AlgMatrix& g);
AlgNum dot(std::span<const AlgNum> a, std::span<const AlgNum> b);
AlgNum norm_sq(std::span<const AlgNum> v);

// Integer lattice machinery.

// Row-style Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows are dropped, so the result is the
// canonical basis of the row lattice.
IntMatrix hermite_normal_form(IntMatrix a);

// Basis (in Hermite normal form) of {m in Z^rows : m * a = 0}. The result is
// saturated: it spans every integer solution, not just a finite-index subgroup.
IntMatrix integer_left_kernel(const IntMatrix& a);

}  // namespace flatdyn
