#pragma once

#include "flatdyn/matrix.hpp"

#include <cstdint>
#include <functional>
#include <span>

namespace flatdyn {

using RealMatrix = Matrix<double>;
using TransformMatrix = Matrix<std::int64_t>;

/// Gram-Schmidt data of a row basis: mu(i, j) for j < i and squared lengths of b*_i.
struct GramSchmidt {
    RealMatrix mu;
    std::vector<double> bstar_sq;
};

GramSchmidt gram_schmidt(const RealMatrix& basis);

/**
 * Floating-point LLL on the rows of `basis`, in place.
 *
 * Returns the unimodular transform U with reduced = U * original. This is a
 * heuristic accelerator only: callers recompute anything they trust exactly.
 */
TransformMatrix lll_reduce(RealMatrix& basis, double delta = 0.99);

/**
 * Enumerate every nonzero coefficient vector x (up to sign) with
 * |x * basis|^2 <= radius_sq, by Schnorr-Euchner style depth-first search over
 * the Gram-Schmidt coordinates. Of each pair {x, -x} only the one whose last
 * nonzero coordinate is positive is visited.
 */
void enumerate_short_vectors(const RealMatrix& basis, double radius_sq,
                             const std::function<void(std::span<const std::int64_t>, double)>& visit);

}  // namespace flatdyn
