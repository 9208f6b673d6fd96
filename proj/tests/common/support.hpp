#pragma once

#include "flatdyn/exact_linalg.hpp"
#include "flatdyn/lattice.hpp"
#include "flatdyn/matrix_io.hpp"

#include <random>
#include <string>

namespace flatdyn::fixtures {

using Rng = std::mt19937_64;

inline AlgMatrix mat(const std::string& text) { return parse_matrix_text(text); }

inline lattice::TorusLattice identity4() { return lattice::lattice_from_rows(AlgMatrix::identity(4)); }

inline lattice::TorusLattice divergent_ue() {
    return lattice::lattice_from_rows(mat("1 0 0 0\n0 1 0 0\nsqrt(3) sqrt(5) 1 sqrt(2)\n0 0 0 1\n"));
}

inline lattice::TorusLattice pair_g() {
    return lattice::lattice_from_rows(mat("1 1 0 0\n1 sqrt(2) 0 0\n0 -sqrt(3) 1 0\n0 0 1 1\n"));
}

inline lattice::TorusLattice pair_h() {
    return lattice::lattice_from_rows(mat("1 0 0 0\n1 1 0 0\n0 0 1 1\n0 sqrt(3) 1 sqrt(2)\n"));
}

// Rational in [-bound, bound] with denominator 1..max_den.
inline Rational random_rational(Rng& rng, long bound = 3, long max_den = 4) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> num(-bound * d, bound * d);
    Rational q(num(rng), d);
    q.canonicalize();
    return q;
}

// Element of Q(sqrt2, sqrt3, sqrt5) with a few random nonzero terms.
inline AlgNum random_algnum(Rng& rng) {
    static const long keys[] = {1, 2, 3, 5, 6, 10, 15, 30};
    std::uniform_int_distribution<int> pick(0, 7), count(1, 4);
    AlgNum v;
    for (int i = count(rng); i > 0; --i)
        v += AlgNum(random_rational(rng)) * AlgNum::sqrt(keys[pick(rng)]);
    return v;
}

inline AlgMatrix random_rational_matrix(Rng& rng, std::size_t n, const Rational& min_abs_det = Rational(1, 4)) {
    for (;;) {
        AlgMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = random_rational(rng);
        if (abs(determinant(m)) >= AlgNum(min_abs_det))
            return m;
    }
}

inline lattice::TorusLattice random_lattice(Rng& rng) { return lattice::lattice_from_rows(random_rational_matrix(rng, 4)); }

// Product of random elementary integer operations; determinant 1.
inline AlgMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 12) {
    AlgMatrix u = AlgMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j)
            continue;
        AlgNum c(coeff(rng));
        for (std::size_t k = 0; k < n; ++k)
            u(i, k) += c * u(j, k);
    }
    return u;
}

/**
 * Lattice whose first three generators have pairwise parallel imaginary
 * parts: Im lambda^2 = a Im lambda^1, Im lambda^3 = b Im lambda^1 for small
 * integers a, b. The real parts and lambda^4 are random rationals.
 */
inline lattice::TorusLattice collinear_lattice(Rng& rng) {
    std::uniform_int_distribution<long> k(-3, 3);
    for (;;) {
        AlgMatrix m = random_rational_matrix(rng, 4, Rational(0));
        long a = k(rng), b = k(rng);
        for (std::size_t col : {1u, 3u}) {
            m(1, col) = AlgNum(a) * m(0, col);
            m(2, col) = AlgNum(b) * m(0, col);
        }
        if (!determinant(m).is_zero())
            return lattice::lattice_from_rows(m);
    }
}

}  // namespace flatdyn::fixtures
