#include "flatdyn/exact_linalg.hpp"

#include "flatdyn/errors.hpp"

namespace flatdyn {

namespace {

// Prefer rational pivots: they keep the elimination in the smallest field
// for as long as possible.
std::size_t choose_pivot(const AlgMatrix& a, std::size_t from, std::size_t col) {
    std::size_t best = a.rows();
    for (std::size_t i = from; i < a.rows(); ++i) {
        if (a(i, col).is_zero())
            continue;
        if (a(i, col).is_rational())
            return i;
        if (best == a.rows())
            best = i;
    }
    return best;
}

}  // namespace

AlgNum determinant(AlgMatrix a) {
    if (a.rows() != a.cols())
        throw DomainError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    AlgNum det(1L);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = choose_pivot(a, c, c);
        if (p == n)
            return {};
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        AlgNum inv_pivot = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero())
                continue;
            AlgNum f = a(i, c) * inv_pivot;
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::vector<std::size_t> rref(AlgMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = choose_pivot(a, r, c);
        if (p == a.rows())
            continue;
        a.swap_rows(p, r);
        AlgNum inv_pivot = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) *= inv_pivot;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero())
                continue;
            AlgNum f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(AlgMatrix a) { return rref(a).size(); }

AlgMatrix inverse(const AlgMatrix& a) {
    if (a.rows() != a.cols())
        throw DomainError("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    AlgMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = AlgNum(1L);
    }
    std::vector<std::size_t> piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw DomainError("matrix is singular");
    AlgMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

AlgMatrix right_nullspace(AlgMatrix a) {
    std::vector<std::size_t> piv = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : piv)
        is_pivot[c] = true;
    AlgMatrix basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        AlgVector v(a.cols());
        v[f] = AlgNum(1L);
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -a(r, f);
        basis.append_row(v);
    }
    if (basis.rows() == 0)
        return AlgMatrix(0, a.cols());
    return basis;
}

AlgVector row_times(std::span<const Integer> m, const AlgMatrix& g) {
    AlgVector out(g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (m[i] == 0)
            continue;
        AlgNum mi(m[i]);
        for (std::size_t j = 0; j < g.cols(); ++j)
            out[j] += mi * g(i, j);
    }
    return out;
}

AlgVector row_times(std::span<const AlgNum> v, const AlgMatrix& g) {
    AlgVector out(g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (v[i].is_zero())
            continue;
        for (std::size_t j = 0; j < g.cols(); ++j)
            out[j] += v[i] * g(i, j);
    }
    return out;
}

AlgNum dot(std::span<const AlgNum> a, std::span<const AlgNum> b) {
    AlgNum s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

AlgNum norm_sq(std::span<const AlgNum> v) { return dot(v, v); }

namespace {

// Unimodular row reduction to echelon form, applied to rows [0, rows) and
// columns [0, cols). Returns the number of nonzero rows.
std::size_t integer_echelon(IntMatrix& a, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.rows(); ++c) {
        std::size_t p = a.rows();
        for (std::size_t i = r; i < a.rows(); ++i)
            if (a(i, c) != 0) {
                p = i;
                break;
            }
        if (p == a.rows())
            continue;
        a.swap_rows(p, r);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0)
                continue;
            Integer x = a(r, c);
            Integer y = a(i, c);
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Integer xg = x / g;
            Integer yg = y / g;
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Integer u = a(r, j);
                Integer v = a(i, j);
                a(r, j) = s * u + t * v;
                a(i, j) = xg * v - yg * u;
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix a) {
    std::size_t r = integer_echelon(a, a.cols());
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t c = 0;
        while (a(i, c) == 0)
            ++c;
        pivots.push_back(c);
        if (a(i, c) < 0)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) = -a(i, j);
        for (std::size_t k = 0; k < i; ++k) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a(k, c).get_mpz_t(), a(i, c).get_mpz_t());
            if (q == 0)
                continue;
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(k, j) -= q * a(i, j);
        }
    }
    IntMatrix out(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    return out;
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
    const std::size_t n = a.rows();
    const std::size_t c = a.cols();
    IntMatrix aug(n, c + n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j)
            aug(i, j) = a(i, j);
        aug(i, c + i) = 1;
    }
    std::size_t r = integer_echelon(aug, c);
    // The transform is unimodular, so the trailing rows (zero in the first c
    // columns) carry a Z-basis of the kernel.
    IntMatrix kernel(n - r, n);
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            kernel(i - r, j) = aug(i, c + j);
    if (kernel.rows() == 0)
        return IntMatrix(0, n);
    return hermite_normal_form(std::move(kernel));
}

}  // namespace flatdyn
