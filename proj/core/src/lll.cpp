#include "flatdyn/lll.hpp"

#include "flatdyn/errors.hpp"

#include <cmath>
#include <limits>

namespace flatdyn {

GramSchmidt gram_schmidt(const RealMatrix& b) {
    const std::size_t d = b.rows();
    const std::size_t m = b.cols();
    GramSchmidt gs{RealMatrix(d, d, 0.0), std::vector<double>(d, 0.0)};
    RealMatrix star = b;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double num = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                num += b(i, k) * star(j, k);
            double mu = gs.bstar_sq[j] > 0 ? num / gs.bstar_sq[j] : 0.0;
            gs.mu(i, j) = mu;
            for (std::size_t k = 0; k < m; ++k)
                star(i, k) -= mu * star(j, k);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            s += star(i, k) * star(i, k);
        gs.bstar_sq[i] = s;
        gs.mu(i, i) = 1.0;
    }
    return gs;
}

namespace {

void sub_row(RealMatrix& b, TransformMatrix& u, std::size_t target, std::size_t src, std::int64_t q) {
    for (std::size_t k = 0; k < b.cols(); ++k)
        b(target, k) -= static_cast<double>(q) * b(src, k);
    for (std::size_t k = 0; k < u.cols(); ++k)
        u(target, k) -= q * u(src, k);
}

}  // namespace

TransformMatrix lll_reduce(RealMatrix& b, double delta) {
    const std::size_t d = b.rows();
    TransformMatrix u = TransformMatrix::identity(d);
    if (d < 2)
        return u;
    GramSchmidt gs = gram_schmidt(b);
    std::size_t k = 1;
    std::size_t iterations = 0;
    while (k < d) {
        if (++iterations > 1'000'000)
            throw DomainError("LLL did not converge");
        for (std::size_t jj = k; jj-- > 0;) {
            double mu = gs.mu(k, jj);
            if (std::abs(mu) <= 0.5)
                continue;
            double rounded = std::nearbyint(mu);
            if (std::abs(rounded) > 9.0e15)
                throw DomainError("LLL coefficient overflow");
            auto q = static_cast<std::int64_t>(rounded);
            sub_row(b, u, k, jj, q);
            for (std::size_t i = 0; i < jj; ++i)
                gs.mu(k, i) -= rounded * gs.mu(jj, i);
            gs.mu(k, jj) -= rounded;
        }
        double lhs = gs.bstar_sq[k];
        double rhs = (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.bstar_sq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            b.swap_rows(k, k - 1);
            u.swap_rows(k, k - 1);
            gs = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return u;
}

void enumerate_short_vectors(const RealMatrix& basis, double radius_sq,
                             const std::function<void(std::span<const std::int64_t>, double)>& visit) {
    const std::size_t d = basis.rows();
    if (d == 0)
        return;
    GramSchmidt gs = gram_schmidt(basis);
    std::vector<std::int64_t> x(d, 0);
    std::vector<double> partial(d + 1, 0.0);

    // Depth-first over levels d-1 .. 0; `all_zero_above` enforces one sign per pair.
    std::function<void(std::size_t, bool)> level = [&](std::size_t i, bool all_zero_above) {
        double center = 0.0;
        for (std::size_t j = i + 1; j < d; ++j)
            center -= static_cast<double>(x[j]) * gs.mu(j, i);
        double room = radius_sq - partial[i + 1];
        if (room < 0 || gs.bstar_sq[i] <= 0)
            return;
        double half = std::sqrt(room / gs.bstar_sq[i]);
        double lo = std::ceil(center - half);
        double hi = std::floor(center + half);
        if (all_zero_above)
            lo = std::max(lo, 0.0);
        for (double v = lo; v <= hi; v += 1.0) {
            x[i] = static_cast<std::int64_t>(v);
            double diff = v - center;
            partial[i] = partial[i + 1] + diff * diff * gs.bstar_sq[i];
            if (partial[i] > radius_sq)
                continue;
            bool zero_here = all_zero_above && x[i] == 0;
            if (i == 0) {
                if (!zero_here)
                    visit(x, partial[0]);
            } else {
                level(i - 1, zero_here);
            }
        }
        x[i] = 0;
    };
    level(d - 1, true);
}

}  // namespace flatdyn
