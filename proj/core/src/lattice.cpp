#include "flatdyn/lattice.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/exact_linalg.hpp"
#include "flatdyn/foliation.hpp"
#include "flatdyn/lll.hpp"

#include <algorithm>

namespace flatdyn::lattice {

TorusLattice TorusLattice::from_rows(AlgMatrix rows) {
    if (rows.rows() != rows.cols())
        throw DomainError("lattice matrix must be square");
    if (rows.rows() < 2 || rows.rows() % 2 != 0)
        throw DomainError("lattice matrix dimension must be even and at least 2");
    AlgNum det = determinant(rows);
    if (det.is_zero())
        throw DomainError("lattice matrix is singular");
    return TorusLattice(std::move(rows), std::move(det));
}

FlowTime::FlowTime(AlgNum s) : s_(std::move(s)) {
    if (s_.sign() <= 0)
        throw DomainError("flow time s = e^t must be positive");
}

namespace {

// |det|^(-1/(2n)) when it lies in a multi-quadratic field reachable from a
// rational determinant: the n-th root of |det| must be rational, then the
// scalar is 1/sqrt of it.
std::optional<AlgNum> volume_scalar(const AlgNum& det, std::size_t n) {
    AlgNum a = abs(det);
    if (a == AlgNum(1L))
        return AlgNum(1L);
    if (!a.is_rational())
        return std::nullopt;
    Rational q = a.rational_part();
    Integer num, den;
    auto ul = static_cast<unsigned long>(n);
    if (!mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), ul) ||
        !mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), ul))
        return std::nullopt;
    // sqrt(num/den) = sqrt(num*den)/den
    AlgNum root = AlgNum::sqrt(num * den) / AlgNum(den);
    return root.inverse();
}

}  // namespace

TorusLattice lattice_from_rows(AlgMatrix entries, bool normalize) {
    TorusLattice l = TorusLattice::from_rows(std::move(entries));
    if (!normalize)
        return l;
    std::optional<AlgNum> c = volume_scalar(l.det(), l.n());
    if (!c)
        throw DomainError("volume normalization scalar " + abs(l.det()).to_string() +
                          "^(-1/" + std::to_string(l.dim()) + ") is not exactly representable");
    AlgMatrix scaled = l.rows();
    for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j)
            scaled(i, j) *= *c;
    return TorusLattice::from_rows(std::move(scaled));
}

TorusLattice apply_geodesic(const TorusLattice& lattice, const FlowTime& time) {
    AlgNum s = time.s();
    AlgNum s_inv = s.inverse();
    AlgMatrix g = lattice.rows();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            g(i, j) *= (j % 2 == 0) ? s_inv : s;
    return TorusLattice::from_rows(std::move(g));
}

AlgMatrix gram(const TorusLattice& lattice) {
    const AlgMatrix& g = lattice.rows();
    const std::size_t d = g.rows();
    AlgMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            out(i, j) = dot(g.row(i), g.row(j));
            out(j, i) = out(i, j);
        }
    return out;
}

Matrix<double> to_real(const AlgMatrix& m) {
    Matrix<double> out(m.rows(), m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j).to_double();
    return out;
}

namespace {

void normalize_sign(IntVector& m) {
    for (const auto& x : m) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : m)
                y = -y;
        return;
    }
}

bool lex_greater(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

SystoleResult systole(const TorusLattice& lattice, const SystoleOptions& options) {
    const AlgMatrix& g = lattice.rows();
    const std::size_t d = g.rows();

    RealMatrix approx = to_real(g);
    TransformMatrix u = lll_reduce(approx, options.delta);

    std::optional<SystoleResult> best;
    auto consider = [&](IntVector m) {
        normalize_sign(m);
        AlgVector v = row_times(m, g);
        AlgNum nsq = norm_sq(v);
        if (best) {
            int c = compare(nsq, best->norm_sq);
            if (c > 0 || (c == 0 && !lex_greater(m, best->vector)))
                return;
        }
        best = SystoleResult{std::move(nsq), std::move(m), std::move(v)};
    };

    // Exact upper bound from the reduced rows.
    AlgMatrix reduced(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        IntVector m(d);
        for (std::size_t j = 0; j < d; ++j)
            m[j] = Integer(static_cast<long>(u(i, j)));
        AlgVector row = row_times(m, g);
        for (std::size_t j = 0; j < d; ++j)
            reduced(i, j) = row[j];
        consider(std::move(m));
    }

    // Re-derive the float basis from the exact reduced rows so enumeration
    // starts from correctly rounded data.
    RealMatrix basis = to_real(reduced);
    double radius_sq = best->norm_sq.to_double() * (1.0 + options.guard);
    enumerate_short_vectors(basis, radius_sq, [&](std::span<const std::int64_t> x, double) {
        IntVector m(d, Integer(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0)
                continue;
            Integer xi(static_cast<long>(x[i]));
            for (std::size_t j = 0; j < d; ++j)
                m[j] += xi * Integer(static_cast<long>(u(i, j)));
        }
        consider(std::move(m));
    });
    return std::move(*best);
}

ProbeResult divergence_probe(const TorusLattice& lattice, const std::vector<FlowTime>& times, int digits) {
    if (times.empty())
        throw DomainError("divergence probe needs at least one flow time");
    ProbeResult out;
    for (const FlowTime& t : times) {
        SystoleResult sys = systole(apply_geodesic(lattice, t));
        DecimalInterval iv = sys.norm_sq.approx(digits);
        out.samples.push_back({t.s(), std::move(sys), std::move(iv)});
    }
    out.strictly_decreasing = true;
    for (std::size_t i = 1; i < out.samples.size(); ++i)
        if (!(out.samples[i].systole.norm_sq < out.samples[i - 1].systole.norm_sq))
            out.strictly_decreasing = false;
    return out;
}

std::optional<IntVector> closed_direction_certificate(const TorusLattice& lattice,
                                                      const foliation::Plane& plane) {
    if (plane.basis().cols() != lattice.dim())
        throw DomainError("plane and lattice dimensions differ");
    // m * g lies in the plane iff it is orthogonal to every normal of the plane.
    AlgMatrix normals = right_nullspace(plane.basis());
    if (normals.rows() == 0)
        return IntVector(lattice.dim(), Integer(0));
    AlgMatrix conditions = normals * lattice.rows().transpose();
    IntMatrix k = foliation::integer_covector_kernel(conditions);
    if (k.rows() == 0)
        return std::nullopt;
    return IntVector(k.row(0).begin(), k.row(0).end());
}

}  // namespace flatdyn::lattice
