#include "flatdyn/foliation.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/exact_linalg.hpp"

#include <set>

namespace flatdyn::foliation {

Plane Plane::from_basis(AlgMatrix basis) {
    if (basis.rows() == 0 || basis.cols() != 2 * basis.rows())
        throw DomainError("plane basis must be n x 2n");
    if (rank(basis) != basis.rows())
        throw DomainError("plane basis is not of full rank");
    return Plane(std::move(basis));
}

Plane horizontal_plane(std::size_t n) {
    if (n == 0)
        throw DomainError("plane dimension must be at least 1");
    AlgMatrix b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        b(i, 2 * i) = AlgNum(1L);
    return Plane::from_basis(std::move(b));
}

Plane vertical_plane(std::size_t n) {
    if (n == 0)
        throw DomainError("plane dimension must be at least 1");
    AlgMatrix b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        b(i, 2 * i + 1) = AlgNum(1L);
    return Plane::from_basis(std::move(b));
}

Plane slag_plane(const AlgNum& a, const AlgNum& b) {
    AlgNum one(1L);
    AlgNum zero;
    return Plane::from_basis(AlgMatrix{{one, a, zero, b}, {zero, b, one, -a}});
}

namespace {

AlgNum omega0(std::span<const AlgNum> u, std::span<const AlgNum> v) {
    AlgNum s;
    for (std::size_t i = 0; i + 1 < u.size(); i += 2)
        s += u[i] * v[i + 1] - u[i + 1] * v[i];
    return s;
}

}  // namespace

bool is_lagrangian(const Plane& plane) {
    const AlgMatrix& b = plane.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = i + 1; j < b.rows(); ++j)
            if (!omega0(b.row(i), b.row(j)).is_zero())
                return false;
    return true;
}

SpecialLagrangianCheck check_special_lagrangian(const Plane& plane) {
    if (plane.n() != 2)
        throw DomainError("special Lagrangian check needs complex dimension 2");
    const AlgMatrix& b = plane.basis();
    auto u = b.row(0);
    auto v = b.row(1);
    // dz_j(w) = w_{x_j} + i w_{y_j};  Omega(u, v) = dz1(u) dz2(v) - dz2(u) dz1(v).
    AlgNum re = (u[0] * v[2] - u[1] * v[3]) - (u[2] * v[0] - u[3] * v[1]);
    AlgNum im = (u[0] * v[3] + u[1] * v[2]) - (u[2] * v[1] + u[3] * v[0]);
    SpecialLagrangianCheck out;
    out.lagrangian = is_lagrangian(plane);
    out.reversed = re.sign() < 0;
    out.re_omega = out.reversed ? -re : re;
    out.im_omega = out.reversed ? -im : im;
    out.special = out.lagrangian && im.is_zero() && !re.is_zero();
    return out;
}

AlgMatrix plane_in_lattice_coords(const lattice::TorusLattice& lattice, const Plane& plane) {
    if (plane.basis().cols() != lattice.dim())
        throw DomainError("plane and lattice dimensions differ");
    return plane.basis() * inverse(lattice.rows());
}

IntMatrix integer_covector_kernel(const AlgMatrix& c) {
    const std::size_t k = c.cols();
    std::set<std::uint64_t> keys;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (const auto& t : c(i, j).terms())
                keys.insert(t.radicand);

    std::vector<IntVector> layers;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::uint64_t key : keys) {
            std::vector<Rational> row(k);
            Integer lcm = 1;
            bool nonzero = false;
            for (std::size_t j = 0; j < k; ++j) {
                row[j] = c(i, j).coefficient(key);
                if (row[j] != 0) {
                    nonzero = true;
                    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), row[j].get_den_mpz_t());
                }
            }
            if (!nonzero)
                continue;
            IntVector scaled(k);
            for (std::size_t j = 0; j < k; ++j) {
                Rational q = row[j] * Rational(lcm);
                q.canonicalize();
                scaled[j] = q.get_num();
            }
            layers.push_back(std::move(scaled));
        }
    }
    if (layers.empty())
        return IntMatrix::identity(k);
    IntMatrix a(k, layers.size(), Integer(0));
    for (std::size_t l = 0; l < layers.size(); ++l)
        for (std::size_t j = 0; j < k; ++j)
            a(j, l) = layers[l][j];
    return integer_left_kernel(a);
}

std::string to_string(Verdict v) {
    return v == Verdict::UniquelyErgodic ? "uniquely-ergodic" : "not-uniquely-ergodic";
}

bool certificate_annihilates(const IntMatrix& certificate, const AlgMatrix& coords) {
    for (std::size_t r = 0; r < certificate.rows(); ++r)
        for (std::size_t i = 0; i < coords.rows(); ++i) {
            AlgNum s;
            for (std::size_t j = 0; j < coords.cols(); ++j)
                s += AlgNum(certificate(r, j)) * coords(i, j);
            if (!s.is_zero())
                return false;
        }
    return true;
}

UEDecision unique_ergodicity(const lattice::TorusLattice& lattice, const Plane& plane) {
    UEDecision out;
    out.lattice_coords = plane_in_lattice_coords(lattice, plane);
    out.certificate = integer_covector_kernel(out.lattice_coords);
    out.verdict = out.certificate.rows() == 0 ? Verdict::UniquelyErgodic : Verdict::NotUniquelyErgodic;
    out.rational_span_rank = lattice.dim() - out.certificate.rows();
    return out;
}

bool totally_irrational(const lattice::TorusLattice& lattice, const AlgVector& v) {
    if (v.size() != lattice.dim())
        throw DomainError("vector and lattice dimensions differ");
    bool all_zero = true;
    for (const auto& x : v)
        all_zero = all_zero && x.is_zero();
    if (all_zero)
        throw DomainError("zero vector has no direction");
    AlgMatrix row(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        row(0, j) = v[j];
    AlgMatrix coords = row * inverse(lattice.rows());
    return integer_covector_kernel(coords).rows() == 0;
}

}  // namespace flatdyn::foliation
