#include "colliq/builders.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "colliq/factorize.hpp"

namespace colliq {

Colligation blaschke_colligation(Complex lambda) {
    if (std::abs(lambda) >= 1.0) {
        throw DomainError("blaschke parameter must lie strictly inside the disc");
    }
    const double s = std::sqrt(1.0 - std::norm(lambda));
    return make_colligation(-lambda, CMatrix(1, 1, {s}), CMatrix(1, 1, {s}),
                            CMatrix(1, 1, {std::conj(lambda)}), SpacePartition{{1}, std::nullopt});
}

Colligation monomial_colligation(std::size_t m) {
    if (m < 1) {
        throw ArgumentError("monomial degree must be positive");
    }
    CMatrix b(1, m);
    b(0, 0) = 1.0;
    CMatrix c(m, 1);
    c(m - 1, 0) = 1.0;
    CMatrix d(m, m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        d(i, i + 1) = 1.0;
    }
    return make_colligation(Complex{0.0}, std::move(b), std::move(c), std::move(d),
                            SpacePartition{{m}, std::nullopt});
}

Colligation shifted_blaschke_product_colligation(Complex alpha, Complex beta) {
    if (std::abs(alpha) >= 1.0 || std::abs(beta) >= 1.0) {
        throw DomainError("blaschke parameters must lie strictly inside the disc");
    }
    const double sa = std::sqrt(1.0 - std::norm(alpha));
    const double sb = std::sqrt(1.0 - std::norm(beta));
    const CMatrix full(3, 3,
                       {alpha * beta, Complex{sa}, -alpha * sb,
                        -beta * sa, std::conj(alpha), Complex{sa * sb},
                        Complex{sb}, Complex{0.0}, std::conj(beta)});
    return from_matrix(full, SpacePartition{{1, 1}, std::nullopt});
}

Colligation random_isometric_colligation(const SpacePartition& partition, std::uint64_t seed) {
    partition.validate();
    return from_matrix(haar_unitary(1 + partition.total(), seed), partition);
}

Colligation random_zero_constant_colligation(const SpacePartition& partition, std::uint64_t seed) {
    partition.validate();
    if (partition.total() < 1) {
        throw ArgumentError("a zero constant needs a state dimension of at least one");
    }
    CMatrix u = haar_unitary(1 + partition.total(), seed);
    const Complex p = u(0, 0);
    const Complex q = u(1, 0);
    const double rho = std::sqrt(std::norm(p) + std::norm(q));
    if (rho > 0.0) {
        // Left-multiply by the 2x2 unitary [[q, -p], [conj(p), conj(q)]]/rho on
        // rows 0 and 1; the new (0,0) entry is (q*p - p*q)/rho = 0 exactly.
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const Complex r0 = u(0, j);
            const Complex r1 = u(1, j);
            u(0, j) = (q * r0 - p * r1) * (1.0 / rho);
            u(1, j) = (std::conj(p) * r0 + std::conj(q) * r1) * (1.0 / rho);
        }
    }
    u(0, 0) = 0.0; // exact by construction; pin against rounding
    return from_matrix(u, partition);
}

namespace {

// Haar colligation resampled until the constant term is usably large.
Colligation random_solid_constant_colligation(const SpacePartition& partition, Rng& master) {
    for (;;) {
        const Colligation v = random_isometric_colligation(partition, master.next_u64());
        if (std::abs(v.a) >= 0.1) {
            return v;
        }
    }
}

} // namespace

Colligation random_structured_colligation(StructuredKind kind, const SpacePartition& partition,
                                          std::size_t m, std::uint64_t seed) {
    partition.validate();
    Rng master(seed);
    switch (kind) {
    case StructuredKind::fm: {
        const std::size_t n = partition.count();
        if (m < 1 || m >= n) {
            throw ArgumentError("fm kind needs 1 <= m < n");
        }
        SpacePartition p1{{partition.dims.begin(), partition.dims.begin() + static_cast<std::ptrdiff_t>(m)},
                          std::nullopt};
        SpacePartition p2{{partition.dims.begin() + static_cast<std::ptrdiff_t>(m), partition.dims.end()},
                          std::nullopt};
        const Colligation v1 = random_isometric_colligation(p1, master.next_u64());
        const Colligation v2 = random_isometric_colligation(p2, master.next_u64());
        return product_fm(v1, v2);
    }
    case StructuredKind::fn: {
        if (!partition.split) {
            throw ArgumentError("fn kind needs a paired split");
        }
        SpacePartition pm;
        SpacePartition pn;
        for (const auto& [mi, ni] : *partition.split) {
            pm.dims.push_back(mi);
            pn.dims.push_back(ni);
        }
        const Colligation v1 = random_isometric_colligation(pm, master.next_u64());
        const Colligation v2 = random_isometric_colligation(pn, master.next_u64());
        return product_fn(v1, v2);
    }
    case StructuredKind::chain: {
        std::vector<Colligation> factors;
        factors.reserve(partition.count());
        for (std::size_t d : partition.dims) {
            factors.push_back(
                random_solid_constant_colligation(SpacePartition{{d}, std::nullopt}, master));
        }
        return product_chain(factors);
    }
    case StructuredKind::zero_origin_1: {
        if (partition.count() != 2 || partition.dims[0] < 1) {
            throw ArgumentError("zero-origin kinds need two blocks with dim(H_1) >= 1");
        }
        const Colligation v1 = random_zero_constant_colligation(
            SpacePartition{{partition.dims[0]}, std::nullopt}, master.next_u64());
        const Colligation v2 = random_solid_constant_colligation(
            SpacePartition{{partition.dims[1]}, std::nullopt}, master);
        return product_fm(v1, v2);
    }
    case StructuredKind::zero_origin_2: {
        if (partition.count() != 2 || partition.dims[0] < 1 || partition.dims[1] < 1) {
            throw ArgumentError("zero-origin second kind needs two blocks of dimension >= 1");
        }
        const Colligation v1 = random_zero_constant_colligation(
            SpacePartition{{partition.dims[0]}, std::nullopt}, master.next_u64());
        const Colligation v2 = random_zero_constant_colligation(
            SpacePartition{{partition.dims[1]}, std::nullopt}, master.next_u64());
        return product_fm(v1, v2);
    }
    }
    throw ArgumentError("unknown structured kind");
}

BallColligation random_isometric_ball_colligation(std::size_t vars, std::size_t dim,
                                                  std::uint64_t seed,
                                                  std::optional<std::pair<std::size_t, std::size_t>> split) {
    if (vars < 1) {
        throw ArgumentError("at least one variable is required");
    }
    const CMatrix u = haar_unitary(1 + vars * dim, seed);
    const CMatrix iso = submatrix(u, 0, 1 + vars * dim, 0, 1 + dim);
    return make_ball_colligation(iso(0, 0), submatrix(iso, 0, 1, 1, 1 + dim),
                                 submatrix(iso, 1, 1 + vars * dim, 0, 1),
                                 submatrix(iso, 1, 1 + vars * dim, 1, 1 + dim), vars, dim, split);
}

BallColligation separated_ball_product(const BallColligation& phi, const BallColligation& psi) {
    validate_ball_isometry(phi);
    validate_ball_isometry(psi);
    const std::size_t m = phi.vars;
    const std::size_t vars = phi.vars + psi.vars;
    const std::size_t d1 = phi.dim;
    const std::size_t d2 = psi.dim;
    const std::size_t dim = d1 + d2;

    CMatrix b(1, dim);
    set_submatrix(b, 0, 0, phi.B);
    set_submatrix(b, 0, d1, phi.a * psi.B);
    CMatrix c(vars * dim, 1);
    CMatrix d(vars * dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
        set_submatrix(c, i * dim, 0, psi.a * ball_c_block(phi, i));
        set_submatrix(d, i * dim, 0, ball_d_block(phi, i));
        set_submatrix(d, i * dim, d1, ball_c_block(phi, i) * psi.B);
    }
    for (std::size_t i = m; i < vars; ++i) {
        set_submatrix(c, i * dim + d1, 0, ball_c_block(psi, i - m));
        set_submatrix(d, i * dim + d1, d1, ball_d_block(psi, i - m));
    }
    return make_ball_colligation(phi.a * psi.a, std::move(b), std::move(c), std::move(d), vars, dim,
                                 std::make_pair(d1, d2));
}

} // namespace colliq
