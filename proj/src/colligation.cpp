#include "colliq/colligation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace colliq {

std::size_t SpacePartition::total() const {
    std::size_t t = 0;
    for (std::size_t d : dims) {
        t += d;
    }
    return t;
}

std::size_t SpacePartition::offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) {
        off += dims[k];
    }
    return off;
}

std::size_t SpacePartition::split_left_total() const {
    if (!split) {
        throw ArgumentError("partition has no split");
    }
    std::size_t t = 0;
    for (const auto& [m, n] : *split) {
        t += m;
        (void)n;
    }
    return t;
}

std::size_t SpacePartition::split_right_total() const {
    if (!split) {
        throw ArgumentError("partition has no split");
    }
    std::size_t t = 0;
    for (const auto& [m, n] : *split) {
        t += n;
        (void)m;
    }
    return t;
}

void SpacePartition::validate() const {
    if (dims.empty()) {
        throw ArgumentError("partition needs at least one block");
    }
    if (split) {
        if (split->size() != dims.size()) {
            throw ArgumentError("split length must match block count");
        }
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if ((*split)[i].first + (*split)[i].second != dims[i]) {
                throw ArgumentError("split pair " + std::to_string(i) + " does not sum to the block dimension");
            }
        }
    }
}

Colligation make_colligation(Complex a, CMatrix B, CMatrix C, CMatrix D, SpacePartition partition) {
    partition.validate();
    const std::size_t t = partition.total();
    if (B.rows() != 1 || B.cols() != t) {
        throw DimensionError("B must be 1 x total");
    }
    if (C.rows() != t || C.cols() != 1) {
        throw DimensionError("C must be total x 1");
    }
    if (D.rows() != t || D.cols() != t) {
        throw DimensionError("D must be total x total");
    }
    return Colligation{a, std::move(B), std::move(C), std::move(D), std::move(partition)};
}

CMatrix assemble(const Colligation& v) {
    const std::size_t t = v.partition.total();
    CMatrix out(1 + t, 1 + t);
    out(0, 0) = v.a;
    set_submatrix(out, 0, 1, v.B);
    set_submatrix(out, 1, 0, v.C);
    set_submatrix(out, 1, 1, v.D);
    return out;
}

Colligation from_matrix(const CMatrix& full, SpacePartition partition) {
    partition.validate();
    const std::size_t t = partition.total();
    if (full.rows() != 1 + t || full.cols() != 1 + t) {
        throw DimensionError("matrix side does not match 1 + total state dimension");
    }
    return Colligation{full(0, 0),
                       submatrix(full, 0, 1, 1, 1 + t),
                       submatrix(full, 1, 1 + t, 0, 1),
                       submatrix(full, 1, 1 + t, 1, 1 + t),
                       std::move(partition)};
}

CMatrix b_block(const Colligation& v, std::size_t i) {
    return b_range(v, i, i + 1);
}

CMatrix c_block(const Colligation& v, std::size_t i) {
    return c_range(v, i, i + 1);
}

CMatrix d_block(const Colligation& v, std::size_t i, std::size_t j) {
    return d_range(v, i, i + 1, j, j + 1);
}

CMatrix b_range(const Colligation& v, std::size_t lo, std::size_t hi) {
    return submatrix(v.B, 0, 1, v.partition.offset(lo), v.partition.offset(hi));
}

CMatrix c_range(const Colligation& v, std::size_t lo, std::size_t hi) {
    return submatrix(v.C, v.partition.offset(lo), v.partition.offset(hi), 0, 1);
}

CMatrix d_range(const Colligation& v, std::size_t rlo, std::size_t rhi, std::size_t clo, std::size_t chi) {
    return submatrix(v.D, v.partition.offset(rlo), v.partition.offset(rhi),
                     v.partition.offset(clo), v.partition.offset(chi));
}

IsometryReport is_isometry(const Colligation& v, double tol) {
    const CMatrix full = assemble(v);
    const double residual = frobenius_norm(adjoint(full) * full - CMatrix::identity(full.rows()));
    return {residual <= tol, residual};
}

const Colligation& validate_isometry(const Colligation& v, double tol) {
    const IsometryReport rep = is_isometry(v, tol);
    if (!rep.isometric) {
        throw NotIsometricError("colligation is not isometric at the requested tolerance", rep.residual);
    }
    return v;
}

namespace {

CMatrix coordinate_scaling(const SpacePartition& p, std::span<const Complex> z) {
    const std::size_t t = p.total();
    CMatrix e(t, t);
    std::size_t off = 0;
    for (std::size_t i = 0; i < p.count(); ++i) {
        for (std::size_t k = 0; k < p.dims[i]; ++k) {
            e(off + k, off + k) = z[i];
        }
        off += p.dims[i];
    }
    return e;
}

} // namespace

Complex transfer_eval(const Colligation& v, std::span<const Complex> z) {
    if (z.size() != v.partition.count()) {
        throw DimensionError("point arity does not match the variable count");
    }
    double max_mod = 0.0;
    for (const Complex& zi : z) {
        max_mod = std::max(max_mod, std::abs(zi));
    }
    if (max_mod >= 1.0) {
        throw DomainError("point is not strictly inside the polydisc");
    }
    const std::size_t t = v.partition.total();
    if (t == 0) {
        return v.a;
    }
    const CMatrix e = coordinate_scaling(v.partition, z);
    const CMatrix resolvent_rhs = solve(CMatrix::identity(t) - e * v.D, e * v.C);
    const Complex value = v.a + (v.B * resolvent_rhs)(0, 0);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw SingularMatrixError("transfer value is non-finite", 0.0);
    }
    return value;
}

Complex transfer_eval(const Colligation& v, const Point& z) {
    return transfer_eval(v, std::span<const Complex>(z));
}

std::vector<Complex> transfer_values(const Colligation& v, std::span<const Point> points, Policy policy) {
    return map_points(points, policy, [&](const Point& p) { return transfer_eval(v, p); });
}

GridReport transfer_eval_grid(const Colligation& v, std::span<const Point> points, Policy policy) {
    GridReport report;
    report.points.assign(points.begin(), points.end());
    report.values = transfer_values(v, points, policy);
    for (const Complex& value : report.values) {
        report.max_modulus = std::max(report.max_modulus, std::abs(value));
    }
    return report;
}

SchurBoundReport schur_bound_check(const Colligation& v, std::size_t num_points,
                                   std::uint64_t seed, double tol, Policy policy) {
    validate_isometry(v, tol);
    const std::vector<Point> points = sample_polydisc(v.partition.count(), num_points, seed);
    const GridReport report = transfer_eval_grid(v, points, policy);
    return {report.max_modulus <= 1.0 + tol, report.max_modulus};
}

} // namespace colliq
