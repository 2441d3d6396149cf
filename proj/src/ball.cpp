#include "colliq/ball.hpp"

#include <algorithm>
#include <cmath>

namespace colliq {

BallColligation make_ball_colligation(Complex a, CMatrix B, CMatrix C, CMatrix D,
                                      std::size_t vars, std::size_t dim,
                                      std::optional<std::pair<std::size_t, std::size_t>> split) {
    if (vars < 1) {
        throw ArgumentError("at least one variable is required");
    }
    if (B.rows() != 1 || B.cols() != dim) {
        throw DimensionError("B must be 1 x dim");
    }
    if (C.rows() != vars * dim || C.cols() != 1) {
        throw DimensionError("C must be (vars*dim) x 1");
    }
    if (D.rows() != vars * dim || D.cols() != dim) {
        throw DimensionError("D must be (vars*dim) x dim");
    }
    if (split && split->first + split->second != dim) {
        throw ArgumentError("split must sum to dim");
    }
    return BallColligation{a, std::move(B), std::move(C), std::move(D), vars, dim, split};
}

CMatrix assemble(const BallColligation& v) {
    CMatrix out(1 + v.vars * v.dim, 1 + v.dim);
    out(0, 0) = v.a;
    set_submatrix(out, 0, 1, v.B);
    set_submatrix(out, 1, 0, v.C);
    set_submatrix(out, 1, 1, v.D);
    return out;
}

IsometryReport ball_is_isometry(const BallColligation& v, double tol) {
    const CMatrix full = assemble(v);
    const double residual = frobenius_norm(adjoint(full) * full - CMatrix::identity(1 + v.dim));
    return {residual <= tol, residual};
}

const BallColligation& validate_ball_isometry(const BallColligation& v, double tol) {
    const IsometryReport rep = ball_is_isometry(v, tol);
    if (!rep.isometric) {
        throw NotIsometricError("ball colligation is not isometric at the requested tolerance",
                                rep.residual);
    }
    return v;
}

CMatrix ball_c_block(const BallColligation& v, std::size_t i) {
    return submatrix(v.C, i * v.dim, (i + 1) * v.dim, 0, 1);
}

CMatrix ball_d_block(const BallColligation& v, std::size_t i) {
    return submatrix(v.D, i * v.dim, (i + 1) * v.dim, 0, v.dim);
}

Complex ball_transfer_eval(const BallColligation& v, std::span<const Complex> z) {
    if (z.size() != v.vars) {
        throw DimensionError("point arity does not match the variable count");
    }
    double norm_sq = 0.0;
    for (const Complex& zi : z) {
        norm_sq += std::norm(zi);
    }
    if (norm_sq >= 1.0) {
        throw DomainError("point is not strictly inside the unit ball");
    }
    if (v.dim == 0) {
        return v.a;
    }
    // E(z) D = sum_i z_i D_i and E(z) C = sum_i z_i C_i.
    CMatrix ed(v.dim, v.dim);
    CMatrix ec(v.dim, 1);
    for (std::size_t i = 0; i < v.vars; ++i) {
        ed = ed + z[i] * ball_d_block(v, i);
        ec = ec + z[i] * ball_c_block(v, i);
    }
    const CMatrix x = solve(CMatrix::identity(v.dim) - ed, ec);
    const Complex value = v.a + (v.B * x)(0, 0);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw SingularMatrixError("transfer value is non-finite", 0.0);
    }
    return value;
}

Complex ball_transfer_eval(const BallColligation& v, const Point& z) {
    return ball_transfer_eval(v, std::span<const Complex>(z));
}

GridReport ball_transfer_eval_grid(const BallColligation& v, std::span<const Point> points,
                                   Policy policy) {
    GridReport report;
    report.points.assign(points.begin(), points.end());
    report.values = map_points(points, policy, [&](const Point& p) { return ball_transfer_eval(v, p); });
    for (const Complex& value : report.values) {
        report.max_modulus = std::max(report.max_modulus, std::abs(value));
    }
    return report;
}

StructureReport check_ball_factor_structure(const BallColligation& v, std::size_t m, double tol) {
    if (!v.split) {
        throw ArgumentError("component split required");
    }
    if (m < 1 || m >= v.vars) {
        throw ArgumentError("split index must satisfy 1 <= m < n");
    }
    validate_ball_isometry(v, tol);
    const std::size_t d1 = v.split->first;
    const std::size_t d = v.dim;
    const CMatrix b2 = submatrix(v.B, 0, 1, d1, d);
    StructureReport report;
    const auto record = [&](std::string constraint, std::size_t i, double residual) {
        if (residual > tol) {
            report.satisfied = false;
            report.violations.push_back({std::move(constraint), i, 0, residual});
        }
    };
    for (std::size_t i = 0; i < v.vars; ++i) {
        const CMatrix ci = ball_c_block(v, i);
        const CMatrix di = ball_d_block(v, i);
        if (i < m) {
            record("C(i)[2] = 0", i, frobenius_norm(submatrix(ci, d1, d, 0, 1)));
            record("D(i) bottom rows = 0", i, frobenius_norm(submatrix(di, d1, d, 0, d)));
            const CMatrix di2 = submatrix(di, 0, d1, d1, d);
            const CMatrix ci1 = submatrix(ci, 0, d1, 0, 1);
            record("a*D(i)[2] = C(i)[1]*B(2)", i, frobenius_norm(v.a * di2 - ci1 * b2));
        } else {
            record("C(i)[1] = 0", i, frobenius_norm(submatrix(ci, 0, d1, 0, 1)));
            record("D(i) outside bottom-right = 0", i,
                   std::max({frobenius_norm(submatrix(di, 0, d1, 0, d)),
                             frobenius_norm(submatrix(di, d1, d, 0, d1))}));
        }
    }
    return report;
}

} // namespace colliq
