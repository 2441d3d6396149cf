#pragma once

#include <optional>
#include <span>
#include <utility>

#include "colliq/colligation.hpp"
#include "colliq/structure.hpp"

namespace colliq {

/// Rectangular colligation C + H -> C + H^n for unit-ball multipliers: a is
/// 1x1, B is 1 x d, C stacks n blocks of d x 1 and D stacks n blocks of
/// d x d. An optional split d = d1 + d2 feeds the factorization check.
struct BallColligation {
    Complex a{};
    CMatrix B; // 1 x d
    CMatrix C; // (n*d) x 1
    CMatrix D; // (n*d) x d
    std::size_t vars = 0;
    std::size_t dim = 0;
    std::optional<std::pair<std::size_t, std::size_t>> split;
};

BallColligation make_ball_colligation(Complex a, CMatrix B, CMatrix C, CMatrix D,
                                      std::size_t vars, std::size_t dim,
                                      std::optional<std::pair<std::size_t, std::size_t>> split = {});

/// The assembled (1 + n*d) x (1 + d) matrix.
CMatrix assemble(const BallColligation& v);

/// Residual of V*V - I on the (1 + d)-dimensional domain side.
IsometryReport ball_is_isometry(const BallColligation& v, double tol = kDefaultTol);
const BallColligation& validate_ball_isometry(const BallColligation& v, double tol = kDefaultTol);

// Per-variable blocks of the stacked operators.
CMatrix ball_c_block(const BallColligation& v, std::size_t i);
CMatrix ball_d_block(const BallColligation& v, std::size_t i);

/// Transfer value a + B (I - E(z) D)^{-1} E(z) C at a point with
/// sum |z_i|^2 < 1, where E(z) is the row (z_1 I, ..., z_n I).
Complex ball_transfer_eval(const BallColligation& v, std::span<const Complex> z);
Complex ball_transfer_eval(const BallColligation& v, const Point& z);

GridReport ball_transfer_eval_grid(const BallColligation& v, std::span<const Point> points,
                                   Policy policy = kDefaultPolicy);

/// Separated-multiplier block pattern relative to the split d = d1 + d2:
/// the leading m variables act on the first component only, the rest on the
/// second, and a*D_i(2) = C_i(1)*B(2) couples them. m is 1-based with
/// 1 <= m < n.
StructureReport check_ball_factor_structure(const BallColligation& v, std::size_t m,
                                            double tol = kDefaultTol);

} // namespace colliq
