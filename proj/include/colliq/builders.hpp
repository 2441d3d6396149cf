#pragma once

#include "colliq/ball.hpp"
#include "colliq/colligation.hpp"

namespace colliq {

/// 2x2 unitary colligation of the disc automorphism (z - lambda)/(1 - conj(lambda) z).
Colligation blaschke_colligation(Complex lambda);

/// Cyclic-shift colligation of z^m on C + C^m, m >= 1.
Colligation monomial_colligation(std::size_t m);

/// The explicit 3x3 colligation of b_alpha(z1) * b_beta(z2); equals
/// product_fm of the two Blaschke colligations entrywise.
Colligation shifted_blaschke_product_colligation(Complex alpha, Complex beta);

/// Haar-random unitary split into colligation blocks; isometric by construction.
Colligation random_isometric_colligation(const SpacePartition& partition, std::uint64_t seed);

/// Variant with the constant term forced to zero by a two-row unitary
/// rotation mixing the scalar row into the state; still isometric.
Colligation random_zero_constant_colligation(const SpacePartition& partition, std::uint64_t seed);

enum class StructuredKind { fm, fn, chain, zero_origin_1, zero_origin_2 };

/// A colligation guaranteed to satisfy the named structure check, built by
/// applying the matching product construction to random isometric factors.
/// m names the leading group size for the fm kind; fn needs the partition's
/// paired split; the zero-origin kinds need a two-block partition.
Colligation random_structured_colligation(StructuredKind kind, const SpacePartition& partition,
                                          std::size_t m, std::uint64_t seed);

/// Leading 1 + dim columns of a Haar unitary of side 1 + vars*dim.
BallColligation random_isometric_ball_colligation(std::size_t vars, std::size_t dim,
                                                  std::uint64_t seed,
                                                  std::optional<std::pair<std::size_t, std::size_t>> split = {});

/// Separated-multiplier composite on the joint component space: the leading
/// factor acts in the first phi.vars variables, the trailing one in the
/// rest, and the result's transfer function is their separated product.
/// Satisfies check_ball_factor_structure at m = phi.vars.
BallColligation separated_ball_product(const BallColligation& phi, const BallColligation& psi);

} // namespace colliq
