#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "colliq/grid.hpp"
#include "colliq/numerics.hpp"

namespace colliq {

/// Ordered block dimensions of a state space H = H_1 + ... + H_n, optionally
/// with a paired (m_i, n_i) split of each block. Zero-dimensional blocks are
/// allowed; they arise as degenerate factors and padded embeddings.
struct SpacePartition {
    std::vector<std::size_t> dims;
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> split;

    std::size_t count() const { return dims.size(); }
    std::size_t total() const;

    /// Offset of block i in the stacked state space; offset(count()) == total().
    std::size_t offset(std::size_t i) const;

    /// Totals of the first and second split components.
    std::size_t split_left_total() const;
    std::size_t split_right_total() const;

    void validate() const;
};

/// Square isometric colligation on C + H: the block operator
/// [[a, B], [C, D]] together with the partition of H.
struct Colligation {
    Complex a{};
    CMatrix B; // 1 x total
    CMatrix C; // total x 1
    CMatrix D; // total x total
    SpacePartition partition;
};

/// Validates block shapes against the partition and returns the colligation.
Colligation make_colligation(Complex a, CMatrix B, CMatrix C, CMatrix D, SpacePartition partition);

/// The assembled (1+total) square matrix [[a, B], [C, D]].
CMatrix assemble(const Colligation& v);

/// Splits a square matrix back into colligation blocks.
Colligation from_matrix(const CMatrix& full, SpacePartition partition);

// Block accessors (i, j are partition block indices).
CMatrix b_block(const Colligation& v, std::size_t i);
CMatrix c_block(const Colligation& v, std::size_t i);
CMatrix d_block(const Colligation& v, std::size_t i, std::size_t j);
// Aggregated over the block range [lo, hi).
CMatrix b_range(const Colligation& v, std::size_t lo, std::size_t hi);
CMatrix c_range(const Colligation& v, std::size_t lo, std::size_t hi);
CMatrix d_range(const Colligation& v, std::size_t rlo, std::size_t rhi, std::size_t clo, std::size_t chi);

struct IsometryReport {
    bool isometric = false;
    double residual = 0.0; // ||V*V - I||_F
};

IsometryReport is_isometry(const Colligation& v, double tol = kDefaultTol);

/// Returns v, throwing NotIsometricError when the residual exceeds tol.
const Colligation& validate_isometry(const Colligation& v, double tol = kDefaultTol);

/// Transfer function value a + B (I - E(z) D)^{-1} E(z) C at a point strictly
/// inside the polydisc, where E(z) scales block i by z_i.
Complex transfer_eval(const Colligation& v, std::span<const Complex> z);
Complex transfer_eval(const Colligation& v, const Point& z);

struct GridReport {
    std::vector<Point> points;
    std::vector<Complex> values;
    double max_modulus = 0.0;
    double max_residual = 0.0; // meaning depends on the verification performed
};

/// Evaluates the transfer function over a point set. Per-point failures
/// propagate annotated with the point index.
GridReport transfer_eval_grid(const Colligation& v, std::span<const Point> points,
                              Policy policy = kDefaultPolicy);

/// Per-point transfer values without the report wrapper.
std::vector<Complex> transfer_values(const Colligation& v, std::span<const Point> points,
                                     Policy policy = kDefaultPolicy);

struct SchurBoundReport {
    bool within_bound = false;
    double max_modulus = 0.0;
};

/// Spot-checks |tau| <= 1 + tol on a seeded interior sample. The input must
/// be isometric at tol.
SchurBoundReport schur_bound_check(const Colligation& v, std::size_t num_points,
                                   std::uint64_t seed, double tol = kDefaultTol,
                                   Policy policy = kDefaultPolicy);

} // namespace colliq
