#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colliq/colligation.hpp"

namespace colliq {

struct Violation {
    std::string constraint;
    std::size_t block_row = 0;
    std::size_t block_col = 0;
    double residual = 0.0;
};

struct StructureReport {
    bool satisfied = true;
    std::vector<Violation> violations;
    std::vector<std::string> notes;
};

std::string describe(const StructureReport& report);

/// Separated-variables pattern relative to the split H_1..H_m | H_{m+1}..H_n:
/// lower coupling blocks vanish and a*D(i,j) = C(i)*B(j) across the split.
/// m is 1-based and must satisfy 1 <= m < n. Requires v isometric at tol.
StructureReport check_fm(const Colligation& v, std::size_t m, double tol = kDefaultTol);

/// Same-variables pattern relative to the paired (M_i, N_i) splits:
/// D(i,j)[21] = 0 and a*D(i,j)[12] = C(i)[1]*B(j)[2] for all i, j.
StructureReport check_fn(const Colligation& v, double tol = kDefaultTol);

/// Two-block pattern of composites vanishing at the origin whose second
/// factor does not: a = 0, B(2) = 0, D(2,1) = 0, the coupling block D(1,2)
/// commutes with C(1)C(1)^*, and C(1)^*C(1) > 0.
StructureReport check_zero_origin_case1(const Colligation& v, double tol = kDefaultTol);

/// Two-block pattern of composites whose factors both vanish at the origin,
/// certified by a witness pair: a = 0, C(1) = 0, B(2) = 0, D(2,1) = 0,
/// x*x = 1, x*D(1,1) = 0 and D(1,2) = x*y. x is dim(H_1) x 1, y is
/// 1 x dim(H_2).
StructureReport check_zero_origin_case2(const Colligation& v, const CMatrix& x, const CMatrix& y,
                                        double tol = kDefaultTol);

/// Attempts to recover the case-2 witness pair from a rank-one coupling
/// block: x is the normalized dominant column direction and y = x^* D(1,2).
/// Empty when the coupling block vanishes or has rank above one at tol.
std::optional<std::pair<CMatrix, CMatrix>> recover_case2_witness(const Colligation& v,
                                                                 double tol = kDefaultTol);

/// n-variable zero-origin check: reorders the paired splits into the
/// (M_1..M_n | N_1..N_n) two-block form and applies the matching two-block
/// check there. case_id is 1 or 2; case 2 recovers a witness when none is
/// supplied.
StructureReport check_zero_origin_nvar(const Colligation& v, int case_id,
                                       const std::optional<std::pair<CMatrix, CMatrix>>& witnesses = {},
                                       double tol = kDefaultTol);

/// One-variable-factors chain pattern: D(i,j) = 0 below the diagonal and
/// a*D(i,j) = C(i)*B(j) above it. Requires |a| > tol.
StructureReport check_chain(const Colligation& v, double tol = kDefaultTol);

/// Conjugates the state space by the split-reordering permutation, returning
/// an equivalent colligation on the two aggregated blocks (sum M_i, sum N_i).
Colligation conjugate_by_flip(const Colligation& v);

} // namespace colliq
