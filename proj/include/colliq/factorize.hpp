#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "colliq/colligation.hpp"

namespace colliq {

/// Knobs for the optional grid verification attached to products and factor
/// extractions.
struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    std::size_t points = kDefaultGridPoints;
    double tol = kDefaultTol;
    Policy policy = kDefaultPolicy;
};

struct FactorizationResult {
    Colligation left;
    Colligation right;
    Complex alpha{};
    Complex beta{};
    double residual = 0.0; // max transfer-identity residual, set when verified
};

/// Separated-variables product: combines factors on C+H_1..H_m and
/// C+H_{m+1}..H_n into one colligation on the concatenated partition whose
/// transfer function is tau_1(z_1..z_m) * tau_2(z_{m+1}..z_n). The output
/// satisfies the separated pattern checked by check_fm.
Colligation product_fm(const Colligation& v1, const Colligation& v2, bool verify = false,
                       const VerifyOptions& options = {});

/// Extraction inverse to product_fm, defined when the separated pattern
/// holds and the constant term is nonzero. beta is chosen positive real.
FactorizationResult factor_fm(const Colligation& v, std::size_t m, bool verify = false,
                              double tol = kDefaultTol, const VerifyOptions& options = {});

/// Permutation reordering the interleaved split M_1, N_1, ..., M_n, N_n into
/// M_1..M_n, N_1..N_n. Unitary with 0/1 entries.
CMatrix flip_permutation(const SpacePartition& partition);

/// Same-variables product: factors on C+(sum M_i) and C+(sum N_i) with equal
/// variable counts combine into a colligation on the paired partition whose
/// transfer function is the pointwise product. Satisfies check_fn.
Colligation product_fn(const Colligation& v1, const Colligation& v2, bool verify = false,
                       const VerifyOptions& options = {});

/// Extraction inverse to product_fn for a nonzero constant term.
FactorizationResult factor_fn(const Colligation& v, bool verify = false, double tol = kDefaultTol,
                              const VerifyOptions& options = {});

/// Cascade of single-variable factors: tau(z) = prod_i tau_i(z_i). Factors
/// with vanishing constants are accepted only with verification disabled,
/// since the chain pattern needs a nonzero constant.
Colligation product_chain(std::span<const Colligation> factors, bool verify = false,
                          const VerifyOptions& options = {});

/// Peels single-variable factors off a chain-patterned colligation by
/// repeated two-group extraction, left to right.
std::vector<Colligation> factor_chain(const Colligation& v, bool verify = false,
                                      double tol = kDefaultTol, const VerifyOptions& options = {});

/// Zero-origin extraction, first kind: left factor vanishes at the origin,
/// right factor does not. The scalar x is chosen positive real.
FactorizationResult factor_zero_origin_case1(const Colligation& v, bool verify = false,
                                             double tol = kDefaultTol,
                                             const VerifyOptions& options = {});

/// Zero-origin extraction, second kind: both factors vanish at the origin;
/// certified by the witness pair (x, y).
FactorizationResult factor_zero_origin_case2(const Colligation& v, const CMatrix& x,
                                             const CMatrix& y, bool verify = false,
                                             double tol = kDefaultTol,
                                             const VerifyOptions& options = {});

/// n-variable zero-origin check-and-factor: reorders the paired splits into
/// the aggregated two-block form, applies the matching two-block extraction
/// there, and returns factors on the M- and N-partitions. Case 2 recovers a
/// witness when none is supplied.
FactorizationResult factor_zero_origin_nvar(const Colligation& v, int case_id,
                                            const std::optional<std::pair<CMatrix, CMatrix>>& witnesses = {},
                                            bool verify = false, double tol = kDefaultTol,
                                            const VerifyOptions& options = {});

/// Widens a separated-pattern colligation into a same-variables one on
/// padded blocks (pad_dim extra dimensions per block) with identical
/// transfer function; the output satisfies check_fn.
Colligation embed_fm_into_fn(const Colligation& v, std::size_t m, std::size_t pad_dim,
                             double tol = kDefaultTol);

struct RoundtripReport {
    Complex epsilon{};          // unimodular gauge between input and recovered factors
    double max_deviation = 0.0; // entrywise, after removing the gauge
};

/// Builds the same-variables product of the pair, extracts it back, and
/// measures how far the recovered factors are from the inputs once the
/// unimodular gauge epsilon is divided out.
RoundtripReport product_factor_roundtrip(const Colligation& v1, const Colligation& v2,
                                         double tol = kDefaultTol);

/// Debugging embeddings of the two factors into the joint space; their
/// product equals the corresponding product_* output entrywise.
std::pair<Colligation, Colligation> fm_embeddings(const Colligation& v1, const Colligation& v2);
std::pair<Colligation, Colligation> fn_embeddings(const Colligation& v1, const Colligation& v2);

// Grid residuals of the transfer-product identities; also used by the CLI.
double separated_grid_residual(const Colligation& v, const Colligation& left,
                               const Colligation& right, std::size_t m,
                               const VerifyOptions& options = {});
double pointwise_grid_residual(const Colligation& v, const Colligation& left,
                               const Colligation& right, const VerifyOptions& options = {});
double chain_grid_residual(const Colligation& v, std::span<const Colligation> factors,
                           const VerifyOptions& options = {});
double embedding_grid_residual(const Colligation& v, const Colligation& widened,
                               const VerifyOptions& options = {});

} // namespace colliq
