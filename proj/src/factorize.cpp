#include "colliq/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "colliq/structure.hpp"

namespace colliq {

namespace {

constexpr double kAssemblyTol = 1e-14;      // direct blocks vs embedded product
constexpr double kChainAssemblyTol = 1e-13; // looser: k-fold products accumulate rounding
constexpr double kChainVerifyTol = 1e-9;    // accumulated over repeated extraction

SpacePartition concat(const SpacePartition& p1, const SpacePartition& p2) {
    SpacePartition out;
    out.dims = p1.dims;
    out.dims.insert(out.dims.end(), p2.dims.begin(), p2.dims.end());
    return out;
}

SpacePartition head(const SpacePartition& p, std::size_t m) {
    return {{p.dims.begin(), p.dims.begin() + static_cast<std::ptrdiff_t>(m)}, std::nullopt};
}

SpacePartition tail(const SpacePartition& p, std::size_t m) {
    return {{p.dims.begin() + static_cast<std::ptrdiff_t>(m), p.dims.end()}, std::nullopt};
}

void require_assembly_match(const Colligation& direct, const CMatrix& embedded_product,
                            double tol = kAssemblyTol) {
    if (max_abs_diff(assemble(direct), embedded_product) > tol) {
        throw VerificationError("direct block formula disagrees with the embedded product");
    }
}

Point head_coords(const Point& z, std::size_t m) {
    return {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(m)};
}

Point tail_coords(const Point& z, std::size_t m) {
    return {z.begin() + static_cast<std::ptrdiff_t>(m), z.end()};
}

} // namespace

double separated_grid_residual(const Colligation& v, const Colligation& left,
                               const Colligation& right, std::size_t m,
                               const VerifyOptions& options) {
    const std::vector<Point> points =
        sample_polydisc(v.partition.count(), options.points, options.seed);
    std::vector<Point> left_points;
    std::vector<Point> right_points;
    left_points.reserve(points.size());
    right_points.reserve(points.size());
    for (const Point& z : points) {
        left_points.push_back(head_coords(z, m));
        right_points.push_back(tail_coords(z, m));
    }
    const std::vector<Complex> whole = transfer_values(v, points, options.policy);
    const std::vector<Complex> lv = transfer_values(left, left_points, options.policy);
    const std::vector<Complex> rv = transfer_values(right, right_points, options.policy);
    double residual = 0.0;
    for (std::size_t i = 0; i < whole.size(); ++i) {
        residual = std::max(residual, std::abs(whole[i] - lv[i] * rv[i]));
    }
    return residual;
}

double pointwise_grid_residual(const Colligation& v, const Colligation& left,
                               const Colligation& right, const VerifyOptions& options) {
    const std::vector<Point> points =
        sample_polydisc(v.partition.count(), options.points, options.seed);
    const std::vector<Complex> whole = transfer_values(v, points, options.policy);
    const std::vector<Complex> lv = transfer_values(left, points, options.policy);
    const std::vector<Complex> rv = transfer_values(right, points, options.policy);
    double residual = 0.0;
    for (std::size_t i = 0; i < whole.size(); ++i) {
        residual = std::max(residual, std::abs(whole[i] - lv[i] * rv[i]));
    }
    return residual;
}

double chain_grid_residual(const Colligation& v, std::span<const Colligation> factors,
                           const VerifyOptions& options) {
    const std::size_t n = v.partition.count();
    const std::vector<Point> points = sample_polydisc(n, options.points, options.seed);
    const std::vector<Complex> whole = transfer_values(v, points, options.policy);
    std::vector<Complex> product(points.size(), Complex{1.0});
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::vector<Point> coord(points.size());
        for (std::size_t k = 0; k < points.size(); ++k) {
            coord[k] = {points[k][i]};
        }
        const std::vector<Complex> vals = transfer_values(factors[i], coord, options.policy);
        for (std::size_t k = 0; k < points.size(); ++k) {
            product[k] *= vals[k];
        }
    }
    double residual = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        residual = std::max(residual, std::abs(whole[k] - product[k]));
    }
    return residual;
}

double embedding_grid_residual(const Colligation& v, const Colligation& widened,
                               const VerifyOptions& options) {
    const std::vector<Point> points =
        sample_polydisc(v.partition.count(), options.points, options.seed);
    const std::vector<Complex> base = transfer_values(v, points, options.policy);
    const std::vector<Complex> wide = transfer_values(widened, points, options.policy);
    double residual = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        residual = std::max(residual, std::abs(base[i] - wide[i]));
    }
    return residual;
}

std::pair<Colligation, Colligation> fm_embeddings(const Colligation& v1, const Colligation& v2) {
    const std::size_t t1 = v1.partition.total();
    const std::size_t t2 = v2.partition.total();
    const SpacePartition joint = concat(v1.partition, v2.partition);

    CMatrix w1 = CMatrix::identity(1 + t1 + t2);
    w1(0, 0) = v1.a;
    set_submatrix(w1, 0, 1, v1.B);
    set_submatrix(w1, 1, 0, v1.C);
    set_submatrix(w1, 1, 1, v1.D);

    CMatrix w2 = CMatrix::identity(1 + t1 + t2);
    w2(0, 0) = v2.a;
    set_submatrix(w2, 0, 1 + t1, v2.B);
    set_submatrix(w2, 1 + t1, 0, v2.C);
    set_submatrix(w2, 1 + t1, 1 + t1, v2.D);

    return {from_matrix(w1, joint), from_matrix(w2, joint)};
}

Colligation product_fm(const Colligation& v1, const Colligation& v2, bool verify,
                       const VerifyOptions& options) {
    validate_isometry(v1, options.tol);
    validate_isometry(v2, options.tol);
    const std::size_t m = v1.partition.count();
    const std::size_t t1 = v1.partition.total();
    const std::size_t t2 = v2.partition.total();
    const SpacePartition joint = concat(v1.partition, v2.partition);

    CMatrix b(1, t1 + t2);
    set_submatrix(b, 0, 0, v1.B);
    set_submatrix(b, 0, t1, v1.a * v2.B);
    CMatrix c(t1 + t2, 1);
    set_submatrix(c, 0, 0, v2.a * v1.C);
    set_submatrix(c, t1, 0, v2.C);
    CMatrix d(t1 + t2, t1 + t2);
    set_submatrix(d, 0, 0, v1.D);
    set_submatrix(d, 0, t1, v1.C * v2.B);
    set_submatrix(d, t1, t1, v2.D);

    Colligation out = make_colligation(v1.a * v2.a, std::move(b), std::move(c), std::move(d), joint);
    const auto [w1, w2] = fm_embeddings(v1, v2);
    require_assembly_match(out, assemble(w1) * assemble(w2));
    if (verify) {
        const double residual = separated_grid_residual(out, v1, v2, m, options);
        if (residual > options.tol) {
            throw VerificationError("separated transfer product residual " +
                                    std::to_string(residual) + " exceeds tolerance");
        }
    }
    return out;
}

namespace {

// Shared by the separated and same-variables extractions: the scalar pair
// with beta positive real, cross-checked against both normalizations.
std::pair<Complex, double> extraction_scalars(Complex a, const CMatrix& c_left,
                                              const CMatrix& c_right) {
    const double from_left = std::norm(a) + real_gram(adjoint(c_left) * c_left);
    const double from_right = 1.0 - real_gram(adjoint(c_right) * c_right);
    if (std::abs(from_left - from_right) > 1e-10) {
        throw NotIsometricError("scalar normalizations disagree; the input drifts from isometry",
                                std::abs(from_left - from_right));
    }
    const double beta = std::sqrt(from_left);
    return {a / beta, beta};
}

} // namespace

FactorizationResult factor_fm(const Colligation& v, std::size_t m, bool verify, double tol,
                              const VerifyOptions& options) {
    const StructureReport pattern = check_fm(v, m, tol);
    if (!pattern.satisfied) {
        throw StructureError("separated pattern does not hold: " + describe(pattern));
    }
    if (std::abs(v.a) <= tol) {
        throw ZeroConstantError("constant term vanishes; use a zero-origin extraction");
    }
    const std::size_t n = v.partition.count();
    const CMatrix c1 = c_range(v, 0, m);
    const CMatrix c2 = c_range(v, m, n);
    const auto [alpha, beta] = extraction_scalars(v.a, c1, c2);

    Colligation left = make_colligation(alpha, b_range(v, 0, m), (1.0 / beta) * c1,
                                        d_range(v, 0, m, 0, m), head(v.partition, m));
    Colligation right = make_colligation(beta, (1.0 / alpha) * b_range(v, m, n), c2,
                                         d_range(v, m, n, m, n), tail(v.partition, m));
    validate_isometry(left, tol);
    validate_isometry(right, tol);

    FactorizationResult result{std::move(left), std::move(right), alpha, beta, 0.0};
    if (verify) {
        result.residual = separated_grid_residual(v, result.left, result.right, m, options);
    }
    return result;
}

CMatrix flip_permutation(const SpacePartition& partition) {
    partition.validate();
    if (!partition.split) {
        throw ArgumentError("paired split required");
    }
    const std::size_t total = partition.total();
    const std::size_t left_total = partition.split_left_total();
    CMatrix eta(total, total);
    std::size_t src = 0;
    std::size_t left_off = 0;
    std::size_t right_off = 0;
    for (const auto& [mi, ni] : *partition.split) {
        for (std::size_t k = 0; k < mi; ++k) {
            eta(left_off + k, src + k) = 1.0;
        }
        for (std::size_t k = 0; k < ni; ++k) {
            eta(left_total + right_off + k, src + mi + k) = 1.0;
        }
        src += mi + ni;
        left_off += mi;
        right_off += ni;
    }
    return eta;
}

std::pair<Colligation, Colligation> fn_embeddings(const Colligation& v1, const Colligation& v2) {
    const std::size_t n = v1.partition.count();
    SpacePartition joint;
    std::vector<std::pair<std::size_t, std::size_t>> split(n);
    joint.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        split[i] = {v1.partition.dims[i], v2.partition.dims[i]};
        joint.dims[i] = split[i].first + split[i].second;
    }
    joint.split = std::move(split);
    const std::size_t total = joint.total();

    CMatrix w1(1 + total, 1 + total);
    CMatrix w2(1 + total, 1 + total);
    w1(0, 0) = v1.a;
    w2(0, 0) = v2.a;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = 1 + joint.offset(i);
        const std::size_t mi = v1.partition.dims[i];
        const std::size_t ni = v2.partition.dims[i];
        set_submatrix(w1, 0, off, b_block(v1, i));
        set_submatrix(w1, off, 0, c_block(v1, i));
        set_submatrix(w2, 0, off + mi, b_block(v2, i));
        set_submatrix(w2, off + mi, 0, c_block(v2, i));
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t coff = 1 + joint.offset(j);
            const std::size_t mj = v1.partition.dims[j];
            set_submatrix(w1, off, coff, d_block(v1, i, j));
            set_submatrix(w2, off + mi, coff + mj, d_block(v2, i, j));
            if (i == j) {
                for (std::size_t k = 0; k < ni; ++k) {
                    w1(off + mi + k, coff + mj + k) = 1.0;
                }
                for (std::size_t k = 0; k < mi; ++k) {
                    w2(off + k, coff + k) = 1.0;
                }
            }
        }
    }
    return {from_matrix(w1, joint), from_matrix(w2, joint)};
}

Colligation product_fn(const Colligation& v1, const Colligation& v2, bool verify,
                       const VerifyOptions& options) {
    if (v1.partition.count() != v2.partition.count()) {
        throw ArgumentError("factors must have the same variable count");
    }
    validate_isometry(v1, options.tol);
    validate_isometry(v2, options.tol);
    const std::size_t n = v1.partition.count();
    const Complex alpha = v1.a;
    const Complex beta = v2.a;

    SpacePartition joint;
    std::vector<std::pair<std::size_t, std::size_t>> split(n);
    joint.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        split[i] = {v1.partition.dims[i], v2.partition.dims[i]};
        joint.dims[i] = split[i].first + split[i].second;
    }
    joint.split = std::move(split);
    const std::size_t total = joint.total();

    CMatrix b(1, total);
    CMatrix c(total, 1);
    CMatrix d(total, total);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = joint.offset(i);
        const std::size_t mi = v1.partition.dims[i];
        set_submatrix(b, 0, off, b_block(v1, i));
        set_submatrix(b, 0, off + mi, alpha * b_block(v2, i));
        set_submatrix(c, off, 0, beta * c_block(v1, i));
        set_submatrix(c, off + mi, 0, c_block(v2, i));
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t coff = joint.offset(j);
            const std::size_t mj = v1.partition.dims[j];
            set_submatrix(d, off, coff, d_block(v1, i, j));
            set_submatrix(d, off, coff + mj, c_block(v1, i) * b_block(v2, j));
            set_submatrix(d, off + mi, coff + mj, d_block(v2, i, j));
        }
    }

    Colligation out =
        make_colligation(alpha * beta, std::move(b), std::move(c), std::move(d), joint);
    const auto [w1, w2] = fn_embeddings(v1, v2);
    require_assembly_match(out, assemble(w1) * assemble(w2));
    if (verify) {
        const double residual = pointwise_grid_residual(out, v1, v2, options);
        if (residual > options.tol) {
            throw VerificationError("pointwise transfer product residual " +
                                    std::to_string(residual) + " exceeds tolerance");
        }
    }
    return out;
}

FactorizationResult factor_fn(const Colligation& v, bool verify, double tol,
                              const VerifyOptions& options) {
    const StructureReport pattern = check_fn(v, tol);
    if (!pattern.satisfied) {
        throw StructureError("same-variables pattern does not hold: " + describe(pattern));
    }
    if (std::abs(v.a) <= tol) {
        throw ZeroConstantError("constant term vanishes; use a zero-origin extraction");
    }
    const Colligation two = conjugate_by_flip(v);
    const CMatrix c1 = c_block(two, 0);
    const CMatrix c2 = c_block(two, 1);
    const auto [alpha, beta] = extraction_scalars(two.a, c1, c2);

    SpacePartition left_p;
    SpacePartition right_p;
    for (const auto& [mi, ni] : *v.partition.split) {
        left_p.dims.push_back(mi);
        right_p.dims.push_back(ni);
    }
    Colligation left = make_colligation(alpha, b_block(two, 0), (1.0 / beta) * c1,
                                        d_block(two, 0, 0), std::move(left_p));
    Colligation right = make_colligation(beta, (1.0 / alpha) * b_block(two, 1), c2,
                                         d_block(two, 1, 1), std::move(right_p));
    validate_isometry(left, tol);
    validate_isometry(right, tol);

    FactorizationResult result{std::move(left), std::move(right), alpha, beta, 0.0};
    if (verify) {
        result.residual = pointwise_grid_residual(v, result.left, result.right, options);
    }
    return result;
}

namespace {

// The single-variable factor i as an operator on the whole chain space:
// identity off its own block.
CMatrix chain_embedding(const Colligation& factor, const SpacePartition& joint, std::size_t i) {
    CMatrix w = CMatrix::identity(1 + joint.total());
    const std::size_t off = 1 + joint.offset(i);
    w(0, 0) = factor.a;
    set_submatrix(w, 0, off, factor.B);
    set_submatrix(w, off, 0, factor.C);
    set_submatrix(w, off, off, factor.D);
    return w;
}

} // namespace

Colligation product_chain(std::span<const Colligation> factors, bool verify,
                          const VerifyOptions& options) {
    if (factors.empty()) {
        throw ArgumentError("at least one factor is required");
    }
    SpacePartition joint;
    for (const Colligation& f : factors) {
        if (f.partition.count() != 1) {
            throw ArgumentError("chain factors must be single-variable");
        }
        validate_isometry(f, options.tol);
        joint.dims.push_back(f.partition.dims[0]);
    }
    if (verify) {
        for (const Colligation& f : factors) {
            if (std::abs(f.a) <= options.tol) {
                throw ZeroConstantError(
                    "verification needs nonzero factor constants; build with verify disabled");
            }
        }
    }
    const std::size_t n = factors.size();
    const std::size_t total = joint.total();

    Complex a{1.0};
    for (const Colligation& f : factors) {
        a *= f.a;
    }
    CMatrix b(1, total);
    CMatrix c(total, 1);
    CMatrix d(total, total);
    for (std::size_t i = 0; i < n; ++i) {
        Complex prefix{1.0};
        for (std::size_t k = 0; k < i; ++k) {
            prefix *= factors[k].a;
        }
        Complex suffix{1.0};
        for (std::size_t k = i + 1; k < n; ++k) {
            suffix *= factors[k].a;
        }
        const std::size_t off = joint.offset(i);
        set_submatrix(b, 0, off, prefix * factors[i].B);
        set_submatrix(c, off, 0, suffix * factors[i].C);
        set_submatrix(d, off, off, factors[i].D);
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex mid{1.0};
            for (std::size_t k = i + 1; k < j; ++k) {
                mid *= factors[k].a;
            }
            set_submatrix(d, off, joint.offset(j), mid * (factors[i].C * factors[j].B));
        }
    }

    Colligation out = make_colligation(a, std::move(b), std::move(c), std::move(d), joint);
    CMatrix embedded = CMatrix::identity(1 + total);
    for (std::size_t i = 0; i < n; ++i) {
        embedded = embedded * chain_embedding(factors[i], joint, i);
    }
    require_assembly_match(out, embedded, kChainAssemblyTol);
    if (verify) {
        const double residual = chain_grid_residual(out, factors, options);
        if (residual > options.tol) {
            throw VerificationError("coordinate-wise transfer product residual " +
                                    std::to_string(residual) + " exceeds tolerance");
        }
    }
    return out;
}

std::vector<Colligation> factor_chain(const Colligation& v, bool verify, double tol,
                                      const VerifyOptions& options) {
    const StructureReport pattern = check_chain(v, tol);
    if (!pattern.satisfied) {
        throw StructureError("chain pattern does not hold: " + describe(pattern));
    }
    std::vector<Colligation> factors;
    Colligation rest = v;
    while (rest.partition.count() > 1) {
        FactorizationResult step = factor_fm(rest, 1, false, tol, options);
        factors.push_back(std::move(step.left));
        rest = std::move(step.right);
    }
    factors.push_back(std::move(rest));
    if (verify) {
        const double residual = chain_grid_residual(v, factors, options);
        if (residual > kChainVerifyTol) {
            throw VerificationError("chain extraction residual " + std::to_string(residual) +
                                    " exceeds tolerance");
        }
    }
    return factors;
}

FactorizationResult factor_zero_origin_case1(const Colligation& v, bool verify, double tol,
                                             const VerifyOptions& options) {
    const StructureReport pattern = check_zero_origin_case1(v, tol);
    if (!pattern.satisfied) {
        throw StructureError("zero-origin first-kind pattern does not hold: " + describe(pattern));
    }
    const CMatrix c1 = c_block(v, 0);
    const double x = std::sqrt(real_gram(adjoint(c1) * c1));

    Colligation left = make_colligation(Complex{0.0}, b_block(v, 0), (1.0 / x) * c1,
                                        d_block(v, 0, 0), head(v.partition, 1));
    Colligation right = make_colligation(Complex{x}, (1.0 / x) * (adjoint(c1) * d_block(v, 0, 1)),
                                         c_block(v, 1), d_block(v, 1, 1), tail(v.partition, 1));
    validate_isometry(left, tol);
    validate_isometry(right, tol);

    FactorizationResult result{std::move(left), std::move(right), Complex{0.0}, Complex{x}, 0.0};
    if (verify) {
        result.residual = separated_grid_residual(v, result.left, result.right, 1, options);
    }
    return result;
}

FactorizationResult factor_zero_origin_case2(const Colligation& v, const CMatrix& x,
                                             const CMatrix& y, bool verify, double tol,
                                             const VerifyOptions& options) {
    const StructureReport pattern = check_zero_origin_case2(v, x, y, tol);
    if (!pattern.satisfied) {
        throw StructureError("zero-origin second-kind pattern does not hold: " + describe(pattern));
    }
    Colligation left = make_colligation(Complex{0.0}, b_block(v, 0), x, d_block(v, 0, 0),
                                        head(v.partition, 1));
    Colligation right = make_colligation(Complex{0.0}, y, c_block(v, 1), d_block(v, 1, 1),
                                         tail(v.partition, 1));
    validate_isometry(left, tol);
    validate_isometry(right, tol);

    FactorizationResult result{std::move(left), std::move(right), Complex{0.0}, Complex{0.0}, 0.0};
    if (verify) {
        result.residual = separated_grid_residual(v, result.left, result.right, 1, options);
    }
    return result;
}

FactorizationResult factor_zero_origin_nvar(const Colligation& v, int case_id,
                                            const std::optional<std::pair<CMatrix, CMatrix>>& witnesses,
                                            bool verify, double tol, const VerifyOptions& options) {
    if (!v.partition.split) {
        throw ArgumentError("paired split required");
    }
    validate_isometry(v, tol);
    if (std::abs(v.a) > tol) {
        throw StructureError("constant term must vanish for a zero-origin extraction");
    }
    const StructureReport pattern = check_zero_origin_nvar(v, case_id, witnesses, tol);
    if (!pattern.satisfied) {
        throw StructureError("zero-origin pattern does not hold: " + describe(pattern));
    }
    const Colligation two = conjugate_by_flip(v);
    FactorizationResult result =
        case_id == 1 ? factor_zero_origin_case1(two, false, tol, options)
                     : [&] {
                           auto pair = witnesses ? witnesses : recover_case2_witness(two, tol);
                           return factor_zero_origin_case2(two, pair->first, pair->second, false,
                                                           tol, options);
                       }();
    // The factors live on the aggregated M- and N-spaces; restore the
    // per-variable block structure.
    SpacePartition left_p;
    SpacePartition right_p;
    for (const auto& [mi, ni] : *v.partition.split) {
        left_p.dims.push_back(mi);
        right_p.dims.push_back(ni);
    }
    result.left.partition = std::move(left_p);
    result.right.partition = std::move(right_p);
    if (verify) {
        result.residual = pointwise_grid_residual(v, result.left, result.right, options);
    }
    return result;
}

Colligation embed_fm_into_fn(const Colligation& v, std::size_t m, std::size_t pad_dim, double tol) {
    const StructureReport pattern = check_fm(v, m, tol);
    if (!pattern.satisfied) {
        throw StructureError("separated pattern does not hold: " + describe(pattern));
    }
    const std::size_t n = v.partition.count();
    SpacePartition widened;
    std::vector<std::pair<std::size_t, std::size_t>> split(n);
    widened.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        widened.dims[i] = v.partition.dims[i] + pad_dim;
        split[i] = i < m ? std::make_pair(v.partition.dims[i], pad_dim)
                         : std::make_pair(pad_dim, v.partition.dims[i]);
    }
    widened.split = std::move(split);
    const std::size_t total = widened.total();

    // Original blocks land in the M-part for the leading group and the
    // N-part for the trailing group; padding carries identity couplings on
    // the diagonal and the cross-group coupling moves to the off-split slot.
    CMatrix b(1, total);
    CMatrix c(total, 1);
    CMatrix d(total, total);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = widened.offset(i);
        const std::size_t own = i < m ? off : off + pad_dim;
        set_submatrix(b, 0, own, b_block(v, i));
        set_submatrix(c, own, 0, c_block(v, i));
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t coff = widened.offset(j);
            const std::size_t cown = j < m ? coff : coff + pad_dim;
            set_submatrix(d, own, cown, d_block(v, i, j));
            if (i == j) {
                const std::size_t pad_off = i < m ? off + v.partition.dims[i] : off;
                for (std::size_t k = 0; k < pad_dim; ++k) {
                    d(pad_off + k, pad_off + k) = 1.0;
                }
            }
        }
    }
    return make_colligation(v.a, std::move(b), std::move(c), std::move(d), std::move(widened));
}

RoundtripReport product_factor_roundtrip(const Colligation& v1, const Colligation& v2, double tol) {
    validate_isometry(v1, tol);
    validate_isometry(v2, tol);
    if (std::abs(v1.a * v2.a) <= tol) {
        throw ZeroConstantError("roundtrip needs nonzero factor constants");
    }
    const Colligation product = product_fn(v1, v2, false);
    const FactorizationResult recovered = factor_fn(product, false, tol);
    const Complex epsilon = recovered.left.a / v1.a;
    if (std::abs(std::abs(epsilon) - 1.0) > 1e-12) {
        throw VerificationError("recovered gauge is not unimodular");
    }
    Colligation expected_left = v1;
    expected_left.a *= epsilon;
    expected_left.C = epsilon * expected_left.C;
    Colligation expected_right = v2;
    expected_right.a *= std::conj(epsilon);
    expected_right.B = std::conj(epsilon) * expected_right.B;
    const double deviation =
        std::max(max_abs_diff(assemble(recovered.left), assemble(expected_left)),
                 max_abs_diff(assemble(recovered.right), assemble(expected_right)));
    return {epsilon, deviation};
}

} // namespace colliq
