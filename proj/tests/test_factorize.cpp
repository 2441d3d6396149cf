#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "colliq/builders.hpp"
#include "colliq/factorize.hpp"
#include "colliq/structure.hpp"
#include "support.hpp"

using namespace colliq;
using testsupport::blaschke_value;

namespace {

Colligation random_iso(std::vector<std::size_t> dims, std::uint64_t seed) {
    return random_isometric_colligation(SpacePartition{std::move(dims), std::nullopt}, seed);
}

Colligation random_nonzero_constant(std::vector<std::size_t> dims, std::uint64_t seed,
                                    double floor = 0.05) {
    Rng master(seed);
    for (;;) {
        const Colligation v = random_iso(dims, master.next_u64());
        if (std::abs(v.a) >= floor) {
            return v;
        }
    }
}

} // namespace

TEST_CASE("product_fm reproduces the explicit two-Blaschke matrix") {
    const Complex alpha{0.3};
    const Complex beta{0.5};
    const Colligation direct = shifted_blaschke_product_colligation(alpha, beta);
    const Colligation built = product_fm(blaschke_colligation(alpha), blaschke_colligation(beta));
    CHECK(max_abs_diff(assemble(direct), assemble(built)) <= 1e-14);
}

TEST_CASE("product_fm with a trivial constant factor pads the state") {
    const Colligation v1 = random_iso({2}, 15);
    const Colligation unit = make_colligation(1.0, CMatrix(1, 0), CMatrix(0, 1), CMatrix(0, 0),
                                              SpacePartition{{0}, std::nullopt});
    const Colligation padded = product_fm(v1, unit, true);
    CHECK(padded.partition.dims == std::vector<std::size_t>{2, 0});
    CHECK(padded.a == v1.a);
    for (const Point& z : sample_polydisc(1, 30, 3)) {
        CHECK(std::abs(transfer_eval(padded, Point{z[0], 0.4}) - transfer_eval(v1, z)) <= 1e-13);
    }
}

TEST_CASE("product_fm multiplies transfer functions across split coordinates") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Colligation v1 = random_iso({2}, 100 + seed);
        const Colligation v2 = random_iso({3}, 200 + seed);
        const Colligation v = product_fm(v1, v2);
        CHECK(is_isometry(v, 1e-12).isometric);
        CHECK(separated_grid_residual(v, v1, v2, 1, {seed, 100, 1e-10}) <= 1e-10);
    }
}

TEST_CASE("product_fm rejects non-isometric input") {
    const Colligation bad = from_matrix(0.5 * CMatrix::identity(3),
                                        SpacePartition{{2}, std::nullopt});
    CHECK_THROWS_AS(product_fm(bad, random_iso({1}, 1)), NotIsometricError);
}

TEST_CASE("factor_fm round-trips two-Blaschke products up to a unimodular gauge") {
    const Complex lam1{0.3};
    const Complex lam2{0.5};
    const Colligation v = product_fm(blaschke_colligation(lam1), blaschke_colligation(lam2));
    const FactorizationResult fr = factor_fm(v, 1, true);
    CHECK(fr.residual <= 1e-10);
    CHECK(std::abs(fr.alpha * fr.beta - v.a) <= 1e-12);

    // Each factor is a unimodular multiple of the closed form, with the two
    // gauges conjugate to each other.
    const auto pts = sample_polydisc(1, 40, 5);
    Complex gauge_left{};
    Complex gauge_right{};
    double best_left = 0.0;
    double best_right = 0.0;
    for (const Point& z : pts) {
        const Complex ref_l = blaschke_value(lam1, z[0]);
        const Complex ref_r = blaschke_value(lam2, z[0]);
        if (std::abs(ref_l) > best_left) {
            best_left = std::abs(ref_l);
            gauge_left = transfer_eval(fr.left, z) / ref_l;
        }
        if (std::abs(ref_r) > best_right) {
            best_right = std::abs(ref_r);
            gauge_right = transfer_eval(fr.right, z) / ref_r;
        }
    }
    CHECK(std::abs(std::abs(gauge_left) - 1.0) <= 1e-12);
    CHECK(std::abs(gauge_left * gauge_right - 1.0) <= 1e-11);
    for (const Point& z : pts) {
        CHECK(std::abs(transfer_eval(fr.left, z) - gauge_left * blaschke_value(lam1, z[0])) <= 1e-12);
    }
}

TEST_CASE("factor_fm handles a vanishing C(1) block") {
    // First factor constant-like: unimodular scalar, decoupled unitary state.
    const Colligation v1 = make_colligation(Complex{0.6, 0.8}, CMatrix(1, 1), CMatrix(1, 1),
                                            haar_unitary(1, 9), SpacePartition{{1}, std::nullopt});
    const Colligation v2 = random_nonzero_constant({2}, 10);
    const Colligation v = product_fm(v1, v2);
    const FactorizationResult fr = factor_fm(v, 1, true);
    // |beta| = |a| branch: beta real positive with |beta|^2 = |a|^2 + 0.
    CHECK(std::abs(fr.beta - std::abs(v.a)) <= 1e-12);
    CHECK(std::abs(std::abs(fr.alpha) - 1.0) <= 1e-12);
    CHECK(fr.residual <= 1e-10);
}

TEST_CASE("factor_fm guards") {
    const Colligation generic = random_iso({2, 2}, 30);
    CHECK_THROWS_AS(factor_fm(generic, 1), StructureError);

    const Colligation zero = random_structured_colligation(
        StructuredKind::zero_origin_1, SpacePartition{{2, 2}, std::nullopt}, 0, 31);
    CHECK_THROWS_AS(factor_fm(zero, 1), ZeroConstantError);
}

TEST_CASE("factor_fm round-trips random separated products") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Colligation v1 = random_nonzero_constant({1, 2}, 300 + seed);
        const Colligation v2 = random_nonzero_constant({2}, 400 + seed);
        const Colligation v = product_fm(v1, v2);
        const FactorizationResult fr = factor_fm(v, 2, true, 1e-9, {seed, 100, 1e-10});
        CHECK(is_isometry(fr.left, 1e-10).isometric);
        CHECK(is_isometry(fr.right, 1e-10).isometric);
        CHECK(fr.residual <= 1e-10);
        CHECK(separated_grid_residual(v, fr.left, fr.right, 2, {seed + 1, 100, 1e-10}) <= 1e-9);
    }
}

TEST_CASE("flip permutation") {
    SpacePartition p1{{1}, {{std::pair<std::size_t, std::size_t>{1, 0}}}};
    CHECK(flip_permutation(p1) == CMatrix::identity(1));

    SpacePartition p{{2, 2}, {{std::pair<std::size_t, std::size_t>{1, 1}, {1, 1}}}};
    const CMatrix eta = flip_permutation(p);
    // Index map oracle: source order (M1, N1, M2, N2) -> target (M1, M2, N1, N2).
    const std::size_t expected_target[4] = {0, 2, 1, 3};
    for (std::size_t src = 0; src < 4; ++src) {
        for (std::size_t tgt = 0; tgt < 4; ++tgt) {
            CHECK(eta(tgt, src) == Complex{expected_target[src] == tgt ? 1.0 : 0.0});
        }
    }
    CHECK(adjoint(eta) * eta == CMatrix::identity(4));

    SpacePartition wide{{3, 2, 4}, {{std::pair<std::size_t, std::size_t>{2, 1}, {0, 2}, {3, 1}}}};
    const CMatrix eta2 = flip_permutation(wide);
    CHECK(adjoint(eta2) * eta2 == CMatrix::identity(9));
    // Applying the permutation and its adjoint recovers the input.
    CMatrix x(9, 1);
    for (std::size_t i = 0; i < 9; ++i) {
        x(i, 0) = Complex(double(i), -double(i));
    }
    CHECK(max_abs_diff(adjoint(eta2) * (eta2 * x), x) == 0.0);
}

TEST_CASE("flip conjugation preserves transfer values on doubled coordinates") {
    // The flipped colligation, read on the partition (M1..Mn, N1..Nn),
    // evaluates at (z, z) to the original value.
    const Colligation v1 = random_iso({1, 2}, 41);
    const Colligation v2 = random_iso({2, 1}, 42);
    const Colligation v = product_fn(v1, v2);
    const Colligation two = conjugate_by_flip(v);
    SpacePartition doubled{{1, 2, 2, 1}, std::nullopt};
    const Colligation spread = make_colligation(two.a, two.B, two.C, two.D, doubled);
    for (const Point& z : sample_polydisc(2, 40, 43)) {
        const Point zz{z[0], z[1], z[0], z[1]};
        CHECK(std::abs(transfer_eval(v, z) - transfer_eval(spread, zz)) <= 1e-13);
    }
}

TEST_CASE("product_fn multiplies transfer functions pointwise") {
    // Two single-variable Blaschke factors as a paired-split product.
    const Complex la{0.4, 0.1};
    const Complex lb{-0.2, 0.3};
    const Colligation v = product_fn(blaschke_colligation(la), blaschke_colligation(lb), true);
    CHECK(check_fn(v).satisfied);
    for (const Point& z : sample_polydisc(1, 100, 7)) {
        const Complex expected = blaschke_value(la, z[0]) * blaschke_value(lb, z[0]);
        CHECK(std::abs(transfer_eval(v, z) - expected) <= 1e-13);
    }

    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Colligation v1 = random_iso({2, 1}, 500 + seed);
        const Colligation v2 = random_iso({1, 2}, 600 + seed);
        const Colligation w = product_fn(v1, v2);
        CHECK(is_isometry(w, 1e-12).isometric);
        CHECK(pointwise_grid_residual(w, v1, v2, {seed, 100, 1e-10}) <= 1e-10);
    }
}

TEST_CASE("product_fn with an all-empty second factor is the identity embedding") {
    const Colligation v1 = random_iso({2, 1}, 70);
    const Colligation unit = make_colligation(1.0, CMatrix(1, 0), CMatrix(0, 1), CMatrix(0, 0),
                                              SpacePartition{{0, 0}, std::nullopt});
    const Colligation v = product_fn(v1, unit, true);
    CHECK(v.partition.dims == v1.partition.dims);
    CHECK(max_abs_diff(assemble(v), assemble(v1)) <= 1e-15);
}

TEST_CASE("product_fn rejects mismatched variable counts") {
    CHECK_THROWS_AS(product_fn(random_iso({1}, 1), random_iso({1, 1}, 2)), ArgumentError);
}

TEST_CASE("factor_fn round-trips paired products") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Colligation v1 = random_nonzero_constant({2, 1}, 700 + seed);
        const Colligation v2 = random_nonzero_constant({1, 2}, 800 + seed);
        const Colligation v = product_fn(v1, v2);
        const FactorizationResult fr = factor_fn(v, true, 1e-9, {seed, 100, 1e-10});
        CHECK(is_isometry(fr.left, 1e-10).isometric);
        CHECK(is_isometry(fr.right, 1e-10).isometric);
        CHECK(fr.residual <= 1e-9);
        CHECK(fr.left.partition.dims == v1.partition.dims);
        CHECK(fr.right.partition.dims == v2.partition.dims);
    }
}

TEST_CASE("factor_fn with an empty right component hits the unimodular branch") {
    const Colligation v1 = random_nonzero_constant({1, 1}, 55);
    const Colligation unit = make_colligation(1.0, CMatrix(1, 0), CMatrix(0, 1), CMatrix(0, 0),
                                              SpacePartition{{0, 0}, std::nullopt});
    const Colligation v = product_fn(v1, unit);
    const FactorizationResult fr = factor_fn(v, true);
    // C(2) = 0 forces |beta| = 1.
    CHECK(std::abs(std::abs(fr.beta) - 1.0) <= 1e-12);
    CHECK(fr.residual <= 1e-10);
}

TEST_CASE("factor_fn guards") {
    const Colligation generic = random_iso({2}, 77);
    CHECK_THROWS_AS(factor_fn(generic), ArgumentError); // no split
    const Colligation zero1 = product_fn(
        random_zero_constant_colligation(SpacePartition{{1, 1}, std::nullopt}, 78),
        random_iso({1, 1}, 79));
    CHECK_THROWS_AS(factor_fn(zero1), ZeroConstantError);
}

TEST_CASE("product_chain matches coordinate-wise Blaschke products") {
    const Complex lams[3] = {Complex{0.1}, Complex{0.2}, Complex{0.3}};
    std::vector<Colligation> factors;
    for (const Complex& lam : lams) {
        factors.push_back(blaschke_colligation(lam));
    }
    const Colligation v = product_chain(factors, true);
    CHECK(check_chain(v).satisfied);
    for (const Point& z : sample_polydisc(3, 100, 12)) {
        Complex expected{1.0};
        for (std::size_t i = 0; i < 3; ++i) {
            expected *= blaschke_value(lams[i], z[i]);
        }
        CHECK(std::abs(transfer_eval(v, z) - expected) <= 1e-11);
    }
}

TEST_CASE("product_chain of a single factor is that factor") {
    const Colligation f = random_iso({2}, 90);
    const Colligation v = product_chain(std::vector<Colligation>{f});
    CHECK(max_abs_diff(assemble(v), assemble(f)) == 0.0);
}

TEST_CASE("a two-factor chain equals the separated product") {
    const Colligation f1 = random_iso({2}, 91);
    const Colligation f2 = random_iso({3}, 92);
    const std::vector<Colligation> fs{f1, f2};
    CHECK(max_abs_diff(assemble(product_chain(fs)), assemble(product_fm(f1, f2))) <= 1e-15);
}

TEST_CASE("product_chain guards") {
    CHECK_THROWS_AS(product_chain({}), ArgumentError);
    CHECK_THROWS_AS(product_chain(std::vector<Colligation>{random_iso({1, 1}, 93)}), ArgumentError);
    const Colligation zero = random_zero_constant_colligation(SpacePartition{{1}, std::nullopt}, 94);
    const std::vector<Colligation> with_zero{zero, random_iso({1}, 95)};
    CHECK_THROWS_AS(product_chain(with_zero, true), ZeroConstantError);
    CHECK(is_isometry(product_chain(with_zero, false), 1e-12).isometric);
}

TEST_CASE("factor_chain recovers single-variable factors") {
    const Complex lams[3] = {Complex{0.1}, Complex{0.2}, Complex{0.3}};
    std::vector<Colligation> factors;
    for (const Complex& lam : lams) {
        factors.push_back(blaschke_colligation(lam));
    }
    const Colligation v = product_chain(factors, false);
    const std::vector<Colligation> recovered = factor_chain(v, true);
    REQUIRE(recovered.size() == 3);
    CHECK(chain_grid_residual(v, recovered, {}) <= 1e-9);

    // Gauges are unimodular and multiply to one.
    Complex gauge_product{1.0};
    for (std::size_t i = 0; i < 3; ++i) {
        Complex gauge{};
        double best = 0.0;
        for (const Point& z : sample_polydisc(1, 30, 14 + i)) {
            const Complex ref = blaschke_value(lams[i], z[0]);
            if (std::abs(ref) > best) {
                best = std::abs(ref);
                gauge = transfer_eval(recovered[i], z) / ref;
            }
        }
        CHECK(std::abs(std::abs(gauge) - 1.0) <= 1e-11);
        gauge_product *= gauge;
    }
    CHECK(std::abs(gauge_product - 1.0) <= 1e-11);
}

TEST_CASE("factor_chain on one variable returns the input") {
    const Colligation v = random_nonzero_constant({2}, 96);
    const std::vector<Colligation> fs = factor_chain(v);
    REQUIRE(fs.size() == 1);
    CHECK(max_abs_diff(assemble(fs[0]), assemble(v)) == 0.0);
}

TEST_CASE("factor_chain round-trips random chains") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Colligation v = random_structured_colligation(
            StructuredKind::chain, SpacePartition{{2, 3, 1}, std::nullopt}, 0, 1000 + seed);
        const std::vector<Colligation> fs = factor_chain(v, true, 1e-9, {seed, 100, 1e-10});
        CHECK(fs.size() == 3);
        CHECK(chain_grid_residual(v, fs, {seed + 5, 100, 1e-10}) <= 1e-9);
    }
}

TEST_CASE("zero-origin case 1 extraction") {
    // phi(z1) = z1 against a Blaschke second factor.
    const Colligation coordinate = blaschke_colligation(0.0);
    const Colligation blaschke = blaschke_colligation(0.5);
    const Colligation v = product_fm(coordinate, blaschke);
    const FactorizationResult fr = factor_zero_origin_case1(v, true);
    CHECK(fr.residual <= 1e-10);
    CHECK(transfer_eval(fr.left, Point{0.0}) == Complex{0.0});
    CHECK(std::abs(transfer_eval(fr.right, Point{0.0})) > 0.0);
    // Combined product matches z * b(z) on the diagonal.
    for (const Point& z : sample_polydisc(1, 50, 17)) {
        const Complex expected = z[0] * blaschke_value(0.5, z[0]);
        const Complex got = transfer_eval(fr.left, z) * transfer_eval(fr.right, z);
        CHECK(std::abs(got - expected) <= 1e-12);
    }
}

TEST_CASE("zero-origin case 1 with a zero coupling block") {
    // A constant-like second factor (B = 0) keeps the composite coupling at
    // zero, so the extracted right factor is constant-plus-tail.
    const Colligation v1 = random_zero_constant_colligation(SpacePartition{{2}, std::nullopt}, 18);
    const Colligation constant2 = make_colligation(
        Complex{0.28, -0.96}, CMatrix(1, 2), CMatrix(2, 1), haar_unitary(2, 20),
        SpacePartition{{2}, std::nullopt});
    const Colligation v = product_fm(v1, constant2);
    const FactorizationResult fr = factor_zero_origin_case1(v, true);
    CHECK(frobenius_norm(fr.right.B) <= 1e-14);
    CHECK(fr.residual <= 1e-10);
}

TEST_CASE("zero-origin case 1 across random composites") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Colligation v = random_structured_colligation(
            StructuredKind::zero_origin_1, SpacePartition{{2, 3}, std::nullopt}, 0, 2000 + seed);
        const FactorizationResult fr = factor_zero_origin_case1(v, true, 1e-10, {seed, 100, 1e-10});
        CHECK(fr.residual <= 1e-10);
        CHECK(fr.left.a == Complex{0.0});
        CHECK(std::abs(fr.right.a) > 1e-10);
    }
}

TEST_CASE("zero-origin case 2 extraction") {
    // theta(z1, z2) = z1 * z2 via two coordinate functions.
    const Colligation z1 = blaschke_colligation(0.0);
    const Colligation v = product_fm(z1, z1);
    CMatrix x(1, 1, {1.0});
    CMatrix y(1, 1, {1.0});
    const FactorizationResult fr = factor_zero_origin_case2(v, x, y, true);
    CHECK(fr.residual <= 1e-12);
    for (const Point& z : sample_polydisc(1, 20, 21)) {
        CHECK(std::abs(transfer_eval(fr.left, z) - z[0]) <= 1e-13);
        CHECK(std::abs(transfer_eval(fr.right, z) - z[0]) <= 1e-13);
    }
}

TEST_CASE("zero-origin case 2 across random composites") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Colligation v = random_structured_colligation(
            StructuredKind::zero_origin_2, SpacePartition{{2, 2}, std::nullopt}, 0, 3000 + seed);
        const auto witness = recover_case2_witness(v);
        REQUIRE(witness.has_value());
        const FactorizationResult fr =
            factor_zero_origin_case2(v, witness->first, witness->second, true, 1e-10,
                                     {seed, 100, 1e-10});
        CHECK(fr.residual <= 1e-10);
        CHECK(transfer_eval(fr.left, Point{0.0}) == Complex{0.0});
        CHECK(transfer_eval(fr.right, Point{0.0}) == Complex{0.0});
    }
}

TEST_CASE("n-variable zero-origin factorization") {
    // Case 1: left factor vanishes at the origin, right does not.
    const Colligation phi = random_zero_constant_colligation(SpacePartition{{1, 2}, std::nullopt}, 22);
    Rng master(23);
    Colligation psi = random_iso({2, 1}, master.next_u64());
    while (std::abs(psi.a) < 0.1) {
        psi = random_iso({2, 1}, master.next_u64());
    }
    const Colligation composite = product_fn(phi, psi);
    const FactorizationResult fr = factor_zero_origin_nvar(composite, 1, {}, true);
    CHECK(fr.residual <= 1e-10);
    CHECK(fr.left.partition.dims == phi.partition.dims);
    CHECK(fr.right.partition.dims == psi.partition.dims);

    // Case 2 on two zero-constant factors.
    const Colligation phi2 = random_zero_constant_colligation(SpacePartition{{2, 1}, std::nullopt}, 24);
    const Colligation psi2 = random_zero_constant_colligation(SpacePartition{{1, 1}, std::nullopt}, 25);
    const Colligation composite2 = product_fn(phi2, psi2);
    const FactorizationResult fr2 = factor_zero_origin_nvar(composite2, 2, {}, true);
    CHECK(fr2.residual <= 1e-10);

    // Guard: a nonzero constant is rejected.
    const Colligation nonzero = product_fn(random_nonzero_constant({1, 1}, 26),
                                           random_nonzero_constant({1, 1}, 27));
    CHECK_THROWS_AS(factor_zero_origin_nvar(nonzero, 1, {}, false), StructureError);
}

TEST_CASE("n-variable zero-origin with empty N blocks keeps the right factor constant") {
    const Colligation phi = random_zero_constant_colligation(SpacePartition{{2, 1}, std::nullopt}, 28);
    const Colligation unit = make_colligation(1.0, CMatrix(1, 0), CMatrix(0, 1), CMatrix(0, 0),
                                              SpacePartition{{0, 0}, std::nullopt});
    const Colligation composite = product_fn(phi, unit);
    const FactorizationResult fr = factor_zero_origin_nvar(composite, 1, {}, true);
    CHECK(fr.right.partition.total() == 0);
    CHECK(std::abs(std::abs(fr.right.a) - 1.0) <= 1e-12);
    CHECK(fr.residual <= 1e-10);
}

TEST_CASE("embedding a separated pattern into a paired one preserves the function") {
    const Colligation v = product_fm(blaschke_colligation(0.3), blaschke_colligation(0.5));

    const Colligation trivially = embed_fm_into_fn(v, 1, 0);
    CHECK(check_fn(trivially).satisfied);
    CHECK(embedding_grid_residual(v, trivially, {}) <= 1e-14);

    const Colligation widened = embed_fm_into_fn(v, 1, 1);
    CHECK(check_fn(widened).satisfied);
    CHECK(is_isometry(widened, 1e-12).isometric);
    CHECK(embedding_grid_residual(v, widened, {}) <= 1e-12);

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Colligation s = random_structured_colligation(
            StructuredKind::fm, SpacePartition{{2, 1, 2}, std::nullopt}, 2, 4000 + seed);
        const Colligation wide = embed_fm_into_fn(s, 2, 2);
        CHECK(check_fn(wide).satisfied);
        CHECK(is_isometry(wide, 1e-12).isometric);
        CHECK(embedding_grid_residual(s, wide, {seed, 100, 1e-10}) <= 1e-12);
    }

    CHECK_THROWS_AS(embed_fm_into_fn(random_iso({2, 2}, 29), 1, 1), StructureError);
}

TEST_CASE("roundtrip gauge is the phase of the second constant") {
    const Colligation v1 = random_nonzero_constant({1, 1}, 31);
    const Colligation v2 = random_nonzero_constant({2, 1}, 32);
    const RoundtripReport report = product_factor_roundtrip(v1, v2);
    CHECK(std::abs(std::abs(report.epsilon) - 1.0) <= 1e-12);
    // The extraction picks its scalar positive real, so the leftover gauge
    // is exactly the phase of v2's constant.
    CHECK(std::abs(report.epsilon - v2.a / std::abs(v2.a)) <= 1e-12);
    CHECK(report.max_deviation <= 1e-11);

    // Rotating v2's constant to positive real makes the gauge trivial.
    CMatrix rotation = CMatrix::identity(1 + v2.partition.total());
    rotation(0, 0) = std::abs(v2.a) / v2.a;
    const Colligation positive = from_matrix(assemble(v2) * rotation, v2.partition);
    const RoundtripReport trivial = product_factor_roundtrip(v1, positive);
    CHECK(std::abs(trivial.epsilon - 1.0) <= 1e-12);
    CHECK(trivial.max_deviation <= 1e-11);
}

TEST_CASE("roundtrip handles rotated constants") {
    Colligation v1 = random_nonzero_constant({1}, 33);
    // Rotate the first factor so its constant is purely imaginary positive.
    const Complex phase = Complex{0.0, 1.0} * std::abs(v1.a) / v1.a;
    CMatrix rotation = CMatrix::identity(2);
    rotation(0, 0) = phase;
    const Colligation rotated = from_matrix(rotation * assemble(v1), v1.partition);
    const Colligation v2 = random_nonzero_constant({1}, 34);
    const RoundtripReport report = product_factor_roundtrip(rotated, v2);
    CHECK(std::abs(std::abs(report.epsilon) - 1.0) <= 1e-12);
    CHECK(report.max_deviation <= 1e-11);
}

TEST_CASE("roundtrip on scalar-state Blaschke pairs") {
    const RoundtripReport report =
        product_factor_roundtrip(blaschke_colligation(0.3), blaschke_colligation(-0.4));
    CHECK(std::abs(std::abs(report.epsilon) - 1.0) <= 1e-13);
    CHECK(report.max_deviation <= 1e-12);
    CHECK_THROWS_AS(product_factor_roundtrip(blaschke_colligation(0.0), blaschke_colligation(0.3)),
                    ZeroConstantError);
}

TEST_CASE("roundtrip deviation across random pairs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Colligation v1 = random_nonzero_constant({1, 2}, 5000 + seed);
        const Colligation v2 = random_nonzero_constant({2, 2}, 6000 + seed);
        const RoundtripReport report = product_factor_roundtrip(v1, v2);
        CHECK(std::abs(std::abs(report.epsilon) - 1.0) <= 1e-12);
        CHECK(report.max_deviation <= 1e-11);
    }
}

TEST_CASE("fm and fn embeddings multiply back to the product") {
    const Colligation v1 = random_iso({2}, 35);
    const Colligation v2 = random_iso({1}, 36);
    const auto [w1, w2] = fm_embeddings(v1, v2);
    CHECK(max_abs_diff(assemble(w1) * assemble(w2), assemble(product_fm(v1, v2))) <= 1e-14);

    const Colligation p1 = random_iso({1, 2}, 37);
    const Colligation p2 = random_iso({2, 1}, 38);
    const auto [e1, e2] = fn_embeddings(p1, p2);
    CHECK(is_isometry(e1, 1e-12).isometric);
    CHECK(is_isometry(e2, 1e-12).isometric);
    CHECK(max_abs_diff(assemble(e1) * assemble(e2), assemble(product_fn(p1, p2))) <= 1e-14);
}
