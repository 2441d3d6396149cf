#include "colliq/structure.hpp"

#include <cmath>
#include <sstream>

#include "colliq/factorize.hpp"

namespace colliq {

std::string describe(const StructureReport& report) {
    std::ostringstream os;
    os << (report.satisfied ? "satisfied" : "violated");
    for (const Violation& v : report.violations) {
        os << "; " << v.constraint << " at block (" << v.block_row << "," << v.block_col
           << ") residual " << v.residual;
    }
    for (const std::string& note : report.notes) {
        os << "; note: " << note;
    }
    return os.str();
}

namespace {

void record(StructureReport& report, std::string constraint, std::size_t i, std::size_t j,
            double residual, double tol) {
    if (residual > tol) {
        report.satisfied = false;
        report.violations.push_back({std::move(constraint), i, j, residual});
    }
}

// The checks report a drifting isometry as a violation instead of refusing
// to run, so nearly-isometric inputs still get their pattern diagnosed.
void record_isometry(StructureReport& report, const Colligation& v, double tol) {
    const IsometryReport iso = is_isometry(v, tol);
    record(report, "V*V = I", 0, 0, iso.residual, tol);
}

} // namespace

StructureReport check_fm(const Colligation& v, std::size_t m, double tol) {
    const std::size_t n = v.partition.count();
    if (m < 1 || m >= n) {
        throw ArgumentError("split index must satisfy 1 <= m < n");
    }
    StructureReport report;
    record_isometry(report, v, tol);
    for (std::size_t i = m; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            record(report, "D(i,j) = 0", i, j, frobenius_norm(d_block(v, i, j)), tol);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = m; j < n; ++j) {
            const double residual =
                frobenius_norm(v.a * d_block(v, i, j) - c_block(v, i) * b_block(v, j));
            record(report, "a*D(i,j) = C(i)*B(j)", i, j, residual, tol);
        }
    }
    return report;
}

namespace {

struct PairedBlocks {
    CMatrix b1, b2; // B_i over M_i and N_i
    CMatrix c1, c2; // C_i over M_i and N_i
};

PairedBlocks paired_block(const Colligation& v, std::size_t i) {
    const auto& [mi, ni] = (*v.partition.split)[i];
    const std::size_t off = v.partition.offset(i);
    (void)ni;
    return {submatrix(v.B, 0, 1, off, off + mi),
            submatrix(v.B, 0, 1, off + mi, off + v.partition.dims[i]),
            submatrix(v.C, off, off + mi, 0, 1),
            submatrix(v.C, off + mi, off + v.partition.dims[i], 0, 1)};
}

} // namespace

StructureReport check_fn(const Colligation& v, double tol) {
    if (!v.partition.split) {
        throw ArgumentError("paired split required");
    }
    const std::size_t n = v.partition.count();
    StructureReport report;
    record_isometry(report, v, tol);
    for (std::size_t i = 0; i < n; ++i) {
        const PairedBlocks bi = paired_block(v, i);
        const std::size_t mi = (*v.partition.split)[i].first;
        const std::size_t ri = v.partition.offset(i);
        for (std::size_t j = 0; j < n; ++j) {
            const PairedBlocks bj = paired_block(v, j);
            const std::size_t mj = (*v.partition.split)[j].first;
            const std::size_t cj = v.partition.offset(j);
            const std::size_t di = v.partition.dims[i];
            const std::size_t dj = v.partition.dims[j];
            const CMatrix d21 = submatrix(v.D, ri + mi, ri + di, cj, cj + mj);
            record(report, "D(i,j)[21] = 0", i, j, frobenius_norm(d21), tol);
            const CMatrix d12 = submatrix(v.D, ri, ri + mi, cj + mj, cj + dj);
            const double residual = frobenius_norm(v.a * d12 - bi.c1 * bj.b2);
            record(report, "a*D(i,j)[12] = C(i)[1]*B(j)[2]", i, j, residual, tol);
        }
    }
    return report;
}

namespace {

void require_two_blocks(const Colligation& v) {
    if (v.partition.count() != 2) {
        throw ArgumentError("a two-block partition is required");
    }
}

} // namespace

StructureReport check_zero_origin_case1(const Colligation& v, double tol) {
    require_two_blocks(v);
    StructureReport report;
    record_isometry(report, v, tol);
    record(report, "a = 0", 0, 0, std::abs(v.a), tol);
    record(report, "B(2) = 0", 0, 1, frobenius_norm(b_block(v, 1)), tol);
    record(report, "D(2,1) = 0", 1, 0, frobenius_norm(d_block(v, 1, 0)), tol);
    const CMatrix c1 = c_block(v, 0);
    const CMatrix coupling = d_block(v, 0, 1);
    const double gram = real_gram(adjoint(c1) * c1);
    const double commute = frobenius_norm(c1 * adjoint(c1) * coupling - gram * coupling);
    record(report, "C(1)C(1)*D(1,2) = C(1)*C(1)D(1,2)", 0, 1, commute, tol);
    if (gram <= tol) {
        report.satisfied = false;
        report.violations.push_back({"C(1)*C(1) > 0", 0, 0, gram});
    }
    return report;
}

StructureReport check_zero_origin_case2(const Colligation& v, const CMatrix& x, const CMatrix& y,
                                        double tol) {
    require_two_blocks(v);
    const std::size_t d1 = v.partition.dims[0];
    const std::size_t d2 = v.partition.dims[1];
    if (x.rows() != d1 || x.cols() != 1) {
        throw DimensionError("witness x must be dim(H_1) x 1");
    }
    if (y.rows() != 1 || y.cols() != d2) {
        throw DimensionError("witness y must be 1 x dim(H_2)");
    }
    StructureReport report;
    record_isometry(report, v, tol);
    record(report, "a = 0", 0, 0, std::abs(v.a), tol);
    record(report, "C(1) = 0", 0, 0, frobenius_norm(c_block(v, 0)), tol);
    record(report, "B(2) = 0", 0, 1, frobenius_norm(b_block(v, 1)), tol);
    record(report, "D(2,1) = 0", 1, 0, frobenius_norm(d_block(v, 1, 0)), tol);
    record(report, "x*x = 1", 0, 0, std::abs(real_gram(adjoint(x) * x) - 1.0), tol);
    record(report, "x*D(1,1) = 0", 0, 0, frobenius_norm(adjoint(x) * d_block(v, 0, 0)), tol);
    record(report, "D(1,2) = x*y", 0, 1, frobenius_norm(d_block(v, 0, 1) - x * y), tol);
    return report;
}

std::optional<std::pair<CMatrix, CMatrix>> recover_case2_witness(const Colligation& v, double tol) {
    require_two_blocks(v);
    const CMatrix coupling = d_block(v, 0, 1);
    if (frobenius_norm(coupling) <= tol) {
        return std::nullopt; // zero coupling carries no direction to recover
    }
    const std::size_t d1 = coupling.rows();
    const std::size_t d2 = coupling.cols();
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < d2; ++j) {
        const double nj = frobenius_norm(submatrix(coupling, 0, d1, j, j + 1));
        if (nj > best_norm) {
            best_norm = nj;
            best = j;
        }
    }
    CMatrix x = submatrix(coupling, 0, d1, best, best + 1);
    x = (1.0 / best_norm) * x;
    const CMatrix y = adjoint(x) * coupling;
    if (frobenius_norm(coupling - x * y) > tol) {
        return std::nullopt; // coupling has rank above one
    }
    return std::make_pair(x, y);
}

StructureReport check_zero_origin_nvar(const Colligation& v, int case_id,
                                       const std::optional<std::pair<CMatrix, CMatrix>>& witnesses,
                                       double tol) {
    if (!v.partition.split) {
        throw ArgumentError("paired split required");
    }
    if (case_id != 1 && case_id != 2) {
        throw ArgumentError("case must be 1 or 2");
    }
    const Colligation two = conjugate_by_flip(v);
    if (case_id == 1) {
        StructureReport report = check_zero_origin_case1(two, tol);
        report.notes.push_back("B(2) = 0 clause adopted by analogy with the two-block case");
        return report;
    }
    auto pair = witnesses;
    if (!pair) {
        pair = recover_case2_witness(two, tol);
        if (!pair) {
            StructureReport report;
            report.satisfied = false;
            report.violations.push_back(
                {"D(1,2) admits a rank-one witness", 0, 1, frobenius_norm(d_block(two, 0, 1))});
            return report;
        }
    }
    return check_zero_origin_case2(two, pair->first, pair->second, tol);
}

StructureReport check_chain(const Colligation& v, double tol) {
    if (std::abs(v.a) <= tol) {
        throw ZeroConstantError("chain pattern needs a nonzero constant term; use the zero-origin path");
    }
    const std::size_t n = v.partition.count();
    StructureReport report;
    record_isometry(report, v, tol);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j) {
                record(report, "D(i,j) = 0", i, j, frobenius_norm(d_block(v, i, j)), tol);
            } else if (i < j) {
                const double residual =
                    frobenius_norm(v.a * d_block(v, i, j) - c_block(v, i) * b_block(v, j));
                record(report, "a*D(i,j) = C(i)*B(j)", i, j, residual, tol);
            }
        }
    }
    return report;
}

Colligation conjugate_by_flip(const Colligation& v) {
    const CMatrix eta = flip_permutation(v.partition);
    const CMatrix eta_adj = adjoint(eta);
    SpacePartition two{{v.partition.split_left_total(), v.partition.split_right_total()}, std::nullopt};
    return make_colligation(v.a, v.B * eta_adj, eta * v.C, eta * v.D * eta_adj, std::move(two));
}

} // namespace colliq
