#pragma once

// Test-only oracles, independent of the library's evaluation path: a naive
// triple-loop product, closed forms, and a power-series transfer evaluation
// that never touches the linear solver.

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "colliq/ball.hpp"
#include "colliq/colligation.hpp"

namespace testsupport {

using colliq::BallColligation;
using colliq::CMatrix;
using colliq::Colligation;
using colliq::Complex;
using colliq::Point;

inline CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += a(i, k) * b(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

inline Complex blaschke_value(Complex lambda, Complex z) {
    return (z - lambda) / (1.0 - std::conj(lambda) * z);
}

/// Moebius closed form for single-variable, one-dimensional colligations.
inline Complex mobius_value(const Colligation& v, Complex z) {
    return v.a + z * v.B(0, 0) * v.C(0, 0) / (1.0 - z * v.D(0, 0));
}

/// Transfer value by the geometric series a + sum_k B (E D)^k E C; converges
/// strictly inside the domain and shares nothing with the solver route.
inline Complex transfer_series(const Colligation& v, const Point& z, std::size_t max_terms = 600) {
    const std::size_t t = v.partition.total();
    CMatrix e(t, t);
    std::size_t off = 0;
    for (std::size_t i = 0; i < v.partition.count(); ++i) {
        for (std::size_t k = 0; k < v.partition.dims[i]; ++k) {
            e(off + k, off + k) = z[i];
        }
        off += v.partition.dims[i];
    }
    Complex acc = v.a;
    CMatrix w = naive_matmul(e, v.C);
    for (std::size_t term = 0; term < max_terms; ++term) {
        acc += naive_matmul(v.B, w)(0, 0);
        if (colliq::frobenius_norm(w) < 1e-18) {
            break;
        }
        w = naive_matmul(e, naive_matmul(v.D, w));
    }
    return acc;
}

inline Complex ball_transfer_series(const BallColligation& v, const Point& z,
                                    std::size_t max_terms = 600) {
    CMatrix ed(v.dim, v.dim);
    CMatrix ec(v.dim, 1);
    for (std::size_t i = 0; i < v.vars; ++i) {
        ed = ed + z[i] * colliq::ball_d_block(v, i);
        ec = ec + z[i] * colliq::ball_c_block(v, i);
    }
    Complex acc = v.a;
    CMatrix w = ec;
    for (std::size_t term = 0; term < max_terms; ++term) {
        acc += naive_matmul(v.B, w)(0, 0);
        if (colliq::frobenius_norm(w) < 1e-18) {
            break;
        }
        w = naive_matmul(ed, w);
    }
    return acc;
}

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout only
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("popen failed for: " + command);
    }
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
        result.output += buf;
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace testsupport
