#include "colliq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace colliq {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) {
        throw DimensionError("entry count does not match matrix shape");
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shapes differ");
    }
}

} // namespace

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "add");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) + b(i, j);
        }
    }
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "subtract");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) - b(i, j);
        }
    }
    return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions differ");
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = s * a(i, j);
        }
    }
    return out;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols()) {
        throw DimensionError("solve: coefficient matrix must be square");
    }
    if (b.rows() != a.rows()) {
        throw DimensionError("solve: right-hand side row count mismatch");
    }
    const std::size_t n = a.rows();
    CMatrix lu = a;
    CMatrix x = b;
    double largest_pivot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) {
                p = i;
            }
        }
        const double pivot = std::abs(lu(p, k));
        largest_pivot = std::max(largest_pivot, pivot);
        if (pivot <= 1e-12 * largest_pivot) {
            const double cond = pivot > 0.0 ? largest_pivot / pivot
                                            : std::numeric_limits<double>::infinity();
            throw SingularMatrixError("solve: matrix singular to working precision", cond);
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(p, j));
            }
            for (std::size_t j = 0; j < x.cols(); ++j) {
                std::swap(x(k, j), x(p, j));
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) / lu(k, k);
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                lu(i, j) -= f * lu(k, j);
            }
            for (std::size_t j = 0; j < x.cols(); ++j) {
                x(i, j) -= f * x(k, j);
            }
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            Complex acc = x(k, j);
            for (std::size_t l = k + 1; l < n; ++l) {
                acc -= lu(k, l) * x(l, j);
            }
            x(k, j) = acc / lu(k, k);
        }
    }
    if (!is_finite(x)) {
        throw SingularMatrixError("solve: non-finite solution", std::numeric_limits<double>::infinity());
    }
    return x;
}

double frobenius_norm(const CMatrix& a) {
    double sum = 0.0;
    for (const Complex& z : a.data()) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.data()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

bool is_finite(const CMatrix& a) {
    for (const Complex& z : a.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

CMatrix submatrix(const CMatrix& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    if (r1 < r0 || c1 < c0 || r1 > a.rows() || c1 > a.cols()) {
        throw DimensionError("submatrix: block out of range");
    }
    CMatrix out(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i) {
        for (std::size_t j = c0; j < c1; ++j) {
            out(i - r0, j - c0) = a(i, j);
        }
    }
    return out;
}

void set_submatrix(CMatrix& a, std::size_t r0, std::size_t c0, const CMatrix& block) {
    if (r0 + block.rows() > a.rows() || c0 + block.cols() > a.cols()) {
        throw DimensionError("set_submatrix: block out of range");
    }
    for (std::size_t i = 0; i < block.rows(); ++i) {
        for (std::size_t j = 0; j < block.cols(); ++j) {
            a(r0 + i, c0 + j) = block(i, j);
        }
    }
}

std::string to_string(const CMatrix& a) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex z = a(i, j);
            os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
            if (j + 1 < a.cols()) {
                os << ", ";
            }
        }
        os << (i + 1 == a.rows() ? "]" : ";\n");
    }
    if (a.rows() == 0) {
        os << "[]";
    }
    return os.str();
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; 1-u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

CMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) {
        throw ArgumentError("haar_unitary: dimension must be positive");
    }
    Rng rng(seed);
    CMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    // Modified Gram-Schmidt with one re-orthogonalization pass; normalizing
    // by the real positive column norm fixes the diagonal phase, which is the
    // convention under which QR of a Gaussian matrix is Haar.
    CMatrix q(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = g(i, j);
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(q(i, k)) * v[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    v[i] -= proj * q(i, k);
                }
            }
        }
        double norm_sq = 0.0;
        for (const Complex& z : v) {
            norm_sq += std::norm(z);
        }
        const double norm = std::sqrt(norm_sq);
        for (std::size_t i = 0; i < dim; ++i) {
            q(i, j) = v[i] / norm;
        }
    }
    return q;
}

double real_gram(const CMatrix& g) {
    if (g.rows() != 1 || g.cols() != 1) {
        throw DimensionError("real_gram: expected a 1x1 value");
    }
    const Complex z = g(0, 0);
    if (std::abs(z.imag()) > 1e-14) {
        throw ArgumentError("real_gram: value has a non-real part beyond rounding level");
    }
    return z.real();
}

} // namespace colliq
