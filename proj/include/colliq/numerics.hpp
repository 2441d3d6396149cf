#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "colliq/errors.hpp"

namespace colliq {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultGridPoints = 100;
inline constexpr double kPolydiscRadius = 0.9;   // max coordinate modulus on verification grids
inline constexpr double kBallRadiusSq = 0.81;    // max squared euclidean radius on ball grids

/// Dense complex matrix, row-major. Zero-sized dimensions are allowed and
/// behave as the corresponding empty operator (products over an empty index
/// range are zero), which is how degenerate state-space blocks show up.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    bool operator==(const CMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);
inline CMatrix operator*(const CMatrix& a, Complex s) { return s * a; }

/// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

/// Solves a*x = b by LU elimination with partial pivoting. A pivot falling
/// below 1e-12 of the largest pivot seen so far raises SingularMatrixError
/// carrying the pivot-ratio condition estimate.
CMatrix solve(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_finite(const CMatrix& a);

/// Copy of the half-open block [r0,r1) x [c0,c1).
CMatrix submatrix(const CMatrix& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1);
void set_submatrix(CMatrix& a, std::size_t r0, std::size_t c0, const CMatrix& block);

std::string to_string(const CMatrix& a);

/// Seeded generator used for all randomized inputs. Gaussians come from an
/// explicit Box-Muller transform so a seed pins the exact stream regardless
/// of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double gaussian();
    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-distributed unitary: Gram-Schmidt orthonormalization of a seeded
/// complex Gaussian matrix with positive-real diagonal normalization.
/// Deterministic for a fixed seed.
CMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

/// Unwraps a 1x1 Gram value (x*x style product) to a real scalar, requiring
/// the imaginary part to be at rounding level.
double real_gram(const CMatrix& g);

} // namespace colliq
