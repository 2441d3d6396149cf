#include "colliq/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace colliq {

std::vector<Point> sample_polydisc(std::size_t vars, std::size_t count, std::uint64_t seed,
                                   double max_modulus) {
    Rng rng(seed);
    std::vector<Point> points(count);
    for (Point& p : points) {
        p.resize(vars);
        for (Complex& z : p) {
            const double r = max_modulus * rng.uniform();
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            z = std::polar(r, theta);
        }
    }
    return points;
}

std::vector<Point> sample_ball(std::size_t vars, std::size_t count, std::uint64_t seed,
                               double max_radius_sq) {
    Rng rng(seed);
    std::vector<Point> points(count);
    for (Point& p : points) {
        p.resize(vars);
        double norm_sq = 0.0;
        for (Complex& z : p) {
            z = rng.complex_gaussian();
            norm_sq += std::norm(z);
        }
        if (norm_sq == 0.0) {
            continue; // origin; already inside
        }
        const double radius = std::sqrt(max_radius_sq * rng.uniform());
        const double scale = radius / std::sqrt(norm_sq);
        for (Complex& z : p) {
            z *= scale;
        }
    }
    return points;
}

namespace detail {

[[noreturn]] void rethrow_with_point_index(std::exception_ptr err, std::size_t index) {
    const std::string prefix = "point " + std::to_string(index) + ": ";
    try {
        std::rethrow_exception(err);
    } catch (const DomainError& e) {
        throw DomainError(prefix + e.what());
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError(prefix + e.what(), e.condition_estimate);
    } catch (const DimensionError& e) {
        throw DimensionError(prefix + e.what());
    } catch (const Error& e) {
        throw Error(prefix + e.what());
    }
    // Non-library exceptions propagate unchanged.
}

} // namespace detail

} // namespace colliq
