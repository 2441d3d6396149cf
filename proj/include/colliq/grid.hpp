#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "colliq/numerics.hpp"

namespace colliq {

/// One evaluation point: an n-vector of coordinates.
using Point = std::vector<Complex>;

/// Loop policy for per-point kernels. Points are evaluated independently and
/// results aggregate by maximum, so both policies produce identical values;
/// the serial path is the reference the parallel one is tested against.
enum class Policy { serial, parallel };

inline constexpr Policy kDefaultPolicy = Policy::parallel;

/// Seeded interior polydisc sample: each coordinate has modulus uniform in
/// [0, max_modulus] and uniform phase.
std::vector<Point> sample_polydisc(std::size_t vars, std::size_t count, std::uint64_t seed,
                                   double max_modulus = kPolydiscRadius);

/// Seeded interior ball sample: uniform direction, squared radius uniform in
/// [0, max_radius_sq].
std::vector<Point> sample_ball(std::size_t vars, std::size_t count, std::uint64_t seed,
                               double max_radius_sq = kBallRadiusSq);

namespace detail {

[[noreturn]] void rethrow_with_point_index(std::exception_ptr err, std::size_t index);

} // namespace detail

/// Applies f to every point. Failures propagate annotated with the lowest
/// failing point index.
template <class F>
std::vector<Complex> map_points(std::span<const Point> points, Policy policy, F&& f) {
    std::vector<Complex> out(points.size());
    std::exception_ptr first_error;
    std::int64_t first_bad = -1;
    const std::int64_t count = static_cast<std::int64_t>(points.size());
    const bool parallel = policy == Policy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
    (void)parallel;
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(points[static_cast<std::size_t>(i)]);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(colliq_map_points_error)
#endif
            {
                if (first_bad < 0 || i < first_bad) {
                    first_bad = i;
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) {
        detail::rethrow_with_point_index(first_error, static_cast<std::size_t>(first_bad));
    }
    return out;
}

} // namespace colliq
