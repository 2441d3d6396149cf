// Times the serial reference grid evaluation against the OpenMP kernel on a
// workload large enough to matter, and checks the two agree bitwise.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "colliq/builders.hpp"
#include "colliq/colligation.hpp"

using namespace colliq;

namespace {

double run(const Colligation& v, const std::vector<Point>& points, Policy policy,
           std::vector<Complex>& out) {
    const auto t0 = std::chrono::high_resolution_clock::now();
    out = transfer_values(v, points, policy);
    const auto t1 = std::chrono::high_resolution_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t num_points = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
    const std::size_t block_dim = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 16;

    const SpacePartition partition{{block_dim, block_dim, block_dim}, std::nullopt};
    const Colligation v = random_isometric_colligation(partition, kDefaultSeed);
    const std::vector<Point> points = sample_polydisc(partition.count(), num_points, kDefaultSeed + 1);

    std::vector<Complex> serial_values;
    std::vector<Complex> parallel_values;
    // Warm-up evaluation so both timed runs see hot caches.
    run(v, points, Policy::serial, serial_values);

    const double serial_ms = run(v, points, Policy::serial, serial_values);
    const double parallel_ms = run(v, points, Policy::parallel, parallel_values);

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < serial_values.size(); ++i) {
        if (serial_values[i] != parallel_values[i]) {
            ++mismatches;
        }
    }

    std::printf("points            %zu\n", num_points);
    std::printf("state dimension   %zu\n", partition.total());
    std::printf("serial            %.2f ms\n", serial_ms);
    std::printf("parallel          %.2f ms\n", parallel_ms);
    std::printf("speedup           %.2fx\n", serial_ms / parallel_ms);
    std::printf("mismatches        %zu\n", mismatches);
    return mismatches == 0 ? 0 : 1;
}
