#include "stats.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace labtile {

NeighborhoodStats local_stats(const GrayImage& image, std::uint32_t x, std::uint32_t y) {
    if (image.width() < 2 || image.height() < 2) {
        throw UnsupportedError("local statistics need an image of at least 2x2, got " +
                               std::to_string(image.width()) + "x" +
                               std::to_string(image.height()));
    }
    if (!image.in_bounds(x, y)) {
        throw UsageError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") outside image " + std::to_string(image.width()) + "x" +
                         std::to_string(image.height()));
    }

    // Gather in row-major neighbor order so the summation order (and thus the
    // floating-point result) is fixed.
    double values[8];
    int n = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            std::int64_t nx = static_cast<std::int64_t>(x) + dx;
            std::int64_t ny = static_cast<std::int64_t>(y) + dy;
            if (nx < 0 || ny < 0 || nx >= image.width() || ny >= image.height()) continue;
            values[n++] = image.at(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny));
        }
    }

    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += values[i];
    double mean = sum / n;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = values[i] - mean;
        sq += d * d;
    }
    return NeighborhoodStats{mean, sq / n, n};
}

double ratio_r1(double tone, double mean, double mean_guard) {
    return std::abs(tone - mean) / std::max(mean, mean_guard);
}

double ratio_r2(const NeighborhoodStats& stats, double mean_guard) {
    return std::sqrt(stats.variance) / std::max(stats.mean, mean_guard);
}

}  // namespace labtile
