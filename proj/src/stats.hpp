#pragma once

#include <cstdint>

#include "image.hpp"

namespace labtile {

/// Local statistics of the 8-neighborhood of a pixel (the pixel itself is
/// excluded from the sums; out-of-bounds neighbors are skipped and `count`
/// reflects only in-bounds ones, so interior pixels have count 8 and
/// corner/edge pixels of a >= 2x2 image have count 3 or 5).
struct NeighborhoodStats {
    double mean = 0.0;      // in [0, 255]
    double variance = 0.0;  // population form, tone^2 units, >= 0
    int count = 0;          // in [3, 8] for images >= 2x2
};

/// Divisor guard for the ratio denominators: a zero local mean (black
/// neighborhoods) would make them undefined, so the denominator is
/// max(mean, guard). One tone unit makes black regions maximally deviant.
inline constexpr double kMeanGuard = 1.0;

/// Throws UsageError for out-of-bounds (x, y) and UnsupportedError for
/// images smaller than 2x2.
NeighborhoodStats local_stats(const GrayImage& image, std::uint32_t x, std::uint32_t y);

/// Mean-deviation ratio |tone - mean| / max(mean, guard). Pixels whose ratio
/// stays within the threshold keep their tone.
double ratio_r1(double tone, double mean, double mean_guard = kMeanGuard);

/// Local-dispersion ratio sqrt(variance) / max(mean, guard). Large values
/// flag strong local gradients; such pixels are protected from replacement.
double ratio_r2(const NeighborhoodStats& stats, double mean_guard = kMeanGuard);

}  // namespace labtile
