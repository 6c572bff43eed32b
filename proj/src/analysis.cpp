#include "analysis.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace labtile {

std::uint64_t ChangeMask::popcount() const {
    std::uint64_t n = 0;
    for (std::uint8_t b : bits_) n += b;
    return n;
}

ChangeMask change_mask(const GrayImage& before, const GrayImage& after) {
    if (before.width() != after.width() || before.height() != after.height()) {
        throw UsageError("change_mask dimension mismatch: " + std::to_string(before.width()) +
                         "x" + std::to_string(before.height()) + " vs " +
                         std::to_string(after.width()) + "x" + std::to_string(after.height()));
    }
    ChangeMask mask(before.width(), before.height());
    for (std::uint32_t y = 0; y < before.height(); ++y) {
        for (std::uint32_t x = 0; x < before.width(); ++x) {
            mask.set(x, y, before.at(x, y) != after.at(x, y));
        }
    }
    return mask;
}

std::uint64_t mask_distance(const ChangeMask& a, const ChangeMask& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw UsageError("mask_distance dimension mismatch: " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
    }
    std::uint64_t distance = 0;
    for (std::uint32_t y = 0; y < a.height(); ++y) {
        for (std::uint32_t x = 0; x < a.width(); ++x) {
            if (a.test(x, y) != b.test(x, y)) ++distance;
        }
    }
    return distance;
}

EdgeConcentration edge_concentration(const PassTrace& trace, std::span<const PixelCoord> edge_set,
                                     std::uint32_t radius) {
    if (edge_set.empty()) {
        throw UsageError("edge set must not be empty");
    }
    const std::uint32_t w = trace.width;
    const std::uint32_t h = trace.height;
    std::vector<std::uint8_t> near(static_cast<std::size_t>(w) * h, 0);
    for (const auto& [ex, ey] : edge_set) {
        if (ex >= w || ey >= h) {
            throw UsageError("edge coordinate (" + std::to_string(ex) + ", " +
                             std::to_string(ey) + ") outside trace dimensions " +
                             std::to_string(w) + "x" + std::to_string(h));
        }
        // Chebyshev ball = axis-aligned square around the edge pixel.
        std::uint32_t x0 = ex > radius ? ex - radius : 0;
        std::uint32_t y0 = ey > radius ? ey - radius : 0;
        std::uint32_t x1 = std::min(w - 1, ex + radius);
        std::uint32_t y1 = std::min(h - 1, ey + radius);
        for (std::uint32_t y = y0; y <= y1; ++y) {
            for (std::uint32_t x = x0; x <= x1; ++x) {
                near[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }

    std::uint64_t near_total = 0, near_protected = 0;
    std::uint64_t far_total = 0, far_protected = 0;
    for (const PixelDecision& d : trace.decisions) {
        bool is_near = near[static_cast<std::size_t>(d.y) * w + d.x] != 0;
        bool is_protected = d.outcome == Outcome::protected_r2;
        if (is_near) {
            ++near_total;
            near_protected += is_protected;
        } else {
            ++far_total;
            far_protected += is_protected;
        }
    }
    EdgeConcentration result;
    if (near_total > 0) result.near_fraction = static_cast<double>(near_protected) / near_total;
    if (far_total > 0) result.far_fraction = static_cast<double>(far_protected) / far_total;
    return result;
}

}  // namespace labtile
