#pragma once

#include <cstdint>
#include <vector>

#include "image.hpp"
#include "random_source.hpp"
#include "tone_table.hpp"

namespace labtile {

struct RenderParams {
    double t = 0.12;           // mean-deviation threshold, > 0
    double v_threshold = 0.50; // dispersion gate threshold, > 0
    int max_attempts = 100;    // candidate draws per pixel, >= 1
    int passes = 1;            // full raster scans, >= 0
    std::uint64_t seed = 0;
};

enum class Outcome : std::uint8_t {
    kept_r1,       // tone already within the mean band, left alone
    protected_r2,  // dispersion gate tripped, replacement suppressed
    replaced,      // an in-band candidate was written
    exhausted,     // no candidate passed within max_attempts, left alone
};

/// What happened at one pixel. r1/r2 are the ratios of the pixel's tone at
/// visit time against its neighborhood at visit time; attempts counts
/// candidate draws (0 unless sampling ran).
struct PixelDecision {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    Outcome outcome = Outcome::kept_r1;
    double r1 = 0.0;
    double r2 = 0.0;
    int attempts = 0;
    std::uint8_t old_tone = 0;
    std::uint8_t new_tone = 0;
};

/// Decisions of one full scan, exactly width*height entries in row-major
/// visit order.
struct PassTrace {
    std::uint32_t pass_index = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<PixelDecision> decisions;
};

const char* outcome_name(Outcome outcome);

/// Decides one pixel against the current image state and applies the
/// replacement in place when one is accepted. Evaluation order: the
/// dispersion gate first, then the keep test, then up to max_attempts
/// candidate draws from the interval of the pixel's current tone (the
/// neighborhood mean is computed once; neighbors cannot change between
/// attempts). Consumes one unit draw per attempt and none otherwise.
PixelDecision process_pixel(GrayImage& image, std::uint32_t x, std::uint32_t y,
                            const RenderParams& params, const ToneIntervalTable& table,
                            RandomSource& rng);

/// One raster scan from the top-left corner, row-major, mutating the image
/// in place so later pixels see earlier replacements. Images smaller than
/// 2x2 are rejected (UnsupportedError).
PassTrace render_pass(GrayImage& image, const RenderParams& params,
                      const ToneIntervalTable& table, RandomSource& rng,
                      std::uint32_t pass_index);

/// Runs params.passes scans over one random stream seeded from params.seed,
/// returning one trace per pass. passes = 0 leaves the image untouched.
std::vector<PassTrace> render(GrayImage& image, const RenderParams& params,
                              const ToneIntervalTable& table);

}  // namespace labtile
