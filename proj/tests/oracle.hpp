// Test-side oracles, written independently of the library internals they
// check: a brute-force neighborhood-statistics reference and a trace
// replayer that reconstructs the scan decision by decision.
#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "image.hpp"
#include "renderer.hpp"
#include "tone_table.hpp"

namespace oracle {

struct BruteStats {
    double mean = 0.0;
    double variance = 0.0;
    int count = 0;
};

inline BruteStats brute_stats(const labtile::GrayImage& img, std::int64_t x, std::int64_t y) {
    BruteStats s;
    double sum = 0.0;
    for (std::int64_t ny = y - 1; ny <= y + 1; ++ny) {
        for (std::int64_t nx = x - 1; nx <= x + 1; ++nx) {
            if (nx == x && ny == y) continue;
            if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height()) continue;
            sum += img.at(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny));
            s.count += 1;
        }
    }
    s.mean = sum / s.count;
    double sq = 0.0;
    for (std::int64_t ny = y - 1; ny <= y + 1; ++ny) {
        for (std::int64_t nx = x - 1; nx <= x + 1; ++nx) {
            if (nx == x && ny == y) continue;
            if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height()) continue;
            double d = img.at(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny)) -
                       s.mean;
            sq += d * d;
        }
    }
    s.variance = sq / s.count;
    return s;
}

inline double brute_r1(double tone, double mean) {
    return std::fabs(tone - mean) / (mean > 1.0 ? mean : 1.0);
}

inline double brute_r2(const BruteStats& s) {
    return std::sqrt(s.variance) / (s.mean > 1.0 ? s.mean : 1.0);
}

struct ReplayReport {
    std::size_t violations = 0;
    std::string first;

    void flag(const std::string& message) {
        if (violations == 0) first = message;
        ++violations;
    }
    bool ok() const { return violations == 0; }
};

// Reconstructs the raster scan from the trace and checks every decision
// against recomputed statistics. `expected_output` is the image the render
// produced; the reconstruction must land on it exactly.
inline ReplayReport replay_trace(const labtile::GrayImage& input,
                                 const std::vector<labtile::PassTrace>& traces,
                                 const labtile::RenderParams& params,
                                 const labtile::ToneIntervalTable& table,
                                 const labtile::GrayImage& expected_output) {
    using labtile::Outcome;
    ReplayReport report;
    labtile::GrayImage img = input;

    auto where = [](const labtile::PixelDecision& d, std::uint32_t pass) {
        std::ostringstream out;
        out << "pass " << pass << " pixel (" << d.x << "," << d.y << "): ";
        return out.str();
    };

    for (const labtile::PassTrace& pass : traces) {
        if (pass.decisions.size() != static_cast<std::size_t>(img.width()) * img.height()) {
            report.flag("pass " + std::to_string(pass.pass_index) + ": trace has " +
                        std::to_string(pass.decisions.size()) + " decisions");
            return report;
        }
        std::size_t i = 0;
        for (const labtile::PixelDecision& d : pass.decisions) {
            std::uint32_t expect_x = static_cast<std::uint32_t>(i % img.width());
            std::uint32_t expect_y = static_cast<std::uint32_t>(i / img.width());
            ++i;
            if (d.x != expect_x || d.y != expect_y) {
                report.flag(where(d, pass.pass_index) + "out of scan order");
                continue;
            }
            if (d.old_tone != img.at(d.x, d.y)) {
                report.flag(where(d, pass.pass_index) + "old_tone does not match state");
                continue;
            }
            BruteStats stats = brute_stats(img, d.x, d.y);
            double r1 = brute_r1(d.old_tone, stats.mean);
            double r2 = brute_r2(stats);
            if (std::fabs(r1 - d.r1) > 1e-12 || std::fabs(r2 - d.r2) > 1e-12) {
                report.flag(where(d, pass.pass_index) + "recorded ratios do not match");
            }
            switch (d.outcome) {
                case Outcome::protected_r2:
                    if (!(r2 > params.v_threshold)) {
                        report.flag(where(d, pass.pass_index) + "protected but r2 <= threshold");
                    }
                    if (d.new_tone != d.old_tone || d.attempts != 0) {
                        report.flag(where(d, pass.pass_index) + "protected pixel modified");
                    }
                    break;
                case Outcome::kept_r1:
                    if (r2 > params.v_threshold || !(r1 <= params.t)) {
                        report.flag(where(d, pass.pass_index) + "kept but gates disagree");
                    }
                    if (d.new_tone != d.old_tone || d.attempts != 0) {
                        report.flag(where(d, pass.pass_index) + "kept pixel modified");
                    }
                    break;
                case Outcome::replaced: {
                    if (r2 > params.v_threshold || r1 <= params.t) {
                        report.flag(where(d, pass.pass_index) + "replaced but gates disagree");
                    }
                    const labtile::ToneInterval& iv = table.interval(table.classify(d.old_tone));
                    if (d.new_tone < iv.t_inf || d.new_tone > iv.t_sup) {
                        report.flag(where(d, pass.pass_index) + "new tone outside target range");
                    }
                    if (!(brute_r1(d.new_tone, stats.mean) <= params.t)) {
                        report.flag(where(d, pass.pass_index) + "new tone outside the t band");
                    }
                    if (d.attempts < 1 || d.attempts > params.max_attempts) {
                        report.flag(where(d, pass.pass_index) + "attempt count out of range");
                    }
                    break;
                }
                case Outcome::exhausted:
                    if (r2 > params.v_threshold || r1 <= params.t) {
                        report.flag(where(d, pass.pass_index) + "exhausted but gates disagree");
                    }
                    if (d.attempts != params.max_attempts) {
                        report.flag(where(d, pass.pass_index) + "exhausted below max_attempts");
                    }
                    if (d.new_tone != d.old_tone) {
                        report.flag(where(d, pass.pass_index) + "exhausted pixel modified");
                    }
                    break;
            }
            img.set(d.x, d.y, d.new_tone);
        }
    }
    if (!(img == expected_output)) {
        report.flag("reconstructed image does not match the rendered output");
    }
    return report;
}

// Deterministic fuzz helpers. mt19937 raw output is pinned by the C++
// standard, so these are stable everywhere.
inline labtile::GrayImage random_image(std::mt19937& gen, std::uint32_t w, std::uint32_t h) {
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
    for (auto& p : pixels) p = static_cast<std::uint8_t>(gen() & 0xFF);
    return labtile::GrayImage(w, h, std::move(pixels));
}

inline labtile::GrayImage random_image_palette(std::mt19937& gen, std::uint32_t w,
                                               std::uint32_t h,
                                               const std::vector<std::uint8_t>& palette) {
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
    for (auto& p : pixels) p = palette[gen() % palette.size()];
    return labtile::GrayImage(w, h, std::move(pixels));
}

inline labtile::GrayImage center_255_image() {
    labtile::GrayImage img(3, 3, 50);
    img.set(1, 1, 255);
    return img;
}

inline labtile::GrayImage step_image(std::uint32_t w, std::uint32_t h, std::uint8_t left,
                                     std::uint8_t right) {
    labtile::GrayImage img(w, h, left);
    for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = w / 2; x < w; ++x) img.set(x, y, right);
    }
    return img;
}

}  // namespace oracle
