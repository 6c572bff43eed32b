#include "renderer.hpp"

#include <string>

#include "errors.hpp"
#include "stats.hpp"

namespace labtile {

namespace {

void validate(const RenderParams& params) {
    if (!(params.t > 0.0)) {
        throw UsageError("threshold t must be > 0, got " + std::to_string(params.t));
    }
    if (!(params.v_threshold > 0.0)) {
        throw UsageError("v_threshold must be > 0, got " + std::to_string(params.v_threshold));
    }
    if (params.max_attempts < 1) {
        throw UsageError("max_attempts must be >= 1, got " + std::to_string(params.max_attempts));
    }
    if (params.passes < 0) {
        throw UsageError("passes must be >= 0, got " + std::to_string(params.passes));
    }
}

}  // namespace

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::kept_r1: return "kept_r1";
        case Outcome::protected_r2: return "protected_r2";
        case Outcome::replaced: return "replaced";
        case Outcome::exhausted: return "exhausted";
    }
    return "unknown";
}

PixelDecision process_pixel(GrayImage& image, std::uint32_t x, std::uint32_t y,
                            const RenderParams& params, const ToneIntervalTable& table,
                            RandomSource& rng) {
    const std::uint8_t tone = image.at(x, y);
    const NeighborhoodStats stats = local_stats(image, x, y);

    PixelDecision decision;
    decision.x = x;
    decision.y = y;
    decision.old_tone = tone;
    decision.new_tone = tone;
    decision.r1 = ratio_r1(tone, stats.mean);
    decision.r2 = ratio_r2(stats);

    if (decision.r2 > params.v_threshold) {
        decision.outcome = Outcome::protected_r2;
        return decision;
    }
    if (decision.r1 <= params.t) {
        decision.outcome = Outcome::kept_r1;
        return decision;
    }

    const ToneInterval& interval = table.interval(table.classify(tone));
    for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
        int candidate = sample_candidate(interval, rng);
        if (ratio_r1(candidate, stats.mean) <= params.t) {
            decision.outcome = Outcome::replaced;
            decision.attempts = attempt;
            decision.new_tone = static_cast<std::uint8_t>(candidate);
            image.set(x, y, decision.new_tone);
            return decision;
        }
    }
    decision.outcome = Outcome::exhausted;
    decision.attempts = params.max_attempts;
    return decision;
}

PassTrace render_pass(GrayImage& image, const RenderParams& params,
                      const ToneIntervalTable& table, RandomSource& rng,
                      std::uint32_t pass_index) {
    validate(params);
    if (image.width() < 2 || image.height() < 2) {
        throw UnsupportedError("rendering needs an image of at least 2x2, got " +
                               std::to_string(image.width()) + "x" +
                               std::to_string(image.height()));
    }
    PassTrace trace;
    trace.pass_index = pass_index;
    trace.width = image.width();
    trace.height = image.height();
    trace.decisions.reserve(image.size());
    for (std::uint32_t y = 0; y < image.height(); ++y) {
        for (std::uint32_t x = 0; x < image.width(); ++x) {
            trace.decisions.push_back(process_pixel(image, x, y, params, table, rng));
        }
    }
    return trace;
}

std::vector<PassTrace> render(GrayImage& image, const RenderParams& params,
                              const ToneIntervalTable& table) {
    validate(params);
    RandomSource rng(params.seed);
    std::vector<PassTrace> traces;
    traces.reserve(static_cast<std::size_t>(params.passes));
    // One continuous random stream across passes.
    for (int pass = 0; pass < params.passes; ++pass) {
        traces.push_back(render_pass(image, params, table, rng, static_cast<std::uint32_t>(pass)));
    }
    return traces;
}

}  // namespace labtile
