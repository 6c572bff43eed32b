#include "doctest.h"

#include <random>
#include <string>

#include "errors.hpp"
#include "oracle.hpp"
#include "renderer.hpp"
#include "trace_io.hpp"

using labtile::GrayImage;
using labtile::Outcome;
using labtile::PassTrace;
using labtile::PixelDecision;
using labtile::RandomSource;
using labtile::render;
using labtile::render_pass;
using labtile::RenderParams;
using labtile::ToneIntervalTable;

namespace {

const ToneIntervalTable& table() {
    static ToneIntervalTable t = ToneIntervalTable::default_table();
    return t;
}

}  // namespace

TEST_CASE("process_pixel keeps a pixel that matches its flat neighborhood") {
    GrayImage img(3, 3, 50);
    RenderParams params;
    RandomSource rng(0);
    PixelDecision d = labtile::process_pixel(img, 1, 1, params, table(), rng);
    CHECK(d.outcome == Outcome::kept_r1);
    CHECK(d.r1 == 0.0);
    CHECK(d.attempts == 0);
    CHECK(d.new_tone == 50);
    CHECK(img.at(1, 1) == 50);
}

TEST_CASE("process_pixel protects pixels in high-dispersion dark neighborhoods") {
    // neighbors {0 x7, 80}: mean 10, variance 700, r2 = sqrt(700)/10 > 0.5
    GrayImage img(3, 3, 0);
    img.set(2, 2, 80);
    img.set(1, 1, 200);
    RenderParams params;
    RandomSource rng(0);
    PixelDecision d = labtile::process_pixel(img, 1, 1, params, table(), rng);
    CHECK(d.outcome == Outcome::protected_r2);
    CHECK(d.r2 > 0.5);
    CHECK(img.at(1, 1) == 200);
    // consumed no randomness
    RandomSource fresh(0);
    CHECK(rng.next_u64() == fresh.next_u64());
}

TEST_CASE("process_pixel exhausts when the band misses the tone's interval") {
    // center 255 over a flat 50 neighborhood: band is [44, 56] but candidates
    // come from [174, 255]
    GrayImage img = oracle::center_255_image();
    RenderParams params;
    RandomSource rng(7);
    PixelDecision d = labtile::process_pixel(img, 1, 1, params, table(), rng);
    CHECK(d.outcome == Outcome::exhausted);
    CHECK(d.attempts == params.max_attempts);
    CHECK(d.r2 == 0.0);
    CHECK(d.r1 == doctest::Approx(4.1));
    CHECK(img.at(1, 1) == 255);
}

TEST_CASE("uniform images are fixed points and every outcome is kept_r1") {
    for (std::uint8_t tone : {0, 1, 77, 255}) {
        GrayImage img(9, 6, tone);
        GrayImage before = img;
        RenderParams params;
        RandomSource rng(3);
        PassTrace trace = render_pass(img, params, table(), rng, 0);
        REQUIRE(img == before);
        for (const PixelDecision& d : trace.decisions) {
            REQUIRE(d.outcome == Outcome::kept_r1);
        }
    }
}

TEST_CASE("trace covers every pixel exactly once in row-major order") {
    std::mt19937 gen(11);
    GrayImage img = oracle::random_image(gen, 7, 5);
    RenderParams params;
    RandomSource rng(1);
    PassTrace trace = render_pass(img, params, table(), rng, 4);
    CHECK(trace.pass_index == 4);
    REQUIRE(trace.decisions.size() == 35);
    for (std::size_t i = 0; i < trace.decisions.size(); ++i) {
        REQUIRE(trace.decisions[i].x == i % 7);
        REQUIRE(trace.decisions[i].y == i / 7);
    }
}

TEST_CASE("the 3x3 center-255 construction is bit-identical under defaults") {
    GrayImage img = oracle::center_255_image();
    GrayImage before = img;
    RenderParams params;
    std::vector<PassTrace> traces = render(img, params, table());
    CHECK(img == before);
    // borders are all protected, the center runs out of attempts
    int protected_count = 0, exhausted_count = 0;
    for (const PixelDecision& d : traces[0].decisions) {
        protected_count += d.outcome == Outcome::protected_r2;
        exhausted_count += d.outcome == Outcome::exhausted;
    }
    CHECK(protected_count == 8);
    CHECK(exhausted_count == 1);
}

TEST_CASE("same image, params and seed render bit-identically") {
    std::mt19937 gen(12);
    GrayImage base = oracle::random_image(gen, 24, 18);
    RenderParams params;
    params.seed = 99;
    params.passes = 2;
    GrayImage a = base, b = base;
    std::vector<PassTrace> ta = render(a, params, table());
    std::vector<PassTrace> tb = render(b, params, table());
    CHECK(a == b);
    CHECK(labtile::format_trace(ta) == labtile::format_trace(tb));
}

TEST_CASE("zero passes is the identity") {
    std::mt19937 gen(13);
    GrayImage img = oracle::random_image(gen, 10, 10);
    GrayImage before = img;
    RenderParams params;
    params.passes = 0;
    std::vector<PassTrace> traces = render(img, params, table());
    CHECK(traces.empty());
    CHECK(img == before);
}

TEST_CASE("one render pass equals render with passes = 1") {
    std::mt19937 gen(14);
    GrayImage a = oracle::random_image(gen, 16, 16);
    GrayImage b = a;
    RenderParams params;
    params.seed = 5;
    std::vector<PassTrace> via_render = render(a, params, table());
    RandomSource rng(params.seed);
    PassTrace direct = render_pass(b, params, table(), rng, 0);
    CHECK(a == b);
    REQUIRE(via_render.size() == 1);
    CHECK(labtile::format_trace(via_render) == labtile::format_trace({direct}));
}

TEST_CASE("passes consume one continuing random stream") {
    std::mt19937 gen(19);
    GrayImage a = oracle::random_image(gen, 16, 16);
    GrayImage b = a;
    RenderParams params;
    params.passes = 2;
    params.seed = 33;
    std::vector<PassTrace> combined = render(a, params, table());
    RandomSource rng(params.seed);
    PassTrace first = render_pass(b, params, table(), rng, 0);
    PassTrace second = render_pass(b, params, table(), rng, 1);
    CHECK(a == b);
    CHECK(labtile::format_trace(combined) == labtile::format_trace({first, second}));
}

TEST_CASE("degenerate images are rejected, invalid params are usage errors") {
    GrayImage thin(1, 8, 0);
    RenderParams params;
    CHECK_THROWS_AS(render(thin, params, table()), labtile::UnsupportedError);

    GrayImage ok(4, 4, 0);
    RenderParams bad = params;
    bad.t = 0.0;
    CHECK_THROWS_AS(render(ok, bad, table()), labtile::UsageError);
    bad = params;
    bad.v_threshold = -1.0;
    CHECK_THROWS_AS(render(ok, bad, table()), labtile::UsageError);
    bad = params;
    bad.max_attempts = 0;
    CHECK_THROWS_AS(render(ok, bad, table()), labtile::UsageError);
    bad = params;
    bad.passes = -1;
    CHECK_THROWS_AS(render(ok, bad, table()), labtile::UsageError);

    // passes = 0 never scans, so even a 1x1 image passes through
    GrayImage dot(1, 1, 9);
    RenderParams none = params;
    none.passes = 0;
    CHECK_NOTHROW(render(dot, none, table()));
}

TEST_CASE("replaying fuzzed renders finds no violations") {
    std::mt19937 gen(15);
    for (int round = 0; round < 12; ++round) {
        GrayImage input = oracle::random_image(gen, 20, 20);
        RenderParams params;
        params.seed = gen();
        params.passes = 1 + static_cast<int>(gen() % 2);
        params.t = 0.05 + (gen() % 20) * 0.01;
        params.v_threshold = 0.3 + (gen() % 10) * 0.05;
        params.max_attempts = 1 + static_cast<int>(gen() % 100);
        GrayImage output = input;
        std::vector<PassTrace> traces = render(output, params, table());
        oracle::ReplayReport report =
            oracle::replay_trace(input, traces, params, table(), output);
        INFO(report.first);
        REQUIRE(report.ok());
    }
}

TEST_CASE("changing only the seed leaves jointly kept or protected pixels intact") {
    std::mt19937 gen(16);
    GrayImage input = oracle::random_image(gen, 32, 32);
    RenderParams pa;
    pa.seed = 101;
    RenderParams pb;
    pb.seed = 202;
    GrayImage a = input, b = input;
    std::vector<PassTrace> ta = render(a, pa, table());
    std::vector<PassTrace> tb = render(b, pb, table());
    bool any_checked = false;
    for (std::size_t i = 0; i < ta[0].decisions.size(); ++i) {
        const PixelDecision& da = ta[0].decisions[i];
        const PixelDecision& db = tb[0].decisions[i];
        auto untouched = [](Outcome o) {
            return o == Outcome::kept_r1 || o == Outcome::protected_r2;
        };
        if (untouched(da.outcome) && untouched(db.outcome)) {
            REQUIRE(a.at(da.x, da.y) == b.at(db.x, db.y));
            any_checked = true;
        }
    }
    CHECK(any_checked);
}

TEST_CASE("attempts never exceed max_attempts") {
    std::mt19937 gen(17);
    GrayImage img = oracle::random_image(gen, 24, 24);
    RenderParams params;
    params.max_attempts = 7;
    params.seed = 1;
    std::vector<PassTrace> traces = render(img, params, table());
    for (const PixelDecision& d : traces[0].decisions) {
        REQUIRE(d.attempts <= 7);
        if (d.outcome == Outcome::exhausted) REQUIRE(d.attempts == 7);
        if (d.outcome == Outcome::replaced) REQUIRE(d.attempts >= 1);
    }
}

TEST_CASE("trace text: golden output for a tiny render") {
    GrayImage img(2, 2, 50);
    RenderParams params;
    std::vector<PassTrace> traces = render(img, params, table());
    CHECK(labtile::format_trace(traces) ==
          "pass,x,y,outcome,r1,r2,attempts,old,new\n"
          "0,0,0,kept_r1,0,0,0,50,50\n"
          "0,1,0,kept_r1,0,0,0,50,50\n"
          "0,0,1,kept_r1,0,0,0,50,50\n"
          "0,1,1,kept_r1,0,0,0,50,50\n");
}

TEST_CASE("trace text parses back to the same decisions") {
    std::mt19937 gen(18);
    GrayImage img = oracle::random_image(gen, 12, 9);
    RenderParams params;
    params.passes = 2;
    params.seed = 8;
    std::vector<PassTrace> traces = render(img, params, table());
    std::string text = labtile::format_trace(traces);
    std::vector<PassTrace> parsed = labtile::parse_trace(text);
    REQUIRE(parsed.size() == traces.size());
    for (std::size_t p = 0; p < traces.size(); ++p) {
        REQUIRE(parsed[p].decisions.size() == traces[p].decisions.size());
        CHECK(parsed[p].width == traces[p].width);
        CHECK(parsed[p].height == traces[p].height);
        for (std::size_t i = 0; i < traces[p].decisions.size(); ++i) {
            const PixelDecision& want = traces[p].decisions[i];
            const PixelDecision& got = parsed[p].decisions[i];
            REQUIRE(got.x == want.x);
            REQUIRE(got.y == want.y);
            REQUIRE(got.outcome == want.outcome);
            REQUIRE(got.r1 == want.r1);  // exact: shortest round-trip encoding
            REQUIRE(got.r2 == want.r2);
            REQUIRE(got.attempts == want.attempts);
            REQUIRE(got.old_tone == want.old_tone);
            REQUIRE(got.new_tone == want.new_tone);
        }
    }
}

TEST_CASE("trace parser rejects malformed input") {
    CHECK_THROWS_AS(labtile::parse_trace("nonsense\n"), labtile::FormatError);
    CHECK_THROWS_AS(labtile::parse_trace("pass,x,y,outcome,r1,r2,attempts,old,new\n"
                                         "0,0,0,walked_away,0,0,0,50,50\n"),
                    labtile::FormatError);
    CHECK_THROWS_AS(labtile::parse_trace("pass,x,y,outcome,r1,r2,attempts,old,new\n"
                                         "0,0,0,kept_r1,0,0,0,50\n"),
                    labtile::FormatError);
}
