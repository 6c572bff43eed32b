#include "labtile.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "image_file.hpp"
#include "pgm.hpp"
#include "renderer.hpp"
#include "tone_table.hpp"
#include "trace_io.hpp"

// Thin translation layer: every handle wraps exactly one core object and
// every exception maps onto a status code plus a thread-local message.

struct labtile_image {
    labtile::GrayImage image;
};

struct labtile_table {
    labtile::ToneIntervalTable table;
};

struct labtile_trace {
    std::vector<labtile::PassTrace> passes;
};

struct labtile_mask {
    labtile::ChangeMask mask;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
labtile_status guarded(Fn&& fn) {
    try {
        fn();
        return LABTILE_OK;
    } catch (const labtile::UsageError& e) {
        set_error(e.what());
        return LABTILE_ERR_USAGE;
    } catch (const labtile::FormatError& e) {
        set_error(e.what());
        return LABTILE_ERR_FORMAT;
    } catch (const labtile::UnsupportedError& e) {
        set_error(e.what());
        return LABTILE_ERR_UNSUPPORTED;
    } catch (const labtile::IoError& e) {
        set_error(e.what());
        return LABTILE_ERR_IO;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return LABTILE_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return LABTILE_ERR_USAGE;
    }
}

labtile_status require(bool ok, const char* message) {
    if (!ok) {
        set_error(message);
        return LABTILE_ERR_USAGE;
    }
    return LABTILE_OK;
}

}  // namespace

extern "C" {

const char* labtile_last_error(void) { return g_last_error.c_str(); }

void labtile_params_init(labtile_params* params) {
    if (params == nullptr) return;
    labtile::RenderParams defaults;
    params->t = defaults.t;
    params->v_threshold = defaults.v_threshold;
    params->max_attempts = defaults.max_attempts;
    params->passes = defaults.passes;
    params->seed = defaults.seed;
}

/* ---- images ------------------------------------------------------------ */

labtile_status labtile_image_new(uint32_t width, uint32_t height, uint8_t fill,
                                 labtile_image** out) {
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = new labtile_image{labtile::GrayImage(width, height, fill)}; });
}

labtile_status labtile_image_from_gray(uint32_t width, uint32_t height, const uint8_t* pixels,
                                       labtile_image** out) {
    if (auto s = require(out != nullptr && pixels != nullptr, "pixels and out must not be null"))
        return s;
    return guarded([&] {
        std::vector<std::uint8_t> data(pixels,
                                       pixels + static_cast<std::size_t>(width) * height);
        *out = new labtile_image{labtile::GrayImage(width, height, std::move(data))};
    });
}

labtile_status labtile_image_from_rgb(uint32_t width, uint32_t height, const uint8_t* rgb,
                                      labtile_image** out) {
    if (auto s = require(out != nullptr && rgb != nullptr, "rgb and out must not be null"))
        return s;
    return guarded([&] {
        std::span<const std::uint8_t> view(rgb, static_cast<std::size_t>(width) * height * 3);
        *out = new labtile_image{labtile::to_grayscale(width, height, view)};
    });
}

labtile_status labtile_image_clone(const labtile_image* image, labtile_image** out) {
    if (auto s = require(image != nullptr && out != nullptr, "image and out must not be null"))
        return s;
    return guarded([&] { *out = new labtile_image{image->image}; });
}

labtile_status labtile_image_read_file(const char* path, labtile_image** out) {
    if (auto s = require(path != nullptr && out != nullptr, "path and out must not be null"))
        return s;
    return guarded([&] { *out = new labtile_image{labtile::read_image_file(path)}; });
}

labtile_status labtile_image_write_file(const labtile_image* image, const char* path) {
    if (auto s = require(image != nullptr && path != nullptr, "image and path must not be null"))
        return s;
    return guarded([&] { labtile::write_image_file(image->image, path); });
}

labtile_status labtile_image_decode_pgm(const uint8_t* bytes, size_t size, labtile_image** out) {
    if (auto s = require(bytes != nullptr && out != nullptr, "bytes and out must not be null"))
        return s;
    return guarded(
        [&] { *out = new labtile_image{labtile::decode_pgm(std::span(bytes, size))}; });
}

labtile_status labtile_image_encode_pgm(const labtile_image* image, uint8_t** bytes,
                                        size_t* size) {
    if (auto s = require(image != nullptr && bytes != nullptr && size != nullptr,
                         "image, bytes and size must not be null"))
        return s;
    return guarded([&] {
        std::vector<std::uint8_t> encoded = labtile::encode_pgm(image->image);
        auto* buffer = new std::uint8_t[encoded.size()];
        std::memcpy(buffer, encoded.data(), encoded.size());
        *bytes = buffer;
        *size = encoded.size();
    });
}

uint32_t labtile_image_width(const labtile_image* image) {
    return image != nullptr ? image->image.width() : 0;
}

uint32_t labtile_image_height(const labtile_image* image) {
    return image != nullptr ? image->image.height() : 0;
}

const uint8_t* labtile_image_pixels(const labtile_image* image) {
    return image != nullptr ? image->image.pixels().data() : nullptr;
}

void labtile_image_free(labtile_image* image) { delete image; }

void labtile_buffer_free(void* bytes) { delete[] static_cast<std::uint8_t*>(bytes); }

/* ---- tone interval tables ---------------------------------------------- */

labtile_status labtile_table_default(labtile_table** out) {
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = new labtile_table{labtile::ToneIntervalTable::default_table()}; });
}

labtile_status labtile_table_from_json(const char* json_text, labtile_table** out) {
    if (auto s = require(json_text != nullptr && out != nullptr,
                         "json_text and out must not be null"))
        return s;
    return guarded([&] { *out = new labtile_table{labtile::parse_table_json(json_text)}; });
}

labtile_status labtile_table_read_file(const char* path, labtile_table** out) {
    if (auto s = require(path != nullptr && out != nullptr, "path and out must not be null"))
        return s;
    return guarded([&] { *out = new labtile_table{labtile::load_table_file(path)}; });
}

size_t labtile_table_size(const labtile_table* table) {
    return table != nullptr ? table->table.size() : 0;
}

labtile_status labtile_table_interval(const labtile_table* table, size_t index, int32_t* l_inf,
                                      int32_t* l_sup, int32_t* t_inf, int32_t* t_sup) {
    if (auto s = require(table != nullptr, "table must not be null")) return s;
    if (auto s = require(index < table->table.size(), "interval index out of range")) return s;
    const labtile::ToneInterval& iv = table->table.interval(index);
    if (l_inf != nullptr) *l_inf = iv.l_inf;
    if (l_sup != nullptr) *l_sup = iv.l_sup;
    if (t_inf != nullptr) *t_inf = iv.t_inf;
    if (t_sup != nullptr) *t_sup = iv.t_sup;
    return LABTILE_OK;
}

size_t labtile_table_classify(const labtile_table* table, uint8_t tone) {
    return table != nullptr ? table->table.classify(tone) : 0;
}

void labtile_table_free(labtile_table* table) { delete table; }

/* ---- rendering ---------------------------------------------------------- */

labtile_status labtile_render(labtile_image* image, const labtile_params* params,
                              const labtile_table* table, labtile_trace** out_trace) {
    if (auto s = require(image != nullptr && params != nullptr,
                         "image and params must not be null"))
        return s;
    return guarded([&] {
        labtile::RenderParams core;
        core.t = params->t;
        core.v_threshold = params->v_threshold;
        core.max_attempts = params->max_attempts;
        core.passes = params->passes;
        core.seed = params->seed;
        labtile::ToneIntervalTable effective =
            table != nullptr ? table->table : labtile::ToneIntervalTable::default_table();
        std::vector<labtile::PassTrace> traces = labtile::render(image->image, core, effective);
        if (out_trace != nullptr) {
            *out_trace = new labtile_trace{std::move(traces)};
        }
    });
}

/* ---- traces -------------------------------------------------------------- */

uint32_t labtile_trace_passes(const labtile_trace* trace) {
    return trace != nullptr ? static_cast<uint32_t>(trace->passes.size()) : 0;
}

size_t labtile_trace_size(const labtile_trace* trace, uint32_t pass) {
    if (trace == nullptr || pass >= trace->passes.size()) return 0;
    return trace->passes[pass].decisions.size();
}

labtile_status labtile_trace_decision(const labtile_trace* trace, uint32_t pass, size_t index,
                                      labtile_decision* out) {
    if (auto s = require(trace != nullptr && out != nullptr, "trace and out must not be null"))
        return s;
    if (auto s = require(pass < trace->passes.size(), "pass index out of range")) return s;
    const auto& decisions = trace->passes[pass].decisions;
    if (auto s = require(index < decisions.size(), "decision index out of range")) return s;
    const labtile::PixelDecision& d = decisions[index];
    out->x = d.x;
    out->y = d.y;
    out->outcome = static_cast<int32_t>(d.outcome);
    out->r1 = d.r1;
    out->r2 = d.r2;
    out->attempts = d.attempts;
    out->old_tone = d.old_tone;
    out->new_tone = d.new_tone;
    return LABTILE_OK;
}

labtile_status labtile_trace_outcome_counts(const labtile_trace* trace, uint32_t pass,
                                            uint64_t counts[4]) {
    if (auto s = require(trace != nullptr && counts != nullptr,
                         "trace and counts must not be null"))
        return s;
    if (auto s = require(pass < trace->passes.size(), "pass index out of range")) return s;
    counts[0] = counts[1] = counts[2] = counts[3] = 0;
    for (const labtile::PixelDecision& d : trace->passes[pass].decisions) {
        counts[static_cast<int>(d.outcome)]++;
    }
    return LABTILE_OK;
}

labtile_status labtile_trace_write_file(const labtile_trace* trace, const char* path) {
    if (auto s = require(trace != nullptr && path != nullptr, "trace and path must not be null"))
        return s;
    return guarded([&] { labtile::write_trace_file(trace->passes, path); });
}

labtile_status labtile_trace_edge_concentration(const labtile_trace* trace, uint32_t pass,
                                                const uint32_t* edge_xy, size_t edge_count,
                                                uint32_t radius, double* near_fraction,
                                                double* far_fraction) {
    if (auto s = require(trace != nullptr && edge_xy != nullptr && near_fraction != nullptr &&
                             far_fraction != nullptr,
                         "trace, edge_xy and fraction outputs must not be null"))
        return s;
    if (auto s = require(pass < trace->passes.size(), "pass index out of range")) return s;
    return guarded([&] {
        std::vector<labtile::PixelCoord> edges;
        edges.reserve(edge_count);
        for (size_t i = 0; i < edge_count; ++i) {
            edges.emplace_back(edge_xy[2 * i], edge_xy[2 * i + 1]);
        }
        labtile::EdgeConcentration result =
            labtile::edge_concentration(trace->passes[pass], edges, radius);
        *near_fraction = result.near_fraction;
        *far_fraction = result.far_fraction;
    });
}

void labtile_trace_free(labtile_trace* trace) { delete trace; }

/* ---- change masks -------------------------------------------------------- */

labtile_status labtile_mask_diff(const labtile_image* before, const labtile_image* after,
                                 labtile_mask** out) {
    if (auto s = require(before != nullptr && after != nullptr && out != nullptr,
                         "before, after and out must not be null"))
        return s;
    return guarded(
        [&] { *out = new labtile_mask{labtile::change_mask(before->image, after->image)}; });
}

uint64_t labtile_mask_popcount(const labtile_mask* mask) {
    return mask != nullptr ? mask->mask.popcount() : 0;
}

labtile_status labtile_mask_distance(const labtile_mask* a, const labtile_mask* b,
                                     uint64_t* out) {
    if (auto s = require(a != nullptr && b != nullptr && out != nullptr,
                         "masks and out must not be null"))
        return s;
    return guarded([&] { *out = labtile::mask_distance(a->mask, b->mask); });
}

void labtile_mask_free(labtile_mask* mask) { delete mask; }

} /* extern "C" */
