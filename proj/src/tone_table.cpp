#include "tone_table.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "errors.hpp"

namespace labtile {

ToneIntervalTable::ToneIntervalTable(std::vector<ToneInterval> intervals)
    : intervals_(std::move(intervals)) {
    if (intervals_.empty()) {
        throw UsageError("interval table must contain at least one interval");
    }
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const ToneInterval& iv = intervals_[i];
        auto in_range = [](int v) { return v >= 0 && v <= 255; };
        if (!in_range(iv.l_inf) || !in_range(iv.l_sup) || !in_range(iv.t_inf) ||
            !in_range(iv.t_sup)) {
            throw UsageError("interval " + std::to_string(i) +
                             ": all bounds must be in [0, 255]");
        }
        if (iv.l_inf >= iv.l_sup) {
            throw UsageError("interval " + std::to_string(i) + ": l_inf must be < l_sup, got [" +
                             std::to_string(iv.l_inf) + ", " + std::to_string(iv.l_sup) + ")");
        }
        if (iv.t_inf > iv.t_sup) {
            throw UsageError("interval " + std::to_string(i) + ": t_inf must be <= t_sup, got [" +
                             std::to_string(iv.t_inf) + ", " + std::to_string(iv.t_sup) + "]");
        }
        if (i + 1 < intervals_.size() && intervals_[i + 1].l_inf != iv.l_sup) {
            throw UsageError("intervals must be contiguous: interval " + std::to_string(i) +
                             " l_sup = " + std::to_string(iv.l_sup) + " but interval " +
                             std::to_string(i + 1) +
                             " l_inf = " + std::to_string(intervals_[i + 1].l_inf));
        }
    }
    if (intervals_.front().l_inf <= 0) {
        throw UsageError("first interval l_inf must be > 0, got " +
                         std::to_string(intervals_.front().l_inf));
    }
    if (intervals_.back().l_sup != 255) {
        throw UsageError("last interval l_sup must be 255, got " +
                         std::to_string(intervals_.back().l_sup));
    }
}

ToneIntervalTable ToneIntervalTable::default_table() {
    return ToneIntervalTable({
        {10, 92, 10, 92},
        {92, 174, 92, 174},
        {174, 255, 174, 255},
    });
}

std::size_t ToneIntervalTable::classify(int tone) const {
    for (std::size_t i = 0; i + 1 < intervals_.size(); ++i) {
        if (tone < intervals_[i].l_sup) return i;
    }
    return intervals_.size() - 1;
}

int sample_candidate_at(const ToneInterval& interval, double unit_draw) {
    double value = interval.t_inf + unit_draw * (interval.t_sup - interval.t_inf);
    long tone = std::lround(value);
    return tone < 0 ? 0 : tone > 255 ? 255 : static_cast<int>(tone);
}

int sample_candidate(const ToneInterval& interval, RandomSource& rng) {
    return sample_candidate_at(interval, rng.next_unit());
}

namespace {

int field(const nlohmann::json& obj, std::size_t index, const char* name, int fallback,
          bool required) {
    if (!obj.contains(name)) {
        if (required) {
            throw UsageError("interval " + std::to_string(index) + ": missing field '" + name +
                             "'");
        }
        return fallback;
    }
    const auto& v = obj.at(name);
    if (!v.is_number_integer()) {
        throw UsageError("interval " + std::to_string(index) + ": field '" + name +
                         "' must be an integer");
    }
    long long n = v.get<long long>();
    if (n < -1000000 || n > 1000000) {
        throw UsageError("interval " + std::to_string(index) + ": field '" + name +
                         "' out of range");
    }
    return static_cast<int>(n);
}

}  // namespace

ToneIntervalTable parse_table_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("interval table is not valid JSON: ") + e.what(),
                          e.byte > 0 ? e.byte - 1 : 0);
    }
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("intervals")) {
            throw UsageError("interval table object must contain an 'intervals' array");
        }
        list = &doc.at("intervals");
    }
    if (!list->is_array()) {
        throw UsageError("interval table must be a JSON array of interval objects");
    }
    std::vector<ToneInterval> intervals;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const auto& entry = (*list)[i];
        if (!entry.is_object()) {
            throw UsageError("interval " + std::to_string(i) + ": entry must be an object");
        }
        ToneInterval iv;
        iv.l_inf = field(entry, i, "l_inf", 0, true);
        iv.l_sup = field(entry, i, "l_sup", 0, true);
        iv.t_inf = field(entry, i, "t_inf", iv.l_inf, false);
        iv.t_sup = field(entry, i, "t_sup", iv.l_sup, false);
        intervals.push_back(iv);
    }
    return ToneIntervalTable(std::move(intervals));
}

ToneIntervalTable load_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open interval table file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table_json(buffer.str());
}

}  // namespace labtile
