#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "random_source.hpp"

namespace labtile {

/// One classification range [l_inf, l_sup) with its sampling target range
/// [t_inf, t_sup]. Replacement candidates for a tone classified here are
/// drawn uniformly from the target range.
struct ToneInterval {
    int l_inf = 0;
    int l_sup = 0;
    int t_inf = 0;
    int t_sup = 0;

    bool operator==(const ToneInterval&) const = default;
};

/// Ordered, contiguous cover of the upper tone range:
///   - interval i's l_sup equals interval i+1's l_inf
///   - the first l_inf is > 0, the last l_sup is 255
///   - per interval: l_inf < l_sup, t_inf <= t_sup, all in [0, 255]
/// Immutable after construction; safe to share between threads.
class ToneIntervalTable {
public:
    /// Validates the invariants above; UsageError messages name the violated
    /// invariant.
    explicit ToneIntervalTable(std::vector<ToneInterval> intervals);

    /// Three equal-width (to within one tone) intervals [10,92) [92,174)
    /// [174,255], targets coincident with the classification bounds.
    static ToneIntervalTable default_table();

    /// Index of the interval whose [l_inf, l_sup) contains the tone
    /// (lower-inclusive; the last interval is closed above). Tones below the
    /// first l_inf classify to index 0, so classification is total on
    /// [0, 255].
    std::size_t classify(int tone) const;

    std::size_t size() const { return intervals_.size(); }
    const ToneInterval& interval(std::size_t i) const { return intervals_[i]; }
    const std::vector<ToneInterval>& intervals() const { return intervals_; }

    bool operator==(const ToneIntervalTable&) const = default;

private:
    std::vector<ToneInterval> intervals_;
};

/// Candidate tone t_inf + R * (t_sup - t_inf), rounded to the nearest
/// integer tone and clamped to [0, 255], for a given unit draw R.
int sample_candidate_at(const ToneInterval& interval, double unit_draw);

/// Draws R from the source (advancing it exactly once) and maps it into the
/// interval's target range.
int sample_candidate(const ToneInterval& interval, RandomSource& rng);

/// Parses a JSON interval table: either a top-level array of
/// {l_inf, l_sup, t_inf, t_sup} objects or {"intervals": [...]}; t_inf/t_sup
/// default to l_inf/l_sup when omitted. Throws FormatError for malformed
/// JSON and UsageError (naming the invariant) for invalid tables.
ToneIntervalTable parse_table_json(std::string_view text);

/// parse_table_json over the contents of a file; IoError if unreadable.
ToneIntervalTable load_table_file(const std::string& path);

}  // namespace labtile
