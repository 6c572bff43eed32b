// labtile CLI: renders images with the labyrinthine-tiling filter, runs
// parameter sweeps, and emits decision traces and metrics. Talks to the
// library exclusively through the C API in labtile.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "labtile.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;  // output or internal failure
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;  // missing, malformed or unsupported input

using json = nlohmann::json;

struct ImageDeleter {
    void operator()(labtile_image* p) const { labtile_image_free(p); }
};
struct TableDeleter {
    void operator()(labtile_table* p) const { labtile_table_free(p); }
};
struct TraceDeleter {
    void operator()(labtile_trace* p) const { labtile_trace_free(p); }
};
struct MaskDeleter {
    void operator()(labtile_mask* p) const { labtile_mask_free(p); }
};

using ImagePtr = std::unique_ptr<labtile_image, ImageDeleter>;
using TablePtr = std::unique_ptr<labtile_table, TableDeleter>;
using TracePtr = std::unique_ptr<labtile_trace, TraceDeleter>;
using MaskPtr = std::unique_ptr<labtile_mask, MaskDeleter>;

[[noreturn]] void die(int code, const std::string& message) {
    std::cerr << "labtile: " << message << "\n";
    std::exit(code);
}

void check_input(labtile_status status, const std::string& context) {
    if (status == LABTILE_OK) return;
    die(status == LABTILE_ERR_USAGE ? kExitUsage : kExitInput,
        context + ": " + labtile_last_error());
}

void check_output(labtile_status status, const std::string& context) {
    if (status == LABTILE_OK) return;
    die(kExitOther, context + ": " + labtile_last_error());
}

struct SweepSpec {
    std::string param;                 // "t" or "v_thresh"
    std::vector<std::string> tokens;   // values exactly as typed
    std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec spec;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
        die(kExitUsage, "--sweep expects PARAM=v1,v2,... got '" + text + "'");
    }
    spec.param = text.substr(0, eq);
    if (spec.param == "v-threshold" || spec.param == "v_threshold") spec.param = "v_thresh";
    if (spec.param != "t" && spec.param != "v_thresh") {
        die(kExitUsage, "--sweep parameter must be 't' or 'v_thresh', got '" + spec.param + "'");
    }
    std::stringstream list(text.substr(eq + 1));
    std::string token;
    while (std::getline(list, token, ',')) {
        if (token.empty()) continue;
        try {
            std::size_t used = 0;
            double value = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            if (!(value > 0.0)) {
                die(kExitUsage, "--sweep values must be > 0, got '" + token + "'");
            }
            spec.tokens.push_back(token);
            spec.values.push_back(value);
        } catch (const std::exception&) {
            die(kExitUsage, "--sweep value '" + token + "' is not a number");
        }
    }
    if (spec.values.empty()) {
        die(kExitUsage, "--sweep needs at least one value");
    }
    return spec;
}

// out.pgm + ("v_thresh", "0.47") -> out_v_thresh_0.47.pgm
std::string suffixed_path(const std::string& path, const std::string& param,
                          const std::string& token) {
    std::size_t dot = path.find_last_of('.');
    std::size_t slash = path.find_last_of("/\\");
    bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    std::string stem = has_ext ? path.substr(0, dot) : path;
    std::string ext = has_ext ? path.substr(dot) : "";
    return stem + "_" + param + "_" + token + ext;
}

std::vector<std::uint32_t> load_edge_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitInput, "cannot open edge-set file: " + path);
    std::vector<std::uint32_t> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        long long x, y;
        if (!(fields >> x)) continue;  // blank or comment-only line
        if (!(fields >> y) || x < 0 || y < 0) {
            die(kExitInput, "edge-set file " + path + " line " + std::to_string(line_no) +
                                ": expected 'x y' with nonnegative integers");
        }
        long long extra;
        if (fields >> extra) {
            die(kExitInput, "edge-set file " + path + " line " + std::to_string(line_no) +
                                ": expected exactly two integers");
        }
        pairs.push_back(static_cast<std::uint32_t>(x));
        pairs.push_back(static_cast<std::uint32_t>(y));
    }
    if (pairs.empty()) die(kExitInput, "edge-set file " + path + " contains no coordinates");
    return pairs;
}

json params_json(const labtile_params& params) {
    return json{{"t", params.t},
                {"v_threshold", params.v_threshold},
                {"max_attempts", params.max_attempts},
                {"passes", params.passes},
                {"seed", params.seed}};
}

json intervals_json(const labtile_table* table) {
    json list = json::array();
    for (std::size_t i = 0; i < labtile_table_size(table); ++i) {
        int32_t l_inf, l_sup, t_inf, t_sup;
        labtile_table_interval(table, i, &l_inf, &l_sup, &t_inf, &t_sup);
        list.push_back(json{
            {"l_inf", l_inf}, {"l_sup", l_sup}, {"t_inf", t_inf}, {"t_sup", t_sup}});
    }
    return list;
}

struct CellResult {
    json metrics;
};

CellResult run_cell(const labtile_image* input, const labtile_params& params,
                    const labtile_table* table, const std::string& output_path,
                    const std::optional<std::string>& trace_path,
                    const std::vector<std::uint32_t>& edge_pairs, std::uint32_t edge_radius,
                    bool want_metrics) {
    labtile_image* working_raw = nullptr;
    check_input(labtile_image_clone(input, &working_raw), "cloning input");
    ImagePtr working(working_raw);

    labtile_trace* trace_raw = nullptr;
    bool need_trace = trace_path.has_value() || want_metrics;
    check_input(labtile_render(working.get(), &params, table, need_trace ? &trace_raw : nullptr),
                "rendering");
    TracePtr trace(trace_raw);

    check_output(labtile_image_write_file(working.get(), output_path.c_str()),
                 "writing " + output_path);
    if (trace_path) {
        check_output(labtile_trace_write_file(trace.get(), trace_path->c_str()),
                     "writing " + *trace_path);
    }

    CellResult result;
    if (!want_metrics) return result;

    json cell;
    cell["output"] = output_path;
    cell["params"] = params_json(params);

    json outcomes = json::array();
    for (std::uint32_t pass = 0; pass < labtile_trace_passes(trace.get()); ++pass) {
        std::uint64_t counts[4] = {0, 0, 0, 0};
        labtile_trace_outcome_counts(trace.get(), pass, counts);
        outcomes.push_back(json{{"pass", pass},
                                {"kept_r1", counts[LABTILE_KEPT_R1]},
                                {"protected_r2", counts[LABTILE_PROTECTED_R2]},
                                {"replaced", counts[LABTILE_REPLACED]},
                                {"exhausted", counts[LABTILE_EXHAUSTED]}});
    }
    cell["outcomes"] = outcomes;

    labtile_mask* mask_raw = nullptr;
    check_output(labtile_mask_diff(input, working.get(), &mask_raw), "computing change mask");
    MaskPtr mask(mask_raw);
    cell["changed_pixels"] = labtile_mask_popcount(mask.get());

    if (!edge_pairs.empty()) {
        json concentrations = json::array();
        for (std::uint32_t pass = 0; pass < labtile_trace_passes(trace.get()); ++pass) {
            double near_fraction = 0.0, far_fraction = 0.0;
            check_input(labtile_trace_edge_concentration(trace.get(), pass, edge_pairs.data(),
                                                         edge_pairs.size() / 2, edge_radius,
                                                         &near_fraction, &far_fraction),
                        "edge concentration");
            concentrations.push_back(json{{"pass", pass},
                                          {"near_fraction", near_fraction},
                                          {"far_fraction", far_fraction}});
        }
        cell["edge_concentration"] = concentrations;
    }
    result.metrics = std::move(cell);
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"labyrinthine-tiling image filter"};

    std::string input_path, output_path;
    labtile_params params;
    labtile_params_init(&params);
    std::string intervals_path, trace_path, sweep_text, metrics_path, edge_set_path;
    std::uint32_t edge_radius = 1;

    app.add_option("--input", input_path, "input image (.pgm or .png)")->required();
    app.add_option("--output", output_path, "output image (.pgm or .png)")->required();
    app.add_option("--t", params.t, "mean-deviation threshold")->capture_default_str();
    app.add_option("--v-threshold", params.v_threshold, "dispersion gate threshold")
        ->capture_default_str();
    app.add_option("--passes", params.passes, "number of full scans")->capture_default_str();
    app.add_option("--seed", params.seed, "random stream seed")->capture_default_str();
    app.add_option("--max-attempts", params.max_attempts, "candidate draws per pixel")
        ->capture_default_str();
    app.add_option("--intervals", intervals_path, "tone interval table (JSON)");
    app.add_option("--trace", trace_path, "write the per-pixel decision trace here");
    app.add_option("--sweep", sweep_text, "PARAM=v1,v2,... one render per value (t or v_thresh)");
    app.add_option("--metrics", metrics_path, "write metrics JSON here");
    app.add_option("--edge-set", edge_set_path,
                   "edge coordinates file ('x y' per line) for edge-concentration metrics");
    app.add_option("--edge-radius", edge_radius, "Chebyshev radius for edge concentration")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    labtile_image* input_raw = nullptr;
    check_input(labtile_image_read_file(input_path.c_str(), &input_raw),
                "reading " + input_path);
    ImagePtr input(input_raw);

    TablePtr table;
    if (!intervals_path.empty()) {
        labtile_table* table_raw = nullptr;
        labtile_status status = labtile_table_read_file(intervals_path.c_str(), &table_raw);
        if (status != LABTILE_OK) {
            // Any problem in the table file is an input error, including
            // invariant violations surfaced as usage errors.
            die(kExitInput, "loading " + intervals_path + ": " + labtile_last_error());
        }
        table.reset(table_raw);
    } else {
        labtile_table* table_raw = nullptr;
        check_input(labtile_table_default(&table_raw), "building default table");
        table.reset(table_raw);
    }

    std::vector<std::uint32_t> edge_pairs;
    if (!edge_set_path.empty()) edge_pairs = load_edge_set(edge_set_path);

    bool want_metrics = !metrics_path.empty();
    json metrics;
    if (want_metrics) {
        metrics["input"] = json{{"path", input_path},
                                {"width", labtile_image_width(input.get())},
                                {"height", labtile_image_height(input.get())}};
        metrics["params"] = params_json(params);
        metrics["intervals"] = intervals_json(table.get());
        if (!edge_set_path.empty()) metrics["edge_radius"] = edge_radius;
    }

    json cells = json::array();
    if (!sweep_text.empty()) {
        SweepSpec spec = parse_sweep(sweep_text);
        for (std::size_t i = 0; i < spec.values.size(); ++i) {
            labtile_params cell_params = params;
            if (spec.param == "t") {
                cell_params.t = spec.values[i];
            } else {
                cell_params.v_threshold = spec.values[i];
            }
            std::string cell_output = suffixed_path(output_path, spec.param, spec.tokens[i]);
            std::optional<std::string> cell_trace;
            if (!trace_path.empty()) {
                cell_trace = suffixed_path(trace_path, spec.param, spec.tokens[i]);
            }
            CellResult cell = run_cell(input.get(), cell_params, table.get(), cell_output,
                                       cell_trace, edge_pairs, edge_radius, want_metrics);
            if (want_metrics) {
                cell.metrics["sweep_param"] = spec.param;
                cell.metrics["sweep_value"] = spec.values[i];
                cells.push_back(std::move(cell.metrics));
            }
        }
    } else {
        std::optional<std::string> maybe_trace;
        if (!trace_path.empty()) maybe_trace = trace_path;
        CellResult cell = run_cell(input.get(), params, table.get(), output_path, maybe_trace,
                                   edge_pairs, edge_radius, want_metrics);
        if (want_metrics) cells.push_back(std::move(cell.metrics));
    }

    if (want_metrics) {
        metrics["results"] = std::move(cells);
        std::ofstream out(metrics_path, std::ios::binary);
        if (!out) die(kExitOther, "cannot open metrics file for writing: " + metrics_path);
        out << metrics.dump(2) << "\n";
        if (!out) die(kExitOther, "failed writing metrics file: " + metrics_path);
    }
    return kExitOk;
}
