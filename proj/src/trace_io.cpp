#include "trace_io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "errors.hpp"

namespace labtile {

namespace {

constexpr std::string_view kHeader = "pass,x,y,outcome,r1,r2,attempts,old,new";

void append_double(std::string& out, double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

Outcome outcome_from_name(std::string_view name, std::size_t offset) {
    if (name == "kept_r1") return Outcome::kept_r1;
    if (name == "protected_r2") return Outcome::protected_r2;
    if (name == "replaced") return Outcome::replaced;
    if (name == "exhausted") return Outcome::exhausted;
    throw FormatError("unknown outcome '" + std::string(name) + "'", offset);
}

class FieldReader {
public:
    FieldReader(std::string_view line, std::size_t line_offset)
        : line_(line), line_offset_(line_offset) {}

    std::string_view next(const char* what) {
        if (pos_ > line_.size()) {
            throw FormatError(std::string("missing field '") + what + "'",
                              line_offset_ + line_.size());
        }
        std::size_t comma = line_.find(',', pos_);
        std::size_t end = comma == std::string_view::npos ? line_.size() : comma;
        std::string_view token = line_.substr(pos_, end - pos_);
        token_offset_ = line_offset_ + pos_;
        pos_ = comma == std::string_view::npos ? line_.size() + 1 : comma + 1;
        return token;
    }

    template <typename T>
    T number(const char* what) {
        std::string_view token = next(what);
        T value{};
        auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
            throw FormatError(std::string("bad value for field '") + what + "'", token_offset_);
        }
        return value;
    }

    std::size_t token_offset() const { return token_offset_; }

    void expect_end() {
        if (pos_ <= line_.size()) {
            throw FormatError("unexpected extra field", line_offset_ + pos_);
        }
    }

private:
    std::string_view line_;
    std::size_t line_offset_;
    std::size_t pos_ = 0;
    std::size_t token_offset_ = 0;
};

}  // namespace

std::string format_trace(const std::vector<PassTrace>& traces) {
    std::string out(kHeader);
    out.push_back('\n');
    for (const PassTrace& pass : traces) {
        for (const PixelDecision& d : pass.decisions) {
            out += std::to_string(pass.pass_index);
            out.push_back(',');
            out += std::to_string(d.x);
            out.push_back(',');
            out += std::to_string(d.y);
            out.push_back(',');
            out += outcome_name(d.outcome);
            out.push_back(',');
            append_double(out, d.r1);
            out.push_back(',');
            append_double(out, d.r2);
            out.push_back(',');
            out += std::to_string(d.attempts);
            out.push_back(',');
            out += std::to_string(d.old_tone);
            out.push_back(',');
            out += std::to_string(d.new_tone);
            out.push_back('\n');
        }
    }
    return out;
}

void write_trace_file(const std::vector<PassTrace>& traces, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open trace file for writing: " + path);
    }
    std::string text = format_trace(traces);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("failed writing trace file: " + path);
    }
}

std::vector<PassTrace> parse_trace(std::string_view text) {
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line, std::size_t& line_offset) {
        if (pos >= text.size()) return false;
        std::size_t eol = text.find('\n', pos);
        std::size_t end = eol == std::string_view::npos ? text.size() : eol;
        line = text.substr(pos, end - pos);
        line_offset = pos;
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        return true;
    };

    std::string_view line;
    std::size_t line_offset = 0;
    if (!next_line(line, line_offset) || line != kHeader) {
        throw FormatError("trace header line missing or malformed", 0);
    }

    std::vector<PassTrace> traces;
    while (next_line(line, line_offset)) {
        if (line.empty()) continue;
        FieldReader fields(line, line_offset);
        std::uint32_t pass = fields.number<std::uint32_t>("pass");
        PixelDecision d;
        d.x = fields.number<std::uint32_t>("x");
        d.y = fields.number<std::uint32_t>("y");
        std::string_view outcome = fields.next("outcome");
        d.outcome = outcome_from_name(outcome, fields.token_offset());
        d.r1 = fields.number<double>("r1");
        d.r2 = fields.number<double>("r2");
        d.attempts = fields.number<int>("attempts");
        d.old_tone = fields.number<std::uint8_t>("old");
        d.new_tone = fields.number<std::uint8_t>("new");
        fields.expect_end();

        if (traces.empty() || traces.back().pass_index != pass) {
            if (!traces.empty() && pass != traces.back().pass_index + 1) {
                throw FormatError("pass indices must be consecutive", line_offset);
            }
            traces.push_back(PassTrace{pass, 0, 0, {}});
        }
        PassTrace& current = traces.back();
        current.width = std::max(current.width, d.x + 1);
        current.height = std::max(current.height, d.y + 1);
        current.decisions.push_back(d);
    }
    return traces;
}

}  // namespace labtile
