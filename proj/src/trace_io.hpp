#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "renderer.hpp"

namespace labtile {

/// Delimited text export of decision traces, one record per decision:
///
///   pass,x,y,outcome,r1,r2,attempts,old,new
///
/// following a header line with those column names. Integers are plain
/// decimal; r1/r2 use the shortest decimal form that round-trips the double
/// exactly (std::to_chars), so identical traces serialize to identical
/// bytes and external tools can replay-verify.
std::string format_trace(const std::vector<PassTrace>& traces);

void write_trace_file(const std::vector<PassTrace>& traces, const std::string& path);

/// Parses text in the format written by format_trace. Pass dimensions are
/// reconstructed from the row-major scan coordinates. Throws FormatError on
/// malformed input.
std::vector<PassTrace> parse_trace(std::string_view text);

}  // namespace labtile
