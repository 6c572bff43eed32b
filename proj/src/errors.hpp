#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace labtile {

// Caller passed arguments that violate a precondition (bad coordinates,
// invalid parameter values, mismatched dimensions).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input bytes do not form a valid file of the expected format. Carries the
// byte offset where decoding failed.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& msg, std::size_t byte_offset)
        : std::runtime_error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Well-formed input that this implementation deliberately does not handle
// (maxval other than 255, images smaller than 2x2, 16-bit PNG).
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace labtile
