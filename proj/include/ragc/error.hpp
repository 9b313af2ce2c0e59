#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ragc {

// Bad flag combinations or arguments supplied by the caller.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed bit stream or container. Carries the bit offset where parsing failed.
class CorruptError : public std::runtime_error {
public:
    CorruptError(const std::string& what, std::size_t bit_position)
        : std::runtime_error(what + " (at bit " + std::to_string(bit_position) + ")"),
          bit_position_(bit_position) {}
    explicit CorruptError(const std::string& what)
        : std::runtime_error(what), bit_position_(0) {}

    std::size_t bit_position() const noexcept { return bit_position_; }

private:
    std::size_t bit_position_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value outside the domain of a code (gamma of 0, overflow of a fixed width).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Broken internal invariant; indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ragc
