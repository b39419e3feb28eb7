#pragma once

#include <stdexcept>
#include <string>

namespace cptx {

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an adaptive integral fails to meet its tolerance.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& side, const std::string& what)
        : std::runtime_error(what), side_(side) {}

    /// "gains" or "losses".
    const std::string& side() const noexcept { return side_; }

private:
    std::string side_;
};

inline void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
}

}  // namespace cptx
