#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace starlike {

/// Machine-readable failure categories shared by every module.
enum class ErrorCode {
    MalformedProfile,
    PointOutsideDomain,
    InvalidAnchor,
    NotAnchored,
    CurveLeavesDomain,
    PathConstructionFailed,
    MarkerStallDetected,
    BranchMismatch,
    InvalidStart,
    EmptySequence,
    ConstructionOverflow,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/// True for errors caused by bad input (as opposed to a numeric breakdown).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Profile validation failure; carries the index of the offending piece
/// when one can be singled out.
class MalformedProfile : public Error {
public:
    MalformedProfile(const std::string& message, std::optional<std::size_t> piece = std::nullopt)
        : Error(ErrorCode::MalformedProfile, message), piece_(piece) {}

    std::optional<std::size_t> piece_index() const noexcept { return piece_; }

private:
    std::optional<std::size_t> piece_;
};

/// Raised by the nested-wall gallery builder when magnitudes run out of range.
class ConstructionOverflow : public Error {
public:
    ConstructionOverflow(const std::string& message, int achieved_depth)
        : Error(ErrorCode::ConstructionOverflow, message), depth_(achieved_depth) {}

    int achieved_depth() const noexcept { return depth_; }

private:
    int depth_;
};

}  // namespace starlike
