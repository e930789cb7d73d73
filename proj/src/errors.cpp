#include "starlike/errors.hpp"

namespace starlike {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedProfile: return "MalformedProfile";
        case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
        case ErrorCode::InvalidAnchor: return "InvalidAnchor";
        case ErrorCode::NotAnchored: return "NotAnchored";
        case ErrorCode::CurveLeavesDomain: return "CurveLeavesDomain";
        case ErrorCode::PathConstructionFailed: return "PathConstructionFailed";
        case ErrorCode::MarkerStallDetected: return "MarkerStallDetected";
        case ErrorCode::BranchMismatch: return "BranchMismatch";
        case ErrorCode::InvalidStart: return "InvalidStart";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::ConstructionOverflow: return "ConstructionOverflow";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::CurveLeavesDomain:
        case ErrorCode::PathConstructionFailed:
        case ErrorCode::MarkerStallDetected:
        case ErrorCode::ConstructionOverflow:
            return false;
        default:
            return true;
    }
}

}  // namespace starlike
