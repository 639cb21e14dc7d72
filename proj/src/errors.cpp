#include "ransim/errors.hpp"

namespace ransim {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateBsId: return "DuplicateBsId";
    case ErrorCode::EmptyTopology: return "EmptyTopology";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::PolicyInvariantViolation: return "PolicyInvariantViolation";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::GridGraphMismatch: return "GridGraphMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace ransim
