#include "linematch/error.hpp"

namespace linematch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsortedServers: return "UnsortedServers";
    case ErrorCode::MinGapViolation: return "MinGapViolation";
    case ErrorCode::RequestOffServer: return "RequestOffServer";
    case ErrorCode::TooManyRequests: return "TooManyRequests";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::BothInfinite: return "BothInfinite";
    case ErrorCode::NoAvailableServer: return "NoAvailableServer";
    case ErrorCode::NotATrigger: return "NotATrigger";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace linematch
