#include "rsofs/error.hpp"

namespace rsofs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::SingleClassDataset: return "SingleClassDataset";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::MissingLabelColumn: return "MissingLabelColumn";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::MaskLengthMismatch: return "MaskLengthMismatch";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::AttributeMismatch: return "AttributeMismatch";
    case ErrorCode::EmptyTrain: return "EmptyTrain";
    case ErrorCode::EmptyTest: return "EmptyTest";
    case ErrorCode::NoLegalAction: return "NoLegalAction";
    case ErrorCode::EmptyMaskResult: return "EmptyMaskResult";
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line) {}

}  // namespace rsofs
