#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsofs {

enum class ErrorCode {
  FileNotFound,
  MalformedRow,
  SingleClassDataset,
  EmptyDataset,
  MissingLabelColumn,
  EmptyMask,
  MaskLengthMismatch,
  KTooLarge,
  AttributeMismatch,
  EmptyTrain,
  EmptyTest,
  NoLegalAction,
  EmptyMaskResult,
  UnknownParameter,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. `line()` is set for
/// MalformedRow and holds the 1-based line number in the source file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace rsofs
