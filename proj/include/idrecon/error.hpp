// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idrecon {

/// Machine-readable domain error names. The API and CLI surface these verbatim.
enum class ErrorCode {
    InvalidArgument,
    EmptyValue,
    InvalidPathValue,
    UnknownNode,
    SchemaViolation,
    DanglingEdge,
    DuplicateId,
    DuplicateName,
    InvalidDescriptor,
    UnknownModule,
    KindMismatch,
    ParamInvalid,
    UnknownJob,
    ParseError,
    EmptyAfterFold,
    InvalidDomain,
    BadTemplate,
    ReplayMiss,
    NetworkFailure,
    NotJpeg,
    CorruptExif,
    MalformedDate,
    AdapterUnavailable,
    AdapterError,
    PreconditionViolation,
    NotFound,
    EmptyTokenSet,
    InvalidConfig,
    SinkError,
    PathOccupied,
    IoError,
    BindError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

  private:
    ErrorCode code_;
    std::string message_;
};

/// Raised by the list-output interpreter; `position` is a byte offset into the input.
class ParseError : public Error {
  public:
    ParseError(std::size_t position, const std::string& reason);

    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

  private:
    std::size_t position_;
    std::string reason_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace idrecon
