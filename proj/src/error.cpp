// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/error.hpp"

namespace idrecon {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyValue: return "EmptyValue";
        case ErrorCode::InvalidPathValue: return "InvalidPathValue";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::DanglingEdge: return "DanglingEdge";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorCode::UnknownModule: return "UnknownModule";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::ParamInvalid: return "ParamInvalid";
        case ErrorCode::UnknownJob: return "UnknownJob";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptyAfterFold: return "EmptyAfterFold";
        case ErrorCode::InvalidDomain: return "InvalidDomain";
        case ErrorCode::BadTemplate: return "BadTemplate";
        case ErrorCode::ReplayMiss: return "ReplayMiss";
        case ErrorCode::NetworkFailure: return "NetworkFailure";
        case ErrorCode::NotJpeg: return "NotJpeg";
        case ErrorCode::CorruptExif: return "CorruptExif";
        case ErrorCode::MalformedDate: return "MalformedDate";
        case ErrorCode::AdapterUnavailable: return "AdapterUnavailable";
        case ErrorCode::AdapterError: return "AdapterError";
        case ErrorCode::PreconditionViolation: return "PreconditionViolation";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::EmptyTokenSet: return "EmptyTokenSet";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::SinkError: return "SinkError";
        case ErrorCode::PathOccupied: return "PathOccupied";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BindError: return "BindError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

ParseError::ParseError(std::size_t position, const std::string& reason)
    : Error(ErrorCode::ParseError, reason + " at offset " + std::to_string(position)),
      position_(position),
      reason_(reason) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace idrecon
