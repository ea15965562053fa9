#pragma once

#include <stdexcept>
#include <string>

namespace gridplot {

enum class ErrorCode {
    SyntaxError,
    RaggedMatrix,
    UnknownComponentType,
    UnknownId,
    DanglingBusRef,
    MissingEndpoint,
    EmptyGraph,
    UnknownNode,
    UnknownColumn,
    NonNumericAggregate,
    PathNotFound,
    UnknownDataField,
    InvalidArgument,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

    const char* code_name() const {
        switch (code_) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::RaggedMatrix: return "RaggedMatrix";
        case ErrorCode::UnknownComponentType: return "UnknownComponentType";
        case ErrorCode::UnknownId: return "UnknownId";
        case ErrorCode::DanglingBusRef: return "DanglingBusRef";
        case ErrorCode::MissingEndpoint: return "MissingEndpoint";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::NonNumericAggregate: return "NonNumericAggregate";
        case ErrorCode::PathNotFound: return "PathNotFound";
        case ErrorCode::UnknownDataField: return "UnknownDataField";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        }
        return "Unknown";
    }

private:
    ErrorCode code_;
};

} // namespace gridplot
