#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infops {

enum class ErrorCode {
    Parse,
    Schema,
    NotFound,
    AmbiguousName,
    UnknownTechnique,
    PhaseViolation,
    DisjointnessViolation,
    DuplicateIncidentId,
    EmptyCorpus,
    InfeasibleSpec,
    ZeroIncidents,
    NegativeSupport,
    InvalidRange,
    UnknownFormat,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace infops
