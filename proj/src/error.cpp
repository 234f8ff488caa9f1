#include "infops/error.hpp"

namespace infops {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::Schema: return "SchemaError";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::AmbiguousName: return "AmbiguousName";
        case ErrorCode::UnknownTechnique: return "UnknownTechnique";
        case ErrorCode::PhaseViolation: return "PhaseViolation";
        case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
        case ErrorCode::DuplicateIncidentId: return "DuplicateIncidentId";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorCode::ZeroIncidents: return "ZeroIncidents";
        case ErrorCode::NegativeSupport: return "NegativeSupport";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::UnknownFormat: return "UnknownFormat";
        case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

}  // namespace infops
