#include "error.hpp"

namespace reartool {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::NotQuasiconcave: return "NotQuasiconcave";
        case ErrorCode::NonIntegrable: return "NonIntegrable";
        case ErrorCode::TrivialSpace: return "TrivialSpace";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::CharacterizationDisagreement: return "CharacterizationDisagreement";
        case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

}  // namespace reartool
