#include <cartier/errors.hpp>

namespace cartier
{

std::string_view error_kind_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::MismatchedContext: return "MismatchedContext";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IllFormedRingMap: return "IllFormedRingMap";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::RingNotFinite: return "RingNotFinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonNilpotentSubstitution: return "NonNilpotentSubstitution";
    case ErrorKind::NonUnitLinearTerm: return "NonUnitLinearTerm";
    case ErrorKind::NonInvertibleInteger: return "NonInvertibleInteger";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::IndeterminateAtTruncation: return "IndeterminateAtTruncation";
    case ErrorKind::NotPrimeCharacteristic: return "NotPrimeCharacteristic";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::NotFiltered: return "NotFiltered";
    case ErrorKind::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::HopfAxiomFailure: return "HopfAxiomFailure";
    case ErrorKind::NonNilpotentAugmentation: return "NonNilpotentAugmentation";
    case ErrorKind::WeightInhomogeneity: return "WeightInhomogeneity";
    case ErrorKind::PreservationFailure: return "PreservationFailure";
    }
    return "Unknown";
}

bool is_mathematical(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::MismatchedContext:
    case ErrorKind::ParseError:
    case ErrorKind::IllFormedRingMap:
    case ErrorKind::UnsupportedRing:
    case ErrorKind::RingNotFinite:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::InvalidArgument:
        return false;
    default:
        return true;
    }
}

nlohmann::json Error::report() const
{
    nlohmann::json j;
    j["error"] = std::string(error_kind_name(kind_));
    j["message"] = what();
    if (!details_.empty())
        j["details"] = details_;
    return j;
}

} // namespace cartier
