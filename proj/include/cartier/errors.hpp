#ifndef CARTIER_ERRORS_HPP
#define CARTIER_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cartier
{

enum class ErrorKind {
    // contract / usage
    MismatchedContext,
    ParseError,
    IllFormedRingMap,
    UnsupportedRing,
    RingNotFinite,
    IndexOutOfRange,
    InvalidArgument,
    // mathematical rejection
    NonNilpotentSubstitution,
    NonUnitLinearTerm,
    NonInvertibleInteger,
    AxiomViolation,
    IndeterminateAtTruncation,
    NotPrimeCharacteristic,
    IntegralityFailure,
    ImproperIdeal,
    NotComplete,
    NotDiscrete,
    NotFiltered,
    CharacteristicTwo,
    TheoremViolation,
    HopfAxiomFailure,
    NonNilpotentAugmentation,
    WeightInhomogeneity,
    PreservationFailure,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

// True for kinds that signal a rejected mathematical object rather than a
// malformed request. The CLI maps these to exit status 1.
bool is_mathematical(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message, nlohmann::json details = nlohmann::json::object())
        : std::runtime_error(message), kind_(kind), details_(std::move(details))
    {
    }

    ErrorKind kind() const noexcept
    {
        return kind_;
    }
    const nlohmann::json &details() const noexcept
    {
        return details_;
    }
    nlohmann::json report() const;

private:
    ErrorKind kind_;
    nlohmann::json details_;
};

} // namespace cartier

#endif
