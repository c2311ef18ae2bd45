#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adic {

enum class ErrorCode {
    // bratteli-core
    InvalidAlphabet,
    LevelMismatch,
    EmptySchedule,
    ZeroClockEdges,
    CutsNotMonotone,
    CutsBreakPeriodicity,
    LabelOutOfRange,
    MinTailUndefined,
    MaxTailUndefined,
    BadLevels,
    Overflow,
    // vershik
    NotFocused,
    NotProperlyOrdered,
    ExtensionBoundExceeded,
    InconsistentPath,
    OrbitTooLong,
    // builders
    NotProper,
    NotPrimitive,
    EmptyQuotients,
    InvalidQuotient,
    DigitOutOfRange,
    IncompleteFill,
    OverlappingFill,
    Periodic,
    WidthBoundViolated,
    Unstabilized,
    // spacetime
    WidthExceedsTailKnowledge,
    InsufficientCoverage,
    // ca-synth
    UnsaturatedHarvest,
    AmbiguousRule,
    InsufficientHarvest,
    UnseenContext,
    DeductionStuck,
    DepthExceedsCore,
    Mismatch,
    // io
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
    {}

    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

}  // namespace adic
