#pragma once

#include <stdexcept>
#include <string>

namespace fockwc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define FOCKWC_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// symbols
FOCKWC_DEFINE_ERROR(DegenerateMap);
FOCKWC_DEFINE_ERROR(InexactInput);
FOCKWC_DEFINE_ERROR(UnsupportedCombination);
FOCKWC_DEFINE_ERROR(InvalidSymbol);

// classify
FOCKWC_DEFINE_ERROR(Unbounded);
FOCKWC_DEFINE_ERROR(UnsupportedMultiplier);

// fock
FOCKWC_DEFINE_ERROR(TruncationOverflow);
FOCKWC_DEFINE_ERROR(DimensionMismatch);
FOCKWC_DEFINE_ERROR(ZeroVector);
FOCKWC_DEFINE_ERROR(NoConvergence);

// dynamics
FOCKWC_DEFINE_ERROR(BudgetExceeded);
FOCKWC_DEFINE_ERROR(RegionInvalid);

// input parsing (json, cli)
FOCKWC_DEFINE_ERROR(ParseError);

#undef FOCKWC_DEFINE_ERROR

} // namespace fockwc
