#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sqap {

// Arbitrary precision; no overflow is possible.
using Int = boost::multiprecision::cpp_int;
// Always normalized: gcd(|num|, den) = 1 and den >= 1.
using Rat = boost::multiprecision::cpp_rational;

enum class ErrorCode {
    DomainError,
    NotInvertible,
    NotCoprime,
    FactorizationFailed,
    TooLarge,
    NotFound,
    BadPrime,
    OutOfRange,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline std::string to_decimal(const Int& v) { return v.str(); }

// "p/q" for non-integers, plain decimal otherwise.
std::string to_decimal(const Rat& v);

// Accepts an optional sign followed by decimal digits.
Int parse_int(std::string_view text);

// Accepts integers, "p/q" fractions and finite decimals such as "2.75".
Rat parse_rat(std::string_view text);

Int floor(const Rat& v);
Int ceil(const Rat& v);

inline bool fits_int64(const Int& v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

// Display-only decimal rendering with `digits` fractional digits (rounded toward zero).
std::string to_fixed(const Rat& v, int digits);

} // namespace sqap
