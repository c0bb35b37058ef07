#include "sqap/types.hpp"

#include <cctype>

namespace sqap {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::OutOfRange: return "OutOfRange";
    }
    return "Unknown";
}

std::string to_decimal(const Rat& v) {
    const Int& den = boost::multiprecision::denominator(v);
    if (den == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

Int parse_int(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size())
        fail(ErrorCode::DomainError, "expected an integer, got '" + std::string(text) + "'");
    Int value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            fail(ErrorCode::DomainError, "expected an integer, got '" + std::string(text) + "'");
        value *= 10;
        value += text[i] - '0';
    }
    return negative ? Int(-value) : value;
}

Rat parse_rat(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Int num = parse_int(text.substr(0, slash));
        Int den = parse_int(text.substr(slash + 1));
        if (den == 0)
            fail(ErrorCode::DomainError, "zero denominator in '" + std::string(text) + "'");
        return Rat(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.front() == '+' || frac.front() == '-')
            fail(ErrorCode::DomainError, "malformed decimal '" + std::string(text) + "'");
        digits += frac;
        if (digits.empty() || digits == "-" || digits == "+")
            digits += "0";
        Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(frac.size()));
        return Rat(parse_int(digits), scale);
    }
    return Rat(parse_int(text));
}

Int floor(const Rat& v) {
    const Int& num = boost::multiprecision::numerator(v);
    const Int& den = boost::multiprecision::denominator(v);
    Int q = num / den;
    if (num < 0 && q * den != num)
        --q;
    return q;
}

Int ceil(const Rat& v) { return -floor(-v); }

std::string to_fixed(const Rat& v, int digits) {
    Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(digits));
    Rat scaled = v * scale;
    Int whole = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    bool negative = whole < 0 || (whole == 0 && v < 0);
    Int mag = boost::multiprecision::abs(whole);
    std::string s = mag.str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

} // namespace sqap
