#include "waterfall/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace waterfall {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Scans [pos, end) for an optional sign followed by at least one digit.
// Returns the digits (sign folded in by the caller) and advances pos.
struct IntScan {
    bool negative = false;
    std::string digits;
};

IntScan scan_integer(std::string_view s, std::size_t& pos, const std::string_view token) {
    IntScan out;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        out.negative = (s[pos] == '-');
        ++pos;
    }
    const std::size_t first = pos;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    if (pos == first)
        throw NumberFormatError(std::string(token), pos,
                                pos < s.size() ? "expected a digit" : "unexpected end of input");
    out.digits = std::string(s.substr(first, pos - first));
    return out;
}

BigInt pow10(std::size_t n) {
    BigInt p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= 10;
    return p;
}

// cpp_int reads a leading 0 as an octal prefix; always feed it plain decimal.
BigInt decimal_digits(const std::string& digits) {
    const std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return BigInt(0);
    return BigInt(digits.substr(first));
}

}  // namespace

Rational parse_rational(std::string_view token) {
    if (token.empty()) throw NumberFormatError(std::string(token), 0, "empty number");

    std::size_t pos = 0;
    const IntScan head = scan_integer(token, pos, token);

    // Fraction form: p/q
    if (pos < token.size() && token[pos] == '/') {
        ++pos;
        const std::size_t denom_at = pos;
        const IntScan denom = scan_integer(token, pos, token);
        if (pos != token.size())
            throw NumberFormatError(std::string(token), pos, "trailing characters after fraction");
        BigInt q = decimal_digits(denom.digits);
        if (q == 0) throw NumberFormatError(std::string(token), denom_at, "zero denominator");
        BigInt p = decimal_digits(head.digits);
        if (head.negative != denom.negative) p = -p;
        return Rational(p, q);
    }

    // Decimal form: digits [. digits] [e[+-]digits]
    std::string int_digits = head.digits;
    std::string frac_digits;
    if (pos < token.size() && token[pos] == '.') {
        ++pos;
        const std::size_t first = pos;
        while (pos < token.size() && is_digit(token[pos])) ++pos;
        if (pos == first)
            throw NumberFormatError(std::string(token), pos, "expected digits after decimal point");
        frac_digits = std::string(token.substr(first, pos - first));
    }
    long long exp10 = 0;
    if (pos < token.size() && (token[pos] == 'e' || token[pos] == 'E')) {
        ++pos;
        const IntScan e = scan_integer(token, pos, token);
        if (e.digits.size() > 9)
            throw NumberFormatError(std::string(token), pos, "exponent too large");
        exp10 = std::atoll(e.digits.c_str());
        if (e.negative) exp10 = -exp10;
    }
    if (pos != token.size())
        throw NumberFormatError(std::string(token), pos, "unexpected character");

    BigInt mantissa = decimal_digits(int_digits + frac_digits);
    if (head.negative) mantissa = -mantissa;
    const long long scale = exp10 - static_cast<long long>(frac_digits.size());
    Rational r(mantissa);
    if (scale > 0)
        r *= Rational(pow10(static_cast<std::size_t>(scale)));
    else if (scale < 0)
        r /= Rational(pow10(static_cast<std::size_t>(-scale)));
    return r;
}

std::string format_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace waterfall
