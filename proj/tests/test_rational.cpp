#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waterfall/rational.hpp"

using namespace waterfall;

TEST_CASE("parse_rational: integers, fractions, decimals") {
    CHECK(parse_rational("42") == Rational(42));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK(parse_rational("3/7") == Rational(3, 7));
    CHECK(parse_rational("-22/7") == Rational(-22, 7));
    CHECK(parse_rational("3/-7") == Rational(-3, 7));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-12.5") == Rational(-25, 2));
    CHECK(parse_rational("1e-12") == Rational(1, BigInt("1000000000000")));
    CHECK(parse_rational("2.5e3") == Rational(2500));
    CHECK(parse_rational("1E2") == Rational(100));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("-0") == Rational(0));
}

TEST_CASE("parse_rational: malformed tokens carry the offending offset") {
    const auto offset_of = [](const char* token) -> std::size_t {
        try {
            parse_rational(token);
        } catch (const NumberFormatError& e) {
            return e.offset;
        }
        FAIL("expected NumberFormatError for ", token);
        return std::size_t(-1);
    };
    CHECK(offset_of("") == 0);
    CHECK(offset_of("abc") == 0);
    CHECK(offset_of("3//7") == 2);
    CHECK(offset_of("1/0") == 2);
    CHECK(offset_of("--5") == 1);
    CHECK(offset_of("1.2.3") == 3);
    CHECK(offset_of("1.") == 2);
    CHECK(offset_of("3/7 ") == 3);
    CHECK(offset_of("1e") == 2);
    CHECK(offset_of("2x") == 1);
}

TEST_CASE("format_rational: canonical text round-trips") {
    const char* tokens[] = {"0", "42", "-3", "3/7", "-22/7", "1/1000000000000", "7/2"};
    for (const char* t : tokens) {
        const Rational r = parse_rational(t);
        CHECK(parse_rational(format_rational(r)) == r);
        CHECK(format_rational(r) == t);  // already canonical
    }
    CHECK(format_rational(parse_rational("6/4")) == "3/2");
    CHECK(format_rational(parse_rational("0.25")) == "1/4");
    CHECK(format_rational(parse_rational("3/-7")) == "-3/7");
}

TEST_CASE("to_double and format_double") {
    CHECK(to_double(parse_rational("1/4")) == 0.25);
    CHECK(to_double(parse_rational("-3/2")) == -1.5);
    CHECK(format_double(0.25) == "0.25");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);  // shortest round-trip form
}
