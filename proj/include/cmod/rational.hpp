#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <string>

#include "cmod/error.hpp"

namespace cmod {

// Expression templates off so that temporaries are plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Accepts "-3", "2.75", "-7/3".
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    require(!s.empty(), ErrorKind::InvalidInput, "empty number");
    auto bad = [&]() { fail(ErrorKind::InvalidInput, "not a rational number: '" + text + "'"); };
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) bad();
        for (std::size_t k = from; k < to; ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) bad();
        return BigInt(s.substr(from, to - from));
    };
    Rational r;
    auto slash = s.find('/', i);
    auto dot = s.find('.', i);
    if (slash != std::string::npos) {
        BigInt num = digits(i, slash);
        BigInt den = digits(slash + 1, s.size());
        if (den == 0) bad();
        r = Rational(num, den);
    } else if (dot != std::string::npos) {
        BigInt whole = dot > i ? digits(i, dot) : BigInt(0);
        std::size_t fl = s.size() - dot - 1;
        if (dot == i && fl == 0) bad();
        BigInt frac = fl > 0 ? digits(dot + 1, s.size()) : BigInt(0);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fl));
        r = Rational(whole * scale + frac, scale);
    } else {
        r = Rational(digits(i, s.size()));
    }
    return neg ? Rational(-r) : r;
}

// Terminating decimals print as decimals, everything else as p/q.
inline std::string format_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    BigInt d = den;
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return num.str() + "/" + den.str();
    unsigned places = std::max(twos, fives);
    BigInt scale = boost::multiprecision::pow(BigInt(10), places);
    BigInt scaled = num * (scale / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.str();
    if (digits.size() <= places) digits = std::string(places - digits.size() + 1, '0') + digits;
    std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    return neg ? "-" + out : out;
}

// Rational extended by -inf and +inf.
struct ExtReal {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value = 0;

    ExtReal() = default;
    ExtReal(Rational v) : kind(Kind::Finite), value(std::move(v)) {}
    ExtReal(int v) : kind(Kind::Finite), value(v) {}
    static ExtReal neg_inf() { ExtReal e; e.kind = Kind::NegInf; return e; }
    static ExtReal pos_inf() { ExtReal e; e.kind = Kind::PosInf; return e; }

    bool finite() const { return kind == Kind::Finite; }
    bool is_pos_inf() const { return kind == Kind::PosInf; }
    bool is_neg_inf() const { return kind == Kind::NegInf; }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
    }
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
        if (a.kind != Kind::Finite) return std::strong_ordering::equal;
        if (a.value < b.value) return std::strong_ordering::less;
        if (a.value > b.value) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

// |a - b| with the convention |inf - inf| = 0 for equal infinities.
inline ExtReal abs_diff(const ExtReal& a, const ExtReal& b) {
    if (a.finite() && b.finite()) {
        Rational d = a.value - b.value;
        return d < 0 ? Rational(-d) : d;
    }
    if (a.kind == b.kind) return ExtReal(0);
    return ExtReal::pos_inf();
}

inline std::string format_ext(const ExtReal& e) {
    if (e.is_neg_inf()) return "-inf";
    if (e.is_pos_inf()) return "inf";
    return format_rational(e.value);
}

inline ExtReal parse_ext(const std::string& s) {
    if (s == "-inf" || s == "-Infinity") return ExtReal::neg_inf();
    if (s == "inf" || s == "+inf" || s == "Infinity") return ExtReal::pos_inf();
    return ExtReal(parse_rational(s));
}

} // namespace cmod
