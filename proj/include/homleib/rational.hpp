// Exact rational scalar type and parsing/formatting helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homleib {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    BigInt n(num), d(den);
    if (d < 0) { n = -n; d = -d; } // the backend requires a positive denominator
    return Rational(n, d);
}

// Accepts "3", "-3", "3/4", "-3/4" (optionally with surrounding spaces).
inline Rational parse_rational(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
    std::string core = s.substr(b, e - b + 1);
    std::size_t slash = core.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(core));
        BigInt num(core.substr(0, slash));
        BigInt den(core.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        return Rational(num, den);
    } catch (const std::runtime_error& ex) {
        throw std::invalid_argument(std::string("bad rational literal '") + core + "': " + ex.what());
    }
}

// Canonical text form: "n" when the denominator is 1, else "n/d".
inline std::string format_rational(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline bool is_zero(const Rational& q) { return q.is_zero(); }

} // namespace homleib
