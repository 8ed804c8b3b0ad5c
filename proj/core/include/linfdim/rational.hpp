#pragma once

// Exact arithmetic used on the l_infinity side of the toolkit. Distances,
// potentials and cycle weights are arbitrary-precision rationals so that
// sign decisions (negative cycle or not) are never a matter of tolerance.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace linfdim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p/q" or a bare integer "n". Rejects q = 0 and empty strings.
inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { throw input_error("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();  // unreachable
}

// Canonical form: bare integer when the denominator is 1, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// Smallest integer t with t >= sqrt(x), for x >= 0.
inline Int ceil_sqrt(const Int& x) {
    if (x < 0) throw std::invalid_argument("ceil_sqrt of negative value");
    Int r = boost::multiprecision::sqrt(x);
    if (r * r < x) ++r;
    return r;
}

// ceil(sqrt(q) * scale) computed exactly: the least t with t^2 >= q * scale^2.
inline Int ceil_sqrt_scaled(const Rat& q, const Int& scale) {
    Int num = numerator(q) * scale * scale;
    Int den = denominator(q);
    Int quot = num / den;
    Int t = boost::multiprecision::sqrt(quot);
    while (t * t * den < num) ++t;
    return t;
}

// FNV-1a over a byte string; used for input digests in run reports.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace linfdim
