#ifndef FAACALC_SCALAR_HPP
#define FAACALC_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "faacalc/errors.hpp"

namespace faacalc {

using bigint   = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// The two scalar backends offered throughout the library.
template <typename S>
concept Scalar = std::same_as<S, rational> || std::same_as<S, double>;

inline bigint factorial(unsigned n) {
    bigint r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline bigint binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    bigint r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline bigint ipow(const bigint& base, unsigned e) {
    bigint r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

template <Scalar S>
S scalar_from_bigint(const bigint& v) {
    if constexpr (std::same_as<S, rational>) {
        return rational(v);
    } else {
        return v.convert_to<double>();
    }
}

inline double to_double(const rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

template <Scalar S>
S scalar_pow(const S& base, unsigned e) {
    S r = S(1), b = base;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

namespace detail {

inline bool parse_int_digits(std::string_view s, bigint& out) {
    if (s.empty()) return false;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return false;
    bigint v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = neg ? -v : v;
    return true;
}

} // namespace detail

// Accepts "a/b", plain integers, and decimal notation such as "-1.25".
inline rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        bigint num, den;
        if (!detail::parse_int_digits(text.substr(0, slash), num) ||
            !detail::parse_int_digits(text.substr(slash + 1), den) || den == 0)
            throw input_error("bad rational literal: " + std::string(text));
        return rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
        bool neg = !ip.empty() && ip.front() == '-';
        bigint whole = 0;
        if (!ip.empty() && ip != "-" && ip != "+" && !detail::parse_int_digits(ip, whole))
            throw input_error("bad decimal literal: " + std::string(text));
        bigint frac = 0;
        if (!fp.empty() && !detail::parse_int_digits(fp, frac))
            throw input_error("bad decimal literal: " + std::string(text));
        if (frac < 0) throw input_error("bad decimal literal: " + std::string(text));
        bigint scale = ipow(bigint(10), static_cast<unsigned>(fp.size()));
        bigint num = boost::multiprecision::abs(whole) * scale + frac;
        return rational(neg ? -num : num, scale);
    }
    bigint v;
    if (!detail::parse_int_digits(text, v))
        throw input_error("bad integer literal: " + std::string(text));
    return rational(v);
}

inline double parse_double(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return to_double(parse_rational(text));
    double v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw input_error("bad number literal: " + std::string(text));
    return v;
}

template <Scalar S>
S parse_scalar(std::string_view text) {
    if constexpr (std::same_as<S, rational>)
        return parse_rational(text);
    else
        return parse_double(text);
}

// Shortest decimal string that round-trips through a double.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

inline std::string format_scalar(const rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline std::string format_scalar(double v) { return format_double(v); }

template <Scalar S>
S scalar_abs(const S& v) {
    if constexpr (std::same_as<S, rational>)
        return v < 0 ? S(-v) : v;
    else
        return std::fabs(v);
}

} // namespace faacalc

#endif
