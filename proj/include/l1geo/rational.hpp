#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace l1geo {

/// Exact rational scalar. All kernel arithmetic goes through this type;
/// nothing in the library ever rounds.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

inline int rat_sign(const Rat& v) { return sgn(v); }

/// Parses "123", "-4.75", "3/8" into an exact rational.
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat r(text);
        r.canonicalize();
        if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rat r(mpz_class(text), 1);
        r.canonicalize();
        return r;
    }
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    for (char c : head + tail)
        if (c < '0' || c > '9') throw std::invalid_argument("bad number: " + text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.empty() ? 0 : tail.size());
    mpz_class whole(head);
    mpz_class frac = tail.empty() ? mpz_class(0) : mpz_class(tail);
    mpz_class num = whole * scale + frac;
    if (neg) num = -num;
    Rat r(num, scale);
    r.canonicalize();
    return r;
}

inline std::string rat_fraction_string(const Rat& v) { return v.get_str(); }

/// Fixed-point decimal rendering (round half away from zero).
inline std::string rat_decimal_string(const Rat& v, int digits = 12) {
    mpz_class num = v.get_num(), den = v.get_den();
    bool neg = sgn(num) < 0;
    if (neg) num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mpz_class(num * scale).get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    mpz_class whole = q / scale, frac = q % scale;
    std::string fs = frac.get_str();
    fs.insert(fs.begin(), digits - fs.size(), '0');
    while (!fs.empty() && fs.back() == '0') fs.pop_back();
    std::string out = (neg && (whole != 0 || !fs.empty()) ? "-" : "") + whole.get_str();
    if (!fs.empty()) out += "." + fs;
    return out;
}

inline double rat_double(const Rat& v) { return v.get_d(); }

}  // namespace l1geo
