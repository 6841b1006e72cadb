#include "fractaldim/exact.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace fractaldim {

long bit_length(const BigInt& x) {
    if (x <= 0) throw std::domain_error("bit_length: argument must be positive");
    return static_cast<long>(boost::multiprecision::msb(x)) + 1;
}

long double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: argument must be positive");
    const long bits = bit_length(x);
    if (bits <= 63) return std::log(static_cast<long double>(x.convert_to<std::uint64_t>()));
    const long shift = bits - 63;
    const BigInt top = x >> shift;
    const long double mant = static_cast<long double>(top.convert_to<std::uint64_t>());
    return std::log(mant) + static_cast<long double>(shift) * 0.6931471805599453094L;
}

long double log_rat(const BigRat& x) {
    if (x <= 0) throw std::domain_error("log_rat: argument must be positive");
    return log_big(boost::multiprecision::numerator(x)) -
           log_big(boost::multiprecision::denominator(x));
}

double rat_to_double(const BigRat& x) {
    if (x == 0) return 0.0;
    const bool neg = x < 0;
    const BigInt num = neg ? BigInt(-boost::multiprecision::numerator(x))
                           : BigInt(boost::multiprecision::numerator(x));
    const BigInt den = boost::multiprecision::denominator(x);
    // Scale both to ~64-bit mantissas, track the power of two separately.
    long shift_n = std::max(0L, bit_length(num) - 63);
    long shift_d = std::max(0L, bit_length(den) - 63);
    const long double n = static_cast<long double>((num >> shift_n).convert_to<std::uint64_t>());
    const long double d = static_cast<long double>((den >> shift_d).convert_to<std::uint64_t>());
    const long double v = std::ldexp(n / d, static_cast<int>(shift_n - shift_d));
    return static_cast<double>(neg ? -v : v);
}

BigInt pow_big(const BigInt& base, unsigned long exp) {
    BigInt result(1), b(base);
    while (exp) {
        if (exp & 1UL) result *= b;
        exp >>= 1UL;
        if (exp) b *= b;
    }
    return result;
}

BigInt iroot_floor(const BigInt& x, unsigned s) {
    if (s == 0) throw std::domain_error("iroot_floor: s must be >= 1");
    if (x < 0) throw std::domain_error("iroot_floor: x must be >= 0");
    if (x == 0 || s == 1) return x;
    BigInt lo(0), hi(1);
    while (pow_big(hi, s) <= x) hi <<= 1;
    // invariant: lo^s <= x < hi^s
    lo = hi >> 1;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (pow_big(mid, s) <= x) lo = mid; else hi = mid;
    }
    return lo;
}

BigRat parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("parse_rational: empty input");

    const auto slash = t.find('/');
    if (slash != std::string::npos) {
        const std::string p = t.substr(0, slash), q = t.substr(slash + 1);
        if (p.empty() || q.empty()) throw std::invalid_argument("parse_rational: malformed fraction '" + text + "'");
        BigInt num(p), den(q);
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        return BigRat(num, den);
    }

    const auto dot = t.find('.');
    if (dot == std::string::npos) return BigRat(BigInt(t));

    bool neg = false;
    std::string digits = t;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    const auto d2 = digits.find('.');
    const std::string ipart = digits.substr(0, d2), fpart = digits.substr(d2 + 1);
    if (ipart.empty() && fpart.empty()) throw std::invalid_argument("parse_rational: malformed decimal '" + text + "'");
    for (char c : ipart)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("parse_rational: bad digit in '" + text + "'");
    for (char c : fpart)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("parse_rational: bad digit in '" + text + "'");
    BigInt num = ipart.empty() ? BigInt(0) : BigInt(ipart);
    BigInt den(1);
    for (char c : fpart) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    if (neg) num = -num;
    return BigRat(num, den);
}

std::string rational_to_string(const BigRat& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string bigint_to_string(const BigInt& x) { return x.str(); }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

} // namespace fractaldim
