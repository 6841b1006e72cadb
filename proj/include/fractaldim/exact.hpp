#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fractaldim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Thrown when an enumeration or table would exceed a caller-supplied budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an operation is asked of a schedule kind it does not apply to.
class TypeMismatchError : public std::runtime_error {
public:
    explicit TypeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no usable fit window exists in a scale table.
class FitWindowError : public std::runtime_error {
public:
    explicit FitWindowError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an oracle's committed chain cannot be certified infinite
/// within the allowed inspection horizon.
class InconsistentHorizonError : public std::runtime_error {
public:
    explicit InconsistentHorizonError(const std::string& what) : std::runtime_error(what) {}
};

/// Number of bits in x (x > 0), i.e. floor(log2 x) + 1.
long bit_length(const BigInt& x);

/// Natural log of a positive big integer. Uses the top 64 bits of the
/// mantissa plus the bit length, so the relative error is ~1e-18.
long double log_big(const BigInt& x);

/// Natural log of a positive rational.
long double log_rat(const BigRat& x);

double rat_to_double(const BigRat& x);

BigInt pow_big(const BigInt& base, unsigned long exp);

/// Largest f >= 0 with f^s <= x, for x >= 0 and s >= 1.
BigInt iroot_floor(const BigInt& x, unsigned s);

/// Parse "p/q", an integer, or a decimal literal ("0.3" -> 3/10 exactly).
BigRat parse_rational(const std::string& text);

/// Render as "p" or "p/q" in lowest terms.
std::string rational_to_string(const BigRat& x);

std::string bigint_to_string(const BigInt& x);

/// Deterministic 64-bit FNV-1a, used for config/provenance hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

} // namespace fractaldim
