#pragma once

// Precision contract shared by every numeric routine in the library.
//
// All floating arithmetic uses MPFR through Boost.Multiprecision. Precision is
// never taken from ambient state: each public operation receives a
// PrecisionContext and opens a PrecisionScope for the duration of the call.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace apery {

using Real = boost::multiprecision::mpfr_float;
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Requested precision or table size exceeds a configured ceiling.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative scheme (quadrature, extrapolation) failed to settle.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent evaluation routes disagreed beyond their combined bounds.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr unsigned kDefaultGuardBits = 32;
inline constexpr unsigned kDefaultDigitCeiling = 10000;

/// ceil(digits * log2(10)).
inline unsigned bits_for_digits(unsigned digits)
{
    // 3.3219280948873623 = log2(10); the product is never an exact integer for digits > 0.
    return static_cast<unsigned>(std::ceil(static_cast<double>(digits) * 3.3219280948873623));
}

inline unsigned precision_bits(const Real& x)
{
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

/// Sets the default MPFR precision for the lifetime of the scope and restores
/// the previous value on exit. Scopes nest.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : previous_digits10_(Real::default_precision())
    {
        // Boost sizes mpfr_float in decimal digits; round up so that at least `bits` are allocated.
        auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
        Real::default_precision(digits10);
    }
    ~PrecisionScope() { Real::default_precision(previous_digits10_); }

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_digits10_;
};

class PrecisionContext {
public:
    PrecisionContext(unsigned working_bits, unsigned decimal_digits, unsigned guard_bits)
        : working_bits_(working_bits), decimal_digits_(decimal_digits), guard_bits_(guard_bits)
    {
        if (decimal_digits_ == 0)
            throw domain_error("PrecisionContext: target_abs_error must be positive and below 1");
        if (working_bits_ < bits_for_digits(decimal_digits_) + guard_bits_)
            throw domain_error("PrecisionContext: working_bits below digits*log2(10) + guard_bits");
    }

    unsigned working_bits() const { return working_bits_; }
    unsigned guard_bits() const { return guard_bits_; }
    unsigned decimal_digits() const { return decimal_digits_; }

    /// 10^-decimal_digits, evaluated at the context's working precision.
    Real target_abs_error() const
    {
        PrecisionScope scope(working_bits_);
        return pow(Real(10), -static_cast<int>(decimal_digits_));
    }

    /// Unit roundoff 2^(1 - working_bits).
    Real unit_roundoff() const
    {
        PrecisionScope scope(working_bits_);
        return ldexp(Real(1), 1 - static_cast<int>(working_bits_));
    }

    /// Same target, more working bits.
    PrecisionContext with_extra_bits(unsigned extra) const
    {
        return {working_bits_ + extra, decimal_digits_, guard_bits_};
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    unsigned working_bits_;
    unsigned decimal_digits_;
    unsigned guard_bits_;
};

struct ContextOptions {
    unsigned guard_bits = kDefaultGuardBits;
    unsigned digit_ceiling = kDefaultDigitCeiling;
};

inline PrecisionContext make_context(unsigned decimal_digits, const ContextOptions& options = {})
{
    if (decimal_digits == 0)
        throw capacity_error("make_context: at least one decimal digit is required");
    if (decimal_digits > options.digit_ceiling)
        throw capacity_error("make_context: " + std::to_string(decimal_digits) +
                             " digits exceeds the ceiling of " + std::to_string(options.digit_ceiling));
    unsigned guard = std::max(options.guard_bits, kDefaultGuardBits);
    return {bits_for_digits(decimal_digits) + guard, decimal_digits, guard};
}

enum class Rigor { rigorous, heuristic };

inline Rigor combine(Rigor a, Rigor b)
{
    return (a == Rigor::heuristic || b == Rigor::heuristic) ? Rigor::heuristic : Rigor::rigorous;
}

inline const char* to_string(Rigor r) { return r == Rigor::rigorous ? "rigorous" : "heuristic"; }

/// A value together with an absolute error bound. Arithmetic propagates the
/// bound first-order-exactly and adds one rounding unit of the result.
struct BoundedValue {
    Real value;
    Real abs_error_bound;
    Rigor rigor = Rigor::rigorous;

    static BoundedValue exact(Real v)
    {
        Real zero = 0;
        return {std::move(v), std::move(zero), Rigor::rigorous};
    }

    /// True when |other - value| is within this bound plus `slack`.
    bool contains(const Real& other, const Real& slack = Real(0)) const
    {
        return abs(other - value) <= abs_error_bound + slack;
    }
};

namespace detail {

inline Real rounding_unit(const Real& result)
{
    return abs(result) * ldexp(Real(1), 1 - static_cast<int>(precision_bits(result)));
}

} // namespace detail

inline BoundedValue operator+(const BoundedValue& a, const BoundedValue& b)
{
    Real v = a.value + b.value;
    Real e = a.abs_error_bound + b.abs_error_bound + detail::rounding_unit(v);
    return {std::move(v), std::move(e), combine(a.rigor, b.rigor)};
}

inline BoundedValue operator-(const BoundedValue& a)
{
    return {Real(-a.value), a.abs_error_bound, a.rigor};
}

inline BoundedValue operator-(const BoundedValue& a, const BoundedValue& b) { return a + (-b); }

inline BoundedValue operator*(const BoundedValue& a, const BoundedValue& b)
{
    Real v = a.value * b.value;
    Real e = abs(a.value) * b.abs_error_bound + abs(b.value) * a.abs_error_bound +
             a.abs_error_bound * b.abs_error_bound + detail::rounding_unit(v);
    return {std::move(v), std::move(e), combine(a.rigor, b.rigor)};
}

/// Scaling by an exact rational.
inline BoundedValue operator*(const Rational& q, const BoundedValue& a)
{
    Real qr(q);
    Real v = qr * a.value;
    Real e = abs(qr) * a.abs_error_bound + detail::rounding_unit(v) * 2;
    return {std::move(v), std::move(e), a.rigor};
}

} // namespace apery
