#pragma once

// pi, Dirichlet beta, Dirichlet eta, the inverse tangent integral Ti_m, and the
// exact integer tables (Euler, Bernoulli) used to cross-check them.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "apery/precision.hpp"

namespace apery {

inline constexpr unsigned kEulerTableLimit = 1000;   // largest 2k accepted by euler_number
inline constexpr unsigned kBernoulliTableLimit = 1000;

/// pi from MPFR's built-in constant, correctly rounded at the working precision.
inline BoundedValue pi(const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.working_bits());
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    Real e = detail::rounding_unit(p);
    return {std::move(p), std::move(e), Rigor::rigorous};
}

/// ln 2 from MPFR's built-in constant. Used only as a reference value.
inline BoundedValue log2_reference(const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.working_bits());
    Real l;
    mpfr_const_log2(l.backend().data(), MPFR_RNDN);
    Real e = detail::rounding_unit(l);
    return {std::move(l), std::move(e), Rigor::rigorous};
}

/// Number of Cohen-Rodriguez Villegas-Zagier terms so that 2/(3+sqrt 8)^n < 2^-bits.
inline unsigned crvz_terms_for_bits(unsigned bits)
{
    // ln 2 / ln(3 + sqrt 8) = 0.39321...
    return static_cast<unsigned>(std::ceil((bits + 2) * 0.39321275480628887)) + 1;
}

/// Sum_{k>=0} (-1)^k a_k by Algorithm 1 of Cohen, Rodriguez Villegas and Zagier.
/// `term` is called once per k in increasing order. When a_k are the moments of
/// a positive measure the truncation error is at most 2 a_0 / (3+sqrt 8)^n.
template <class Term>
Real alternating_sum_crvz(Term&& term, unsigned n)
{
    Real d = pow(3 + sqrt(Real(8)), n);
    d = (d + 1 / d) / 2;
    Real b = -1;
    Real c = -d;
    Real s = 0;
    for (unsigned k = 0; k < n; ++k) {
        c = b - c;
        s += c * term(k);
        // b *= (k+n)(k-n) / ((k+1/2)(k+1)), kept in integers as 2(k+n)(k-n)/((2k+1)(k+1))
        b *= 2 * static_cast<long>(k + n);
        b *= -static_cast<long>(n - k);
        b /= static_cast<long>(2 * k + 1);
        b /= static_cast<long>(k + 1);
    }
    return s / d;
}

namespace detail {

// Evaluates an alternating moment series with the CRVZ bound plus a rounding allowance.
template <class Term>
BoundedValue crvz_bounded(Term&& term, const Real& first_term, const PrecisionContext& ctx)
{
    unsigned n = crvz_terms_for_bits(ctx.working_bits());
    unsigned inner_bits = ctx.working_bits() + 16 + static_cast<unsigned>(std::log2(n + 1.0)) * 2;
    BoundedValue out;
    {
        PrecisionScope scope(inner_bits);
        Real sum = alternating_sum_crvz(term, n);
        Real truncation = 2 * abs(first_term) / pow(3 + sqrt(Real(8)), n);
        Real rounding = abs(first_term) * (4 * n + 8) * ldexp(Real(1), -static_cast<int>(inner_bits) + 1);
        out.value = std::move(sum);
        out.abs_error_bound = truncation + rounding;
    }
    out.rigor = Rigor::rigorous;
    return out;
}

} // namespace detail

/// Secant Euler number E_{2k}, from sum_{j=0}^{k} C(2k,2j) E_{2j} = 0, E_0 = 1.
inline std::vector<Integer> euler_numbers_upto(unsigned k)
{
    if (2 * static_cast<std::uint64_t>(k) > kEulerTableLimit)
        throw capacity_error("euler_number: 2k = " + std::to_string(2ull * k) + " exceeds table limit " +
                             std::to_string(kEulerTableLimit));
    std::vector<Integer> e(k + 1);
    e[0] = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // binom(2i, 2j) walked incrementally in j
        Integer binom = 1;
        Integer acc = 0;
        for (unsigned j = 0; j < i; ++j) {
            acc += binom * e[j];
            unsigned top = 2 * i - 2 * j;
            binom = binom * top * (top - 1) / ((2 * j + 1) * (2 * j + 2));
        }
        e[i] = -acc;
    }
    return e;
}

inline Integer euler_number(unsigned k) { return euler_numbers_upto(k).back(); }

/// Bernoulli numbers B_0..B_n (B_1 = -1/2) from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<Rational> bernoulli_numbers_upto(unsigned n)
{
    if (n > kBernoulliTableLimit)
        throw capacity_error("bernoulli: index exceeds table limit");
    std::vector<Rational> b(n + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        Integer binom = 1; // C(m+1, j)
        Rational acc = 0;
        for (unsigned j = 0; j < m; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -acc / Rational(m + 1);
    }
    return b;
}

/// beta(2k+1) = (-1)^k E_{2k} / (2 (2k)!) * (pi/2)^(2k+1). Classical closed form,
/// used as an independent oracle for the accelerated series.
inline BoundedValue beta_odd_closed_form(unsigned m, const PrecisionContext& ctx)
{
    if (m % 2 == 0)
        throw domain_error("beta_odd_closed_form: m must be odd");
    unsigned k = (m - 1) / 2;
    Integer e = euler_number(k);
    Integer fact = 1;
    for (unsigned i = 2; i <= 2 * k; ++i)
        fact *= i;
    Rational coeff(e, 2 * fact);
    if (k % 2 == 1)
        coeff = -coeff;
    auto fine = ctx.with_extra_bits(16);
    BoundedValue p = pi(fine);
    PrecisionScope scope(fine.working_bits());
    Real half_pi_pow = pow(p.value / 2, m);
    // relative error of pi propagates m-fold through the power
    Real e_pow = half_pi_pow * (p.abs_error_bound / p.value) * (m + 1) + detail::rounding_unit(half_pi_pow) * m;
    return Rational(coeff) * BoundedValue{half_pi_pow, e_pow, Rigor::rigorous};
}

/// The accelerated series for beta(m) alone, without the odd-m cross-check.
inline BoundedValue beta_series(unsigned m, const PrecisionContext& ctx)
{
    if (m == 0)
        throw domain_error("beta: m = 0 gives a divergent series");
    return detail::crvz_bounded(
        [m](unsigned k) { return Real(1) / pow(Real(2 * static_cast<std::uint64_t>(k) + 1), m); }, Real(1), ctx);
}

/// Dirichlet beta(m) = sum_{k>=1} (-1)^(k-1)/(2k-1)^m by CRVZ acceleration. For odd m
/// the result is checked against the Euler-number closed form; disagreement beyond
/// the combined bounds throws consistency_error.
inline BoundedValue beta(unsigned m, const PrecisionContext& ctx)
{
    BoundedValue series = beta_series(m, ctx);
    if (m % 2 == 1 && m <= kEulerTableLimit + 1) {
        BoundedValue closed = beta_odd_closed_form(m, ctx);
        PrecisionScope scope(ctx.working_bits() + 16);
        if (abs(series.value - closed.value) > series.abs_error_bound + closed.abs_error_bound)
            throw consistency_error("beta(" + std::to_string(m) +
                                    "): accelerated series disagrees with Euler-number closed form");
    }
    return series;
}

inline BoundedValue catalan(const PrecisionContext& ctx) { return beta(2, ctx); }

/// Dirichlet eta(s) = sum_{k>=1} (-1)^(k-1)/k^s by CRVZ acceleration.
inline BoundedValue eta(unsigned s, const PrecisionContext& ctx)
{
    if (s == 0)
        throw domain_error("eta: s = 0 is outside the supported domain");
    return detail::crvz_bounded(
        [s](unsigned k) { return Real(1) / pow(Real(static_cast<std::uint64_t>(k) + 1), s); }, Real(1), ctx);
}

/// Inverse tangent integral Ti_m(x) = sum_{k>=1} (-1)^(k-1) x^(2k-1)/(2k-1)^m for |x| <= 1.
inline BoundedValue ti(unsigned m, const Real& x, const PrecisionContext& ctx)
{
    if (m == 0)
        throw domain_error("ti: order must be positive");
    if (abs(x) > 1)
        throw domain_error("ti: |x| > 1 is outside the domain");
    if (x == 0)
        return BoundedValue::exact(Real(0));
    if (x < 0) {
        Real neg = -x;
        return -ti(m, neg, ctx);
    }
    BoundedValue out;
    {
        // power of x carried across calls; terms are requested in order
        PrecisionScope scope(ctx.working_bits() + 48);
        Real x2 = x * x;
        Real power = x;
        out = detail::crvz_bounded(
            [&, m](unsigned k) {
                if (k > 0)
                    power *= x2;
                return power / pow(Real(2 * static_cast<std::uint64_t>(k) + 1), m);
            },
            x, ctx);
    }
    return out;
}

/// beta(m) by direct summation of (4k+1)^-m - (4k+3)^-m plus an Euler-Maclaurin tail.
/// Shares nothing with the accelerated route beyond basic arithmetic; the bound is
/// the size of the first omitted correction and is therefore heuristic.
inline BoundedValue beta_euler_maclaurin(unsigned m, const PrecisionContext& ctx)
{
    if (m == 0)
        throw domain_error("beta_euler_maclaurin: m must be positive");
    const unsigned bits = ctx.working_bits() + 24;
    const unsigned cutoff = std::max(20u, bits / 2);
    const unsigned max_corrections = std::min(cutoff, 64u);
    auto bern = bernoulli_numbers_upto(2 * max_corrections + 2);

    PrecisionScope scope(bits);
    Real head = 0;
    for (unsigned k = 0; k < cutoff; ++k) {
        head += Real(1) / pow(Real(4 * k + 1), m);
        head -= Real(1) / pow(Real(4 * k + 3), m);
    }
    const Real a1 = 4 * Real(cutoff) + 1;
    const Real a3 = 4 * Real(cutoff) + 3;
    Real tail;
    if (m == 1)
        tail = log(a3 / a1) / 4;
    else
        tail = (pow(a1, 1 - static_cast<int>(m)) - pow(a3, 1 - static_cast<int>(m))) / (4 * (m - 1));
    tail += (pow(a1, -static_cast<int>(m)) - pow(a3, -static_cast<int>(m))) / 2;

    // r-th derivative of (4x+a)^-m is (-4)^r (m)_r (4x+a)^(-m-r)
    const Real eps = ldexp(Real(1), -static_cast<int>(bits));
    Real rising = m;                 // (m)_r for r = 1
    Real factorial = 2;              // (2i)! for i = 1
    Real four_pow = -4;              // (-4)^r for r = 1
    Real last = 0;
    Real previous_size = -1;
    for (unsigned i = 1; i <= max_corrections; ++i) {
        unsigned r = 2 * i - 1;
        Real deriv = four_pow * rising *
                     (pow(a1, -static_cast<int>(m + r)) - pow(a3, -static_cast<int>(m + r)));
        Real correction = Real(bern[2 * i]) / factorial * deriv;
        Real size = abs(correction);
        if (previous_size >= 0 && size > previous_size)
            break; // asymptotic series started to diverge
        tail -= correction;
        last = size;
        previous_size = size;
        if (size < eps * abs(head))
            break;
        // advance r by 2
        rising *= Real(m + r) * (m + r + 1);
        four_pow *= 16;
        factorial *= Real(2 * i + 1) * (2 * i + 2);
    }
    Real value = head + tail;
    Real bound = 2 * last + detail::rounding_unit(value) * (2 * cutoff + 8);
    return {std::move(value), std::move(bound), Rigor::heuristic};
}

/// Immutable table of beta(1..max_order).
class BetaTable {
public:
    BetaTable(unsigned max_order, const PrecisionContext& ctx) : context_(ctx)
    {
        if (max_order == 0)
            throw domain_error("BetaTable: max_order must be positive");
        values_.reserve(max_order);
        for (unsigned m = 1; m <= max_order; ++m)
            values_.push_back(beta(m, ctx));
    }

    unsigned max_order() const { return static_cast<unsigned>(values_.size()); }
    const PrecisionContext& context() const { return context_; }

    /// 1-based, matching beta(m).
    const BoundedValue& operator[](unsigned m) const
    {
        if (m == 0 || m > values_.size())
            throw domain_error("BetaTable: order out of range");
        return values_[m - 1];
    }

private:
    PrecisionContext context_;
    std::vector<BoundedValue> values_;
};

} // namespace apery
