#pragma once

// Odd harmonic numbers O_n^(m), alternating odd harmonic numbers, and the star
// sums t*_n({2}_j) (odd denominators) and zeta*_n({2}_j) (all denominators),
// streamed in n. Works over exact rationals or MPFR reals.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "apery/precision.hpp"

namespace apery {

inline constexpr std::uint64_t kDefaultExactCap = 200;
inline constexpr unsigned kBruteForceMaxN = 30;
inline constexpr unsigned kBruteForceMaxDepth = 6;

/// Streaming state at index n. `Value` is Rational (exact mode) or Real.
///
/// t_star[j] = t*_n({2}_j) and zeta_star[j] = zeta*_n({2}_j) for j = 0..depth, with
/// the conventions t*_n(empty) = 1 for all n >= 0 and t*_0({2}_j) = 0 for j >= 1.
/// odd_harmonics[i] = O_n^(orders[i]) and alt_odd_harmonics[i] the alternating variant.
template <class Value>
struct HarmonicState {
    std::uint64_t n = 0;
    std::vector<unsigned> orders;
    std::vector<Value> odd_harmonics;
    std::vector<Value> alt_odd_harmonics;
    std::vector<Value> t_star;
    std::vector<Value> zeta_star;
    /// Largest n the state may be advanced to.
    std::uint64_t max_n = std::numeric_limits<std::uint64_t>::max();
    /// Working precision for floating mode; unused in exact mode.
    unsigned working_bits = 0;

    unsigned depth() const { return static_cast<unsigned>(t_star.size() - 1); }
};

using ExactHarmonicState = HarmonicState<Rational>;
using FloatHarmonicState = HarmonicState<Real>;

namespace detail {

template <class Value>
Value reciprocal_power(std::uint64_t base, unsigned m)
{
    if constexpr (std::is_same_v<Value, Rational>) {
        Integer p = 1;
        for (unsigned i = 0; i < m; ++i)
            p *= base;
        return Rational(Integer(1), p);
    } else {
        if (m == 2 && base < (std::uint64_t{1} << 31))
            return Value(1) / Value(base * base);
        return Value(1) / pow(Value(base), m);
    }
}

template <class Value>
HarmonicState<Value> initial_state(unsigned depth, std::vector<unsigned> orders)
{
    for (unsigned m : orders)
        if (m == 0)
            throw domain_error("HarmonicState: harmonic orders must be positive");
    HarmonicState<Value> s;
    s.orders = std::move(orders);
    s.odd_harmonics.assign(s.orders.size(), Value(0));
    s.alt_odd_harmonics.assign(s.orders.size(), Value(0));
    s.t_star.assign(depth + 1, Value(0));
    s.zeta_star.assign(depth + 1, Value(0));
    s.t_star[0] = 1;
    s.zeta_star[0] = 1;
    return s;
}

} // namespace detail

/// Exact-mode state at n = 0. Advancing beyond `cap` throws capacity_error.
inline ExactHarmonicState make_exact_state(unsigned depth, std::vector<unsigned> orders = {},
                                           std::uint64_t cap = kDefaultExactCap)
{
    auto s = detail::initial_state<Rational>(depth, std::move(orders));
    s.max_n = cap;
    return s;
}

/// Floating-mode state at n = 0, evaluated at the context's working precision.
inline FloatHarmonicState make_float_state(unsigned depth, const PrecisionContext& ctx,
                                           std::vector<unsigned> orders = {})
{
    PrecisionScope scope(ctx.working_bits());
    auto s = detail::initial_state<Real>(depth, std::move(orders));
    s.working_bits = ctx.working_bits();
    return s;
}

/// n -> n+1 in place. Cost O(depth + #orders).
template <class Value>
void advance_in_place(HarmonicState<Value>& s)
{
    if (s.n >= s.max_n)
        throw capacity_error("HarmonicState: advancing past n = " + std::to_string(s.max_n) +
                             " exceeds the configured cap");
    std::conditional_t<std::is_same_v<Value, Real>, PrecisionScope, int> scope(s.working_bits);
    (void)scope;

    const std::uint64_t next = s.n + 1;
    const std::uint64_t odd = 2 * next - 1;
    const bool negative = (s.n % 2) == 1; // sign (-1)^(next-1)

    for (std::size_t i = 0; i < s.orders.size(); ++i) {
        Value r = detail::reciprocal_power<Value>(odd, s.orders[i]);
        s.odd_harmonics[i] += r;
        if (negative)
            s.alt_odd_harmonics[i] -= r;
        else
            s.alt_odd_harmonics[i] += r;
    }

    // Ascending in depth: the update at depth j uses the already-updated entry j-1,
    // i.e. t*_{n+1}({2}_j) = t*_n({2}_j) + t*_{n+1}({2}_{j-1}) / (2n+1)^2.
    if (s.t_star.size() > 1) {
        const Value inv_odd = detail::reciprocal_power<Value>(odd, 2);
        const Value inv_all = detail::reciprocal_power<Value>(next, 2);
        for (std::size_t j = 1; j < s.t_star.size(); ++j) {
            s.t_star[j] += s.t_star[j - 1] * inv_odd;
            s.zeta_star[j] += s.zeta_star[j - 1] * inv_all;
        }
    }
    s.n = next;
}

template <class Value>
HarmonicState<Value> advance(HarmonicState<Value> s)
{
    advance_in_place(s);
    return s;
}

/// Exact state advanced to index n.
inline ExactHarmonicState exact_state_at(std::uint64_t n, unsigned depth, std::vector<unsigned> orders = {},
                                         std::uint64_t cap = kDefaultExactCap)
{
    auto s = make_exact_state(depth, std::move(orders), cap);
    while (s.n < n)
        advance_in_place(s);
    return s;
}

namespace detail {

// Enumerates every tuple n >= k_1 >= ... >= k_j >= 1 and sums prod 1/d(k_i) exactly.
// Each 1/d(k) is written as q_k / M with M = lcm d(k), so the sum is an integer over M^j.
template <class Denominator>
Rational star_sum_bruteforce(unsigned n, unsigned j, Denominator denominator, const char* name)
{
    if (n > kBruteForceMaxN || j > kBruteForceMaxDepth)
        throw capacity_error(std::string(name) + ": enumeration limited to n <= " +
                             std::to_string(kBruteForceMaxN) + ", j <= " + std::to_string(kBruteForceMaxDepth));
    if (j == 0)
        return Rational(1);
    if (n == 0)
        return Rational(0);

    Integer lcm = 1;
    for (unsigned k = 1; k <= n; ++k)
        lcm = boost::multiprecision::lcm(lcm, Integer(denominator(k)));
    std::vector<Integer> q(n + 1);
    for (unsigned k = 1; k <= n; ++k)
        q[k] = lcm / denominator(k);

    Integer total = 0;
    auto recurse = [&](auto&& self, unsigned level, unsigned upper, const Integer& product) -> void {
        for (unsigned k = 1; k <= upper; ++k) {
            if (level + 1 == j)
                total += product * q[k];
            else
                self(self, level + 1, k, Integer(product * q[k]));
        }
    };
    recurse(recurse, 0, n, Integer(1));

    Integer scale = 1;
    for (unsigned i = 0; i < j; ++i)
        scale *= lcm;
    return Rational(total, scale);
}

} // namespace detail

/// t*_n({2}_j) by direct enumeration of the nested sum (oracle; n <= 30, j <= 6).
inline Rational t_star_bruteforce(unsigned n, unsigned j)
{
    return detail::star_sum_bruteforce(
        n, j, [](unsigned k) { return std::uint64_t(2 * k - 1) * (2 * k - 1); }, "t_star_bruteforce");
}

/// zeta*_n({2}_j) by direct enumeration of the nested sum (oracle; n <= 30, j <= 6).
inline Rational zeta_star_bruteforce(unsigned n, unsigned j)
{
    return detail::star_sum_bruteforce(
        n, j, [](unsigned k) { return std::uint64_t(k) * k; }, "zeta_star_bruteforce");
}

/// Outcome of checking one polynomial reduction of t*_n({2}_depth).
struct PolyIdentityCheck {
    unsigned depth = 0;
    Rational lhs;  // t*_n({2}_depth) from the streaming recurrence
    Rational rhs;  // polynomial in O_n^(2), O_n^(4), O_n^(6)
    bool holds = false;
};

struct PolyCheckResult {
    std::uint64_t n = 0;
    std::vector<PolyIdentityCheck> identities;

    bool all_hold() const
    {
        return std::all_of(identities.begin(), identities.end(), [](const auto& c) { return c.holds; });
    }

    std::string failure_detail() const
    {
        std::string out;
        for (const auto& c : identities)
            if (!c.holds)
                out += "n=" + std::to_string(n) + " depth=" + std::to_string(c.depth) + ": " + c.lhs.str() +
                       " != " + c.rhs.str() + "\n";
        return out;
    }
};

/// Checks t*_n({2}_2) = ((O^(2))^2 + O^(4))/2 and
/// t*_n({2}_3) = ((O^(2))^3 + 3 O^(2) O^(4) + 2 O^(6))/6 in exact arithmetic.
inline PolyCheckResult t_star_poly_check(std::uint64_t n, std::uint64_t cap = kDefaultExactCap)
{
    auto s = exact_state_at(n, 3, {2, 4, 6}, cap);
    const Rational& o2 = s.odd_harmonics[0];
    const Rational& o4 = s.odd_harmonics[1];
    const Rational& o6 = s.odd_harmonics[2];

    PolyCheckResult result;
    result.n = n;
    Rational rhs2 = (o2 * o2 + o4) / 2;
    result.identities.push_back({2, s.t_star[2], rhs2, s.t_star[2] == rhs2});
    Rational rhs3 = (o2 * o2 * o2 + 3 * o2 * o4 + 2 * o6) / 6;
    result.identities.push_back({3, s.t_star[3], rhs3, s.t_star[3] == rhs3});
    return result;
}

} // namespace apery
