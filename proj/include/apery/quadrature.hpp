#pragma once

// Tanh-sinh (double-exponential) quadrature at MPFR precision.
//
// Integrands may take either f(x) or f(x, from_a, to_b), where from_a = x - a and
// to_b = b - x are computed without cancellation. The second form lets callers
// evaluate expressions such as ln(cos(b - x)) accurately next to an endpoint.

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>

#include "apery/precision.hpp"
#include "apery/special_constants.hpp"

namespace apery {

struct QuadratureResult {
    Real value;
    Real abs_error_estimate; // last inter-level difference, at least the rounding floor
    std::size_t nodes_used = 0;
    unsigned levels = 0;
};

struct QuadratureOptions {
    unsigned min_levels = 3;
    unsigned max_levels = 12;
};

namespace detail {

template <class F>
Real call_integrand(F& f, const Real& x, const Real& from_a, const Real& to_b)
{
    if constexpr (std::is_invocable_v<F&, const Real&, const Real&, const Real&>)
        return Real(f(x, from_a, to_b));
    else
        return Real(f(x));
}

} // namespace detail

/// Integrates f over (a, b) with nested tanh-sinh levels h = 2^-level. Stops once
/// the change between levels is within the context's target after `min_levels`.
/// The reported estimate is that change, raised to 16 u sum|w f| h when rounding dominates;
/// throws convergence_error if `max_levels` is exhausted or f is not finite.
template <class F>
QuadratureResult integrate(F&& f, const Real& a, const Real& b, const PrecisionContext& ctx,
                           const QuadratureOptions& options = {})
{
    if (!(b > a))
        throw domain_error("integrate: requires a < b");
    const unsigned bits = ctx.working_bits();
    PrecisionScope scope(bits);

    const Real half_width = (b - a) / 2;
    const Real half_pi = pi(ctx).value / 2;
    const Real target = ctx.target_abs_error();
    // Stop the abscissa ladder where the weights fall below 2^-2(bits+40), far enough
    // for integrands growing like (x - a)^(-1/2) at an endpoint.
    const double u_max = (bits + 40) * 0.6931471805599453;
    const double t_max = std::asinh(u_max / 1.5707963267948966);

    std::size_t nodes = 0;
    Real abs_sum = 0; // sum of |w f| over all nodes, for the rounding floor
    // Contribution of node t (and -t) to the weighted sum.
    auto node = [&](const Real& t) -> Real {
        Real u = half_pi * sinh(t);
        Real e = exp(-2 * abs(u));
        Real denom = 1 + e;
        Real near = 2 * half_width * e / denom; // distance to the nearer endpoint
        Real far = 2 * half_width - near;
        Real weight = half_width * half_pi * cosh(t) * 4 * e / (denom * denom);
        Real fx;
        if (u >= 0) {
            Real x = b - near;
            fx = detail::call_integrand(f, x, far, near);
        } else {
            Real x = a + near;
            fx = detail::call_integrand(f, x, near, far);
        }
        ++nodes;
        if (!isfinite(fx))
            throw convergence_error("integrate: integrand is not finite at t = " + t.str(10));
        Real contribution = weight * fx;
        abs_sum += abs(contribution);
        return contribution;
    };

    // Level 0: integer abscissas.
    Real sum = node(Real(0));
    const long k_max = static_cast<long>(std::floor(t_max));
    for (long k = 1; k <= k_max; ++k) {
        sum += node(Real(k));
        sum += node(Real(-k));
    }
    Real h = 1;
    Real estimate = sum * h;
    Real previous = estimate;
    Real difference = abs(estimate);

    for (unsigned level = 1; level <= options.max_levels; ++level) {
        h /= 2;
        // New abscissas are the odd multiples of h.
        const long count = static_cast<long>(std::floor(t_max / std::ldexp(1.0, -static_cast<int>(level))));
        for (long i = 1; i <= count; i += 2) {
            Real t = h * i;
            sum += node(t);
            sum += node(Real(-t));
        }
        estimate = sum * h;
        difference = abs(estimate - previous);
        previous = estimate;
        if (level >= options.min_levels && difference <= target) {
            Real rounding = 16 * abs_sum * h * ctx.unit_roundoff();
            return {estimate, difference > rounding ? difference : rounding, nodes, level};
        }
    }
    throw convergence_error("integrate: no convergence after " + std::to_string(options.max_levels) +
                            " levels; last difference " + difference.str(3, std::ios::scientific));
}

} // namespace apery
