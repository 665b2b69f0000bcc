#pragma once

// The two Apery-like families
//   theorem1:  sum_{n>=1} 4^n / (n^2 C(2n,n)) * t*_n({2}_j)
//   gencev:    sum_{n>=1} C(2n,n) / (n 4^n)   * zeta*_n({2}_j)
// summed by streaming the weight recurrence together with the harmonic state,
// then extrapolated with half-power Richardson elimination.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apery/extrapolation.hpp"
#include "apery/harmonic_sums.hpp"
#include "apery/precision.hpp"

namespace apery {

inline constexpr unsigned kMaxSeriesDepth = 6;

enum class SeriesTag { theorem1, gencev };

inline const char* to_string(SeriesTag tag) { return tag == SeriesTag::theorem1 ? "theorem1" : "gencev"; }

struct SeriesFamily {
    SeriesTag tag = SeriesTag::theorem1;
    unsigned depth = 0;

    friend bool operator==(const SeriesFamily&, const SeriesFamily&) = default;
};

inline SeriesFamily make_family(SeriesTag tag, unsigned depth, unsigned max_depth = kMaxSeriesDepth)
{
    if (depth > max_depth)
        throw capacity_error("series depth j = " + std::to_string(depth) + " exceeds the maximum " +
                             std::to_string(max_depth));
    return {tag, depth};
}

namespace detail {

inline Integer central_binomial(std::uint64_t n)
{
    Integer c = 1;
    for (std::uint64_t k = 1; k <= n; ++k)
        c = c * (n + k) / k;
    return c;
}

inline Integer power_of_four(std::uint64_t n)
{
    Integer p = 1;
    p <<= static_cast<unsigned>(2 * n);
    return p;
}

} // namespace detail

/// c_n = 4^n / (n^2 C(2n,n)), from factorials.
inline Rational weight_theorem1(std::uint64_t n)
{
    if (n == 0)
        throw domain_error("weight_theorem1: n must be positive");
    return Rational(detail::power_of_four(n), Integer(n) * n * detail::central_binomial(n));
}

/// c_{n+1} = c_n * 2n^2 / ((n+1)(2n+1)).
template <class V>
V next_weight_theorem1(const V& c, std::uint64_t n)
{
    V out = c * V(2 * n * n);
    out /= V((n + 1) * (2 * n + 1));
    return out;
}

/// d_n = C(2n,n) / (n 4^n), from factorials.
inline Rational weight_gencev(std::uint64_t n)
{
    if (n == 0)
        throw domain_error("weight_gencev: n must be positive");
    return Rational(detail::central_binomial(n), Integer(n) * detail::power_of_four(n));
}

/// d_{n+1} = d_n * n(2n+1) / (2 (n+1)^2).
template <class V>
V next_weight_gencev(const V& d, std::uint64_t n)
{
    V out = d * V(n * (2 * n + 1));
    out /= V(2 * (n + 1) * (n + 1));
    return out;
}

/// Working precision for summing up to `max_terms` terms: the caller's bits plus
/// 10 guard digits plus log10(max_terms) digits.
inline PrecisionContext summation_context(const PrecisionContext& ctx, std::uint64_t max_terms)
{
    double extra_digits = 10.0 + std::log10(static_cast<double>(std::max<std::uint64_t>(max_terms, 1)));
    return ctx.with_extra_bits(static_cast<unsigned>(std::ceil(extra_digits * 3.3219280948873623)));
}

struct Checkpoint {
    std::uint64_t n;
    Real partial_sum;
};

struct PartialSumTrace {
    SeriesFamily family;
    std::vector<Checkpoint> checkpoints;
    PrecisionContext context;
    /// Accumulated rounding bound of the last checkpoint.
    Real rounding_bound;
};

/// Streams partial sums S_n of one family at a fixed working precision.
class SeriesStream {
public:
    SeriesStream(SeriesFamily family, const PrecisionContext& ctx)
        : family_(family), context_(ctx), state_(make_float_state(family.depth, ctx))
    {
        PrecisionScope scope(ctx.working_bits());
        weight_ = family.tag == SeriesTag::theorem1 ? Real(2) : Real(1) / 2;
        sum_ = 0;
    }

    std::uint64_t n() const { return state_.n; }
    const SeriesFamily& family() const { return family_; }
    const Real& partial_sum() const { return sum_; }

    void advance_to(std::uint64_t target)
    {
        PrecisionScope scope(context_.working_bits());
        const bool theorem1 = family_.tag == SeriesTag::theorem1;
        const unsigned j = family_.depth;
        while (state_.n < target) {
            advance_in_place(state_);
            const std::uint64_t n = state_.n;
            sum_ += weight_ * (theorem1 ? state_.t_star[j] : state_.zeta_star[j]);
            if (theorem1) {
                weight_ *= 2 * n * n;
                weight_ /= (n + 1) * (2 * n + 1);
            } else {
                weight_ *= n * (2 * n + 1);
                weight_ /= 2 * (n + 1) * (n + 1);
            }
        }
    }

    /// Each term carries O(n) roundings from the streamed weight and star sum.
    Real rounding_bound() const
    {
        PrecisionScope scope(context_.working_bits());
        Real n = static_cast<double>(state_.n);
        return abs(sum_) * (n + 1) * (2 * family_.depth + 8) * context_.unit_roundoff();
    }

private:
    SeriesFamily family_;
    PrecisionContext context_;
    FloatHarmonicState state_;
    Real weight_;
    Real sum_;
};

/// Partial sums at explicit, strictly increasing checkpoints.
inline PartialSumTrace partial_sum(SeriesFamily family, std::span<const std::uint64_t> checkpoints,
                                   const PrecisionContext& ctx)
{
    if (checkpoints.empty() || checkpoints.front() == 0)
        throw domain_error("partial_sum: checkpoints must be positive");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw domain_error("partial_sum: checkpoints must be strictly increasing");

    auto sum_ctx = summation_context(ctx, checkpoints.back());
    SeriesStream stream(family, sum_ctx);
    PartialSumTrace trace{family, {}, sum_ctx, Real(0)};
    for (auto n : checkpoints) {
        stream.advance_to(n);
        PrecisionScope scope(sum_ctx.working_bits());
        trace.checkpoints.push_back({n, stream.partial_sum()});
    }
    trace.rounding_bound = stream.rounding_bound();
    if (trace.rounding_bound > ctx.target_abs_error())
        throw capacity_error("partial_sum: accumulated rounding exceeds the target error; raise the precision");
    return trace;
}

struct CheckpointPolicy {
    std::uint64_t ratio = 2;
    std::uint64_t min_checkpoint = 8;
};

/// Partial sums up to N, recording N, N/r, N/r^2, ... while the quotient is exact
/// and at least `min_checkpoint`.
inline PartialSumTrace partial_sum(SeriesFamily family, std::uint64_t N, const PrecisionContext& ctx,
                                   const CheckpointPolicy& policy = {})
{
    if (N == 0)
        throw domain_error("partial_sum: N must be positive");
    if (policy.ratio < 2)
        throw domain_error("partial_sum: checkpoint ratio must be at least 2");
    std::vector<std::uint64_t> ladder{N};
    while (ladder.back() % policy.ratio == 0 && ladder.back() / policy.ratio >= policy.min_checkpoint)
        ladder.push_back(ladder.back() / policy.ratio);
    std::reverse(ladder.begin(), ladder.end());
    return partial_sum(family, std::span<const std::uint64_t>(ladder), ctx);
}

/// Series limit from a checkpoint trace with a constant integer ratio. The bound
/// is heuristic: the Richardson stage difference plus an allowance for rounding.
inline BoundedValue extrapolate(const PartialSumTrace& trace)
{
    const auto& cps = trace.checkpoints;
    if (cps.size() < 4)
        throw domain_error("extrapolate: at least 4 checkpoints are required");
    const std::uint64_t ratio = cps[1].n / cps[0].n;
    for (std::size_t i = 1; i < cps.size(); ++i)
        if (cps[i].n != cps[i - 1].n * ratio)
            throw domain_error("extrapolate: checkpoints must form a geometric ladder");

    PrecisionScope scope(trace.context.working_bits());
    std::vector<Real> sums;
    sums.reserve(cps.size());
    for (const auto& c : cps)
        sums.push_back(c.partial_sum);
    auto est = richardson_half_powers(std::span<const Real>(sums), Real(static_cast<double>(ratio)));
    Real bound = est.error_estimate + 32 * trace.rounding_bound;
    return {std::move(est.value), std::move(bound), Rigor::heuristic};
}

struct SummationOptions {
    std::uint64_t first_checkpoint = 16;
    std::uint64_t ratio = 2;
    std::uint64_t max_terms = std::uint64_t{1} << 21;
    std::size_t min_checkpoints = 6;
};

struct SeriesResult {
    BoundedValue value;
    PartialSumTrace trace;
};

/// Extends the checkpoint ladder until the extrapolation bound meets the context's
/// target or `max_terms` is reached; in the latter case the last estimate is returned
/// with its (larger) bound, or convergence_error if the last extrapolation failed.
inline SeriesResult sum_series(SeriesFamily family, const PrecisionContext& ctx, const SummationOptions& options = {})
{
    if (options.first_checkpoint == 0 || options.ratio < 2 || options.min_checkpoints < 4)
        throw domain_error("sum_series: invalid summation options");
    auto sum_ctx = summation_context(ctx, options.max_terms);
    const Real target = ctx.target_abs_error();
    SeriesStream stream(family, sum_ctx);
    PartialSumTrace trace{family, {}, sum_ctx, Real(0)};

    std::optional<BoundedValue> best;
    std::optional<std::string> failure;
    for (std::uint64_t n = options.first_checkpoint; n <= options.max_terms; n *= options.ratio) {
        stream.advance_to(n);
        {
            PrecisionScope scope(sum_ctx.working_bits());
            trace.checkpoints.push_back({n, stream.partial_sum()});
            trace.rounding_bound = stream.rounding_bound();
        }
        if (trace.checkpoints.size() < options.min_checkpoints)
            continue;
        try {
            best = extrapolate(trace);
            failure.reset();
        } catch (const convergence_error& e) {
            failure = e.what();
            continue;
        }
        if (best->abs_error_bound <= target)
            break;
    }
    if (failure)
        throw convergence_error("sum_series: " + *failure);
    if (!best)
        throw domain_error("sum_series: max_terms admits too few checkpoints");
    return {std::move(*best), std::move(trace)};
}

} // namespace apery
