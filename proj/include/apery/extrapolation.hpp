#pragma once

// Richardson elimination for sequences whose error expands in half-odd powers
// of 1/N:  S - S_N = N^(-1/2) (a_0 + a_1/N + a_2/N^2 + ...),
// sampled on a geometric checkpoint ladder N_{i+1} = r N_i.

#include <cstddef>
#include <iomanip>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "apery/precision.hpp"

namespace apery {

template <class T>
struct RichardsonEstimate {
    T value;
    T error_estimate;
    /// Elimination stage the estimate was taken from (0 = raw partial sum).
    std::size_t stage = 0;
    /// |T_{L,k} - T_{L,k-1}| for k = 1..L along the last row.
    std::vector<T> stage_differences;
};

/// Full elimination table. Row i uses checkpoints 0..i; column k has removed the
/// N^-(1/2), ..., N^-(k-1/2) terms. Returns rows as vectors of length i+1.
template <class T>
std::vector<std::vector<T>> richardson_half_power_table(std::span<const T> sums, const T& ratio)
{
    using std::sqrt;
    std::vector<std::vector<T>> table(sums.size());
    const T root = sqrt(ratio);
    for (std::size_t i = 0; i < sums.size(); ++i) {
        table[i].reserve(i + 1);
        table[i].push_back(sums[i]);
        T factor = ratio / root; // r^(k - 1/2) for k = 1
        for (std::size_t k = 1; k <= i; ++k) {
            const T& newer = table[i][k - 1];
            const T& older = table[i - 1][k - 1];
            table[i].push_back((factor * newer - older) / (factor - 1));
            factor *= ratio;
        }
    }
    return table;
}

namespace detail {

// Stage with the smallest change from its predecessor along one table row, and
// that change widened to the next stage's change when one exists.
template <class T>
RichardsonEstimate<T> select_stage(const std::vector<T>& row)
{
    using std::abs;
    const std::size_t stages = row.size() - 1;
    RichardsonEstimate<T> out;
    for (std::size_t k = 1; k <= stages; ++k)
        out.stage_differences.push_back(abs(row[k] - row[k - 1]));
    std::size_t best = 0;
    for (std::size_t k = 1; k < stages; ++k)
        if (out.stage_differences[k] < out.stage_differences[best])
            best = k;
    out.stage = best + 1;
    out.value = row[out.stage];
    out.error_estimate = out.stage_differences[best];
    if (best + 1 < stages && out.stage_differences[best + 1] > out.error_estimate)
        out.error_estimate = out.stage_differences[best + 1];
    return out;
}

template <class T>
std::string describe_differences(const std::vector<T>& diffs)
{
    std::ostringstream diag;
    diag << std::scientific << std::setprecision(3);
    for (const auto& d : diffs)
        diag << ' ' << d;
    return diag.str();
}

} // namespace detail

/// Limit estimate from the last table row (see detail::select_stage).
/// Throws convergence_error when no stage improves on the first, or when the
/// error estimate more than doubles relative to the row before.
template <class T>
RichardsonEstimate<T> richardson_half_powers(std::span<const T> sums, const T& ratio)
{
    if (sums.size() < 4)
        throw domain_error("richardson_half_powers: at least 4 checkpoints are required");
    auto table = richardson_half_power_table(sums, ratio);
    auto out = detail::select_stage(table.back());
    const auto& diffs = out.stage_differences;
    if (out.stage == 1 && diffs[1] >= diffs[0])
        throw convergence_error("richardson_half_powers: elimination does not converge; stage differences:" +
                                detail::describe_differences(diffs));
    if (sums.size() >= 5) {
        auto previous = detail::select_stage(table[table.size() - 2]);
        if (out.error_estimate > 2 * previous.error_estimate) {
            std::ostringstream diag;
            diag << std::scientific << std::setprecision(3) << previous.error_estimate << " -> "
                 << out.error_estimate;
            throw convergence_error("richardson_half_powers: error estimate grows with N (" + diag.str() +
                                    "); stage differences:" + detail::describe_differences(diffs));
        }
    }
    return out;
}

} // namespace apery
