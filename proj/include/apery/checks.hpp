#pragma once

// One check per identity. Each check computes both sides independently and
// returns a VerificationReport; PASS iff |lhs - rhs| <= tolerance.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "apery/closed_form.hpp"
#include "apery/harmonic_sums.hpp"
#include "apery/precision.hpp"
#include "apery/quadrature.hpp"
#include "apery/report.hpp"
#include "apery/series_engine.hpp"
#include "apery/special_constants.hpp"

namespace apery {

/// Default tolerance for each registered identity, as decimal strings.
inline const std::map<std::string, std::string>& default_tolerances()
{
    static const std::map<std::string, std::string> table{
        {"theorem1", "1e-15"}, {"gencev", "1e-12"},        {"corollary", "1e-18"},      {"L1i", "1e-12"},
        {"L1ii", "1e-12"},     {"L2i", "5e-3"},            {"L2ii", "1e-10"},           {"L2iii", "1e-10"},
        {"L2iv", "1e-10"},     {"L3", "1e-12"},            {"R1", "1e-10"},             {"R2", "1e-10"},
        {"R3", "1e-10"},       {"oracle-tstar", "0"},      {"oracle-zetastar", "0"},    {"poly-identities", "0"},
        {"beta-table", "1e-25"},
    };
    return table;
}

inline std::string default_tolerance(const std::string& identity)
{
    auto it = default_tolerances().find(identity);
    if (it == default_tolerances().end())
        throw domain_error("unknown identity '" + identity + "'");
    return it->second;
}

namespace detail {

using Params = std::vector<std::pair<std::string, std::int64_t>>;

// Runs `body` with timing and maps iterative/capacity failures to INCONCLUSIVE.
template <class Body>
VerificationReport run_check(const std::string& id, Params params, const std::string& tolerance, Body&& body)
{
    VerificationReport r;
    r.identity_id = id;
    r.params = std::move(params);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const convergence_error& e) {
        mark_inconclusive(r, InconclusiveCause::convergence, tolerance, std::string("convergence: ") + e.what());
    } catch (const capacity_error& e) {
        mark_inconclusive(r, InconclusiveCause::capacity, tolerance, std::string("capacity: ") + e.what());
    }
    r.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return r;
}

inline std::string bound_text(const BoundedValue& v)
{
    PrecisionScope scope(precision_bits(v.value));
    return format_error(v.abs_error_bound) + " " + to_string(v.rigor);
}

inline Real rational_to_real(const Rational& q, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx.working_bits());
    return Real(q);
}

inline Real half_pi(const PrecisionContext& ctx)
{
    BoundedValue p = pi(ctx);
    PrecisionScope scope(ctx.working_bits());
    return p.value / 2;
}

/// ln(cos u) = log1p(-sin^2 u) / 2, accurate for small u.
inline Real log_cos(const Real& u)
{
    Real s = sin(u);
    Real arg = -(s * s);
    Real out;
    mpfr_log1p(out.backend().data(), arg.backend().data(), MPFR_RNDN);
    return out / 2;
}

/// cos x, taken as sin(b - x) on the half of [0, pi/2] nearer to pi/2.
inline Real cos_near_half_pi(const Real& x, const Real& to_b)
{
    return to_b < x ? Real(sin(to_b)) : Real(cos(x));
}

/// ln(sin x) for x in (0, pi/2), via ln(cos(b - x)) near pi/2.
inline Real log_sin(const Real& x, const Real& to_b)
{
    return to_b < x ? log_cos(to_b) : Real(log(sin(x)));
}

inline VerificationReport quadrature_check(const std::string& id, Params params, const std::string& tolerance,
                                           const PrecisionContext& ctx, const std::string& description,
                                           const std::function<Real(const Real&, const Real&, const Real&)>& f,
                                           const Real& a, const Real& b, const ClosedFormExpr& rhs)
{
    return run_check(id, std::move(params), tolerance, [&](VerificationReport& r) {
        QuadratureResult q = integrate(f, a, b, ctx);
        BoundedValue closed = eval(rhs, ctx);
        r.method = "tanh-sinh(" + description + ", levels=" + std::to_string(q.levels) +
                   ", estimate=" + format_error(q.abs_error_estimate) + ") vs closed form " + rhs.canonical().to_string() +
                   " (bound " + bound_text(closed) + ")";
        r.work = q.nodes_used;
        settle_report(r, q.value, closed.value, tolerance, ctx.decimal_digits());
    });
}

} // namespace detail

// ---------------------------------------------------------------------------
// Series identities

inline VerificationReport check_theorem1(unsigned j, const PrecisionContext& ctx,
                                         const std::string& tolerance = default_tolerance("theorem1"))
{
    return detail::run_check("theorem1", {{"j", j}}, tolerance, [&](VerificationReport& r) {
        SeriesResult lhs = sum_series(make_family(SeriesTag::theorem1, j), ctx);
        auto rhs_expr = rhs_theorem1(j);
        BoundedValue rhs = eval(rhs_expr, ctx);
        const auto& cps = lhs.trace.checkpoints;
        r.method = "richardson-half-power(N=" + std::to_string(cps.back().n) + ", checkpoints=" +
                   std::to_string(cps.size()) + ", bound " + detail::bound_text(lhs.value) + ") vs " +
                   fold_symmetry(rhs_expr).to_string();
        r.work = cps.back().n;
        settle_report(r, lhs.value.value, rhs.value, tolerance, ctx.decimal_digits());
    });
}

inline VerificationReport check_gencev(unsigned j, const PrecisionContext& ctx,
                                       const std::string& tolerance = default_tolerance("gencev"))
{
    return detail::run_check("gencev", {{"j", j}}, tolerance, [&](VerificationReport& r) {
        SeriesResult lhs = sum_series(make_family(SeriesTag::gencev, j), ctx);
        auto rhs_expr = rhs_gencev(j);
        BoundedValue rhs = eval(rhs_expr, ctx);
        const auto& cps = lhs.trace.checkpoints;
        r.method = "richardson-half-power(N=" + std::to_string(cps.back().n) + ", checkpoints=" +
                   std::to_string(cps.size()) + ", bound " + detail::bound_text(lhs.value) + ") vs " +
                   rhs_expr.to_string();
        r.work = cps.back().n;
        settle_report(r, lhs.value.value, rhs.value, tolerance, ctx.decimal_digits());
    });
}

/// Theorem-1 form against the reduced form for fixture i = j + 1.
inline VerificationReport check_corollary(unsigned i, const PrecisionContext& ctx,
                                          const std::string& tolerance = default_tolerance("corollary"))
{
    return detail::run_check("corollary", {{"i", i}, {"j", static_cast<std::int64_t>(i) - 1}}, tolerance,
                             [&](VerificationReport& r) {
                                 CorollaryFixture fx = corollary_fixture(i);
                                 BoundedValue raw = eval(fx.raw, ctx);
                                 BoundedValue reduced = eval(fx.reduced, ctx);
                                 r.method = fold_symmetry(fx.raw).to_string() + " vs " + fx.reduced.to_string();
                                 r.work = fx.raw.size() + fx.reduced.size();
                                 settle_report(r, raw.value, reduced.value, tolerance, ctx.decimal_digits());
                             });
}

// ---------------------------------------------------------------------------
// Exact oracles

namespace detail {

inline VerificationReport exact_check(const std::string& id, Params params, const std::string& tolerance,
                                      const PrecisionContext& ctx, const std::string& method, std::uint64_t work,
                                      const std::function<std::pair<Rational, Rational>()>& sides)
{
    return run_check(id, std::move(params), tolerance, [&](VerificationReport& r) {
        auto [lhs, rhs] = sides();
        r.method = method;
        r.work = work;
        PrecisionScope scope(ctx.working_bits());
        r.lhs = format_significant(Real(lhs), ctx.decimal_digits());
        r.rhs = format_significant(Real(rhs), ctx.decimal_digits());
        Rational diff = lhs - rhs;
        r.abs_error = diff == 0 ? "0" : format_error(Real(diff));
        r.tolerance = tolerance;
        r.status = parse_decimal(r.abs_error, ctx.working_bits()) <= parse_decimal(tolerance, ctx.working_bits())
                       ? Status::pass
                       : Status::fail;
    });
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

} // namespace detail

inline VerificationReport check_oracle_tstar(unsigned n, unsigned j, const PrecisionContext& ctx,
                                             const std::string& tolerance = default_tolerance("oracle-tstar"))
{
    return detail::exact_check("oracle-tstar", {{"n", n}, {"j", j}}, tolerance, ctx,
                               "exact-rational streaming recurrence vs nested-sum enumeration",
                               detail::binomial_u64(n + j - 1, j), [&] {
                                   auto s = exact_state_at(n, j);
                                   return std::make_pair(s.t_star[j], t_star_bruteforce(n, j));
                               });
}

inline VerificationReport check_oracle_zetastar(unsigned n, unsigned j, const PrecisionContext& ctx,
                                                const std::string& tolerance = default_tolerance("oracle-zetastar"))
{
    return detail::exact_check("oracle-zetastar", {{"n", n}, {"j", j}}, tolerance, ctx,
                               "exact-rational streaming recurrence vs nested-sum enumeration",
                               detail::binomial_u64(n + j - 1, j), [&] {
                                   auto s = exact_state_at(n, j);
                                   return std::make_pair(s.zeta_star[j], zeta_star_bruteforce(n, j));
                               });
}

/// depth 2 or 3: t*_n({2}_depth) against its polynomial in O_n^(2), O_n^(4), O_n^(6).
inline VerificationReport check_poly_identity(unsigned n, unsigned depth, const PrecisionContext& ctx,
                                              const std::string& tolerance = default_tolerance("poly-identities"))
{
    if (depth != 2 && depth != 3)
        throw domain_error("check_poly_identity: depth must be 2 or 3");
    const char* form = depth == 2 ? "((O2)^2 + O4)/2" : "((O2)^3 + 3*O2*O4 + 2*O6)/6";
    return detail::exact_check("poly-identities", {{"n", n}, {"j", depth}}, tolerance, ctx,
                               std::string("exact-rational t*_n vs ") + form, n, [&] {
                                   auto res = t_star_poly_check(n, std::max<std::uint64_t>(n, kDefaultExactCap));
                                   const auto& c = res.identities[depth - 2];
                                   return std::make_pair(c.lhs, c.rhs);
                               });
}

/// Accelerated series against the Euler-number closed form (odd m) or an
/// Euler-Maclaurin summation (even m).
inline VerificationReport check_beta(unsigned m, const PrecisionContext& ctx,
                                     const std::string& tolerance = default_tolerance("beta-table"))
{
    return detail::run_check("beta-table", {{"m", m}}, tolerance, [&](VerificationReport& r) {
        BoundedValue series = beta_series(m, ctx);
        BoundedValue other = m % 2 == 1 ? beta_odd_closed_form(m, ctx) : beta_euler_maclaurin(m, ctx);
        r.method = std::string("crvz-accelerated series (bound ") + detail::bound_text(series) + ") vs " +
                   (m % 2 == 1 ? "Euler-number closed form (classical, external)" : "Euler-Maclaurin summation") +
                   " (bound " + detail::bound_text(other) + ")";
        r.work = crvz_terms_for_bits(ctx.working_bits());
        settle_report(r, series.value, other.value, tolerance, ctx.decimal_digits());
    });
}

// ---------------------------------------------------------------------------
// Integral identities on [0, pi/2] and [0, 1]

inline VerificationReport check_L1i(unsigned m, unsigned n, const PrecisionContext& ctx,
                                    const std::string& tolerance = default_tolerance("L1i"))
{
    if (n == 0)
        throw domain_error("check_L1i: n must be positive");
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m, n](const Real& x, const Real&, const Real&) { return Real(pow(x, 2 * m) * cos((2 * n - 1) * x)); };
    return detail::quadrature_check("L1i", {{"m", m}, {"n", n}}, tolerance, ctx, "x^(2m) cos((2n-1)x)", f, Real(0), b,
                                    rhs_lemma1i(m, n));
}

inline VerificationReport check_L1ii(unsigned m, unsigned k, const PrecisionContext& ctx,
                                     const std::string& tolerance = default_tolerance("L1ii"))
{
    if (k == 0)
        throw domain_error("check_L1ii: k must be positive");
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m, k](const Real& x, const Real&, const Real&) {
        if (x == 0)
            return Real(2 * k); // removable singularity
        return Real(pow(x, 2 * m) * sin(2 * k * x) / sin(x));
    };
    return detail::quadrature_check("L1ii", {{"m", m}, {"k", k}}, tolerance, ctx, "x^(2m) sin(2kx)/sin(x)", f,
                                    Real(0), b, rhs_lemma1ii(m, k));
}

/// tan(x) ln(sin x) against -sum_{k<=K} a_k sin(2kx) at x = pi/x_pi_over, with
/// a_k = int_0^1 (1-t)/(1+t) t^(k-1) dt = 2(-1)^(k-1)(ln 2 - sum_{i<k} (-1)^(i-1)/i) - 1/k.
inline VerificationReport check_L2i(unsigned x_pi_over, std::uint64_t K, const PrecisionContext& ctx,
                                    const std::string& tolerance = default_tolerance("L2i"))
{
    if (x_pi_over <= 2 || K == 0)
        throw domain_error("check_L2i: need x = pi/d with d > 2 and K >= 1");
    return detail::run_check(
        "L2i", {{"x_pi_over", x_pi_over}, {"K", static_cast<std::int64_t>(K)}}, tolerance,
        [&](VerificationReport& r) {
            auto fine = ctx.with_extra_bits(static_cast<unsigned>(std::log2(static_cast<double>(K) + 1)) + 8);
            BoundedValue ln2 = log2_reference(fine);
            BoundedValue p = pi(fine);
            PrecisionScope scope(fine.working_bits());
            const Real x = p.value / x_pi_over;
            const Real lhs = tan(x) * log(sin(x));
            Real partial = 0; // sum_{i<k} (-1)^(i-1)/i
            Real series = 0;
            for (std::uint64_t k = 1; k <= K; ++k) {
                Real gap = ln2.value - partial;
                Real a = 2 * gap - Real(1) / k;
                if (k % 2 == 0)
                    a = -2 * gap - Real(1) / k;
                series += a * sin(2 * k * x);
                if (k % 2 == 1)
                    partial += Real(1) / k;
                else
                    partial -= Real(1) / k;
            }
            r.method = "truncated Fourier-type series (K terms, exact a_k) vs tan(x)ln(sin x)";
            r.work = K;
            settle_report(r, lhs, Real(-series), tolerance, ctx.decimal_digits());
        });
}

/// sum_{k<=K} Obar_k^(2j+1) t^(2k-1) against Ti_{2j+1}(t)/(1-t^2) at t = t_percent/100.
/// K is chosen so the geometric tail t^(2K+1)/(1-t^2) is below the context target.
inline VerificationReport check_L2ii(unsigned t_percent, unsigned j, const PrecisionContext& ctx,
                                     const std::string& tolerance = default_tolerance("L2ii"))
{
    if (t_percent > 99)
        throw domain_error("check_L2ii: requires |t| <= 0.99");
    return detail::run_check(
        "L2ii", {{"t_percent", t_percent}, {"j", j}}, tolerance, [&](VerificationReport& r) {
            std::uint64_t K = 1;
            if (t_percent > 0) {
                double t = t_percent / 100.0;
                double need = (ctx.decimal_digits() + 4) * std::log(10.0) - std::log(1 - t * t);
                K = static_cast<std::uint64_t>(std::ceil(need / (-2 * std::log(t)))) + 1;
            }
            auto state = make_float_state(0, ctx, {2 * j + 1});
            PrecisionScope scope(ctx.working_bits());
            const Real t = Real(t_percent) / 100;
            const Real t2 = t * t;
            Real power = t; // t^(2k-1)
            Real lhs = 0;
            for (std::uint64_t k = 1; k <= K; ++k) {
                advance_in_place(state);
                lhs += state.alt_odd_harmonics[0] * power;
                power *= t2;
            }
            BoundedValue tiv = ti(2 * j + 1, t, ctx);
            Real rhs = tiv.value / (1 - t2);
            r.method = "truncated series (K=" + std::to_string(K) + ") vs Ti_" + std::to_string(2 * j + 1) +
                       "(t)/(1-t^2)";
            r.work = K;
            settle_report(r, lhs, rhs, tolerance, ctx.decimal_digits());
        });
}

inline VerificationReport check_L2iii(unsigned j, const PrecisionContext& ctx,
                                      const std::string& tolerance = default_tolerance("L2iii"))
{
    auto f = [j, &ctx](const Real& t, const Real&, const Real&) {
        BoundedValue v = ti(2 * j + 1, t, ctx);
        return Real(v.value / (1 + t * t));
    };
    PrecisionScope scope(ctx.working_bits());
    return detail::quadrature_check("L2iii", {{"j", j}}, tolerance, ctx, "Ti_(2j+1)(t)/(1+t^2)", f, Real(0), Real(1),
                                    rhs_lemma2iii(j));
}

inline VerificationReport check_L2iv(unsigned m, const PrecisionContext& ctx,
                                     const std::string& tolerance = default_tolerance("L2iv"))
{
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m](const Real& x, const Real&, const Real& to_b) {
        return Real(pow(x, 2 * m) * detail::log_sin(x, to_b) / detail::cos_near_half_pi(x, to_b));
    };
    return detail::quadrature_check("L2iv", {{"m", m}}, tolerance, ctx, "x^(2m) ln(sin x)/cos x", f, Real(0), b,
                                    rhs_lemma2iv(m));
}

inline VerificationReport check_L3(unsigned m, unsigned n, const PrecisionContext& ctx,
                                   const std::string& tolerance = default_tolerance("L3"))
{
    if (n == 0)
        throw domain_error("check_L3: n must be positive");
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m, n](const Real& x, const Real&, const Real& to_b) {
        return Real(pow(x, 2 * m) * pow(detail::cos_near_half_pi(x, to_b), 2 * n - 1));
    };
    return detail::quadrature_check("L3", {{"m", m}, {"n", n}}, tolerance, ctx, "x^(2m) cos^(2n-1)(x)", f, Real(0), b,
                                    rhs_lemma3(m, n));
}

inline VerificationReport check_R1(unsigned m, unsigned n, const PrecisionContext& ctx,
                                   const std::string& tolerance = default_tolerance("R1"))
{
    if (n == 0)
        throw domain_error("check_R1: n must be positive");
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m, n](const Real& x, const Real&, const Real&) { return Real(pow(x, 2 * m) * cos(2 * n * x)); };
    return detail::quadrature_check("R1", {{"m", m}, {"n", n}}, tolerance, ctx, "x^(2m) cos(2nx)", f, Real(0), b,
                                    rhs_R1(m, n));
}

inline VerificationReport check_R2(unsigned m, const PrecisionContext& ctx,
                                   const std::string& tolerance = default_tolerance("R2"))
{
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m](const Real& x, const Real&, const Real& to_b) { return Real(pow(x, 2 * m) * detail::log_sin(x, to_b)); };
    return detail::quadrature_check("R2", {{"m", m}}, tolerance, ctx, "x^(2m) ln(sin x)", f, Real(0), b, rhs_R2(m));
}

inline VerificationReport check_R3(unsigned m, unsigned n, const PrecisionContext& ctx,
                                   const std::string& tolerance = default_tolerance("R3"))
{
    if (n == 0)
        throw domain_error("check_R3: n must be positive");
    PrecisionScope scope(ctx.working_bits());
    const Real b = detail::half_pi(ctx);
    auto f = [m, n](const Real& x, const Real&, const Real& to_b) {
        return Real(pow(x, 2 * m) * pow(detail::cos_near_half_pi(x, to_b), 2 * n));
    };
    return detail::quadrature_check("R3", {{"m", m}, {"n", n}}, tolerance, ctx, "x^(2m) cos^(2n)(x)", f, Real(0), b,
                                    rhs_R3(m, n));
}

} // namespace apery
