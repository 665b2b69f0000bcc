#pragma once

// Identity registry, parameter grids, tables and the convergence benchmark.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apery/checks.hpp"

namespace apery {

/// Parses "A", "A..B" or a comma-separated list of those into an ordered list.
inline std::vector<std::int64_t> parse_range(std::string_view text)
{
    auto to_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty())
            throw domain_error("malformed range '" + std::string(text) + "'");
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(s), &used);
        } catch (const std::exception&) {
            throw domain_error("malformed range '" + std::string(text) + "'");
        }
        if (used != s.size())
            throw domain_error("malformed range '" + std::string(text) + "'");
        return v;
    };
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(to_int(item));
        } else {
            std::int64_t lo = to_int(item.substr(0, dots));
            std::int64_t hi = to_int(item.substr(dots + 2));
            if (hi < lo)
                throw domain_error("empty range '" + std::string(item) + "'");
            if (hi - lo > 1'000'000)
                throw domain_error("range '" + std::string(item) + "' is too long");
            for (std::int64_t v = lo; v <= hi; ++v)
                out.push_back(v);
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

/// Parameters a given identity iterates over, in nesting order (outermost first).
struct IdentityInfo {
    std::vector<std::string> params;
    std::map<std::string, std::string> default_grid;
    unsigned default_digits = 20;
};

inline const std::map<std::string, IdentityInfo>& identity_registry()
{
    static const std::map<std::string, IdentityInfo> table{
        {"theorem1", {{"j"}, {{"j", "0..4"}}}},
        {"gencev", {{"j"}, {{"j", "0..4"}}}},
        {"corollary", {{"j"}, {{"j", "0..3"}}}},
        {"L1i", {{"m", "n"}, {{"m", "0..3"}, {"n", "1..6"}}}},
        {"L1ii", {{"m", "k"}, {{"m", "0..3"}, {"k", "1..6"}}}},
        {"L2i", {{"x", "K"}, {{"x", "6,4,3"}, {"K", "10000"}}}},
        {"L2ii", {{"t", "j"}, {{"t", "25,50,90"}, {"j", "0..2"}}}},
        {"L2iii", {{"j"}, {{"j", "0..3"}}}},
        {"L2iv", {{"m"}, {{"m", "0..3"}}}},
        {"L3", {{"m", "n"}, {{"m", "0..3"}, {"n", "1..6"}}}},
        {"R1", {{"m", "n"}, {{"m", "0..3"}, {"n", "1..6"}}}},
        {"R2", {{"m"}, {{"m", "0..3"}}}},
        {"R3", {{"m", "n"}, {{"m", "0..3"}, {"n", "1..6"}}}},
        {"oracle-tstar", {{"n", "j"}, {{"n", "1..15"}, {"j", "0..4"}}}},
        {"oracle-zetastar", {{"n", "j"}, {{"n", "1..15"}, {"j", "0..4"}}}},
        {"poly-identities", {{"n", "j"}, {{"n", "1..50"}, {"j", "2..3"}}}},
        {"beta-table", {{"m"}, {{"m", "1..13"}}, 40}},
    };
    return table;
}

inline const IdentityInfo& identity_info(const std::string& id)
{
    auto it = identity_registry().find(id);
    if (it == identity_registry().end())
        throw domain_error("unknown identity '" + id + "'");
    return it->second;
}

struct VerifyRequest {
    std::string identity;
    /// Overrides of the default grid, keyed by parameter name ("j", "m", "n", "k", "K", "t", "x").
    std::map<std::string, std::string> ranges;
    std::optional<unsigned> digits;
    std::optional<std::string> tolerance;
};

namespace detail {

inline unsigned to_unsigned(std::int64_t v, const char* name, std::int64_t lo = 0, std::int64_t hi = 1'000'000)
{
    if (v < lo || v > hi)
        throw domain_error(std::string("parameter ") + name + " = " + std::to_string(v) + " out of range [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<unsigned>(v);
}

inline VerificationReport dispatch(const std::string& id, const std::map<std::string, std::int64_t>& p,
                                   const PrecisionContext& ctx, const std::string& tol)
{
    auto u = [&](const char* name, std::int64_t lo = 0, std::int64_t hi = 1'000'000) {
        return to_unsigned(p.at(name), name, lo, hi);
    };
    if (id == "theorem1")
        return check_theorem1(u("j", 0, 1000), ctx, tol);
    if (id == "gencev")
        return check_gencev(u("j", 0, 1000), ctx, tol);
    if (id == "corollary")
        return check_corollary(u("j", 0, 3) + 1, ctx, tol);
    if (id == "L1i")
        return check_L1i(u("m", 0, 40), u("n", 1, 1000), ctx, tol);
    if (id == "L1ii")
        return check_L1ii(u("m", 0, 40), u("k", 1, 1000), ctx, tol);
    if (id == "L2i")
        return check_L2i(u("x", 3, 1000), u("K", 1, 10'000'000), ctx, tol);
    if (id == "L2ii")
        return check_L2ii(u("t", 0, 99), u("j", 0, 40), ctx, tol);
    if (id == "L2iii")
        return check_L2iii(u("j", 0, 20), ctx, tol);
    if (id == "L2iv")
        return check_L2iv(u("m", 0, 40), ctx, tol);
    if (id == "L3")
        return check_L3(u("m", 0, 40), u("n", 1, 1000), ctx, tol);
    if (id == "R1")
        return check_R1(u("m", 0, 40), u("n", 1, 1000), ctx, tol);
    if (id == "R2")
        return check_R2(u("m", 0, 40), ctx, tol);
    if (id == "R3")
        return check_R3(u("m", 0, 40), u("n", 1, 1000), ctx, tol);
    if (id == "oracle-tstar")
        return check_oracle_tstar(u("n", 0, kBruteForceMaxN), u("j", 0, kBruteForceMaxDepth), ctx, tol);
    if (id == "oracle-zetastar")
        return check_oracle_zetastar(u("n", 0, kBruteForceMaxN), u("j", 0, kBruteForceMaxDepth), ctx, tol);
    if (id == "poly-identities")
        return check_poly_identity(u("n", 0, 100'000), u("j", 2, 3), ctx, tol);
    if (id == "beta-table")
        return check_beta(u("m", 1, 1000), ctx, tol);
    throw domain_error("unknown identity '" + id + "'");
}

} // namespace detail

/// Runs every grid point of one identity, outermost parameter slowest.
/// Throws domain_error on malformed input and capacity_error on the digit ceiling.
inline std::vector<VerificationReport> run_suite(const VerifyRequest& request)
{
    const IdentityInfo& info = identity_info(request.identity);
    for (const auto& [name, _] : request.ranges)
        if (std::find(info.params.begin(), info.params.end(), name) == info.params.end())
            throw domain_error("identity '" + request.identity + "' takes no parameter --" + name);

    std::vector<std::vector<std::int64_t>> axes;
    for (const auto& name : info.params) {
        auto it = request.ranges.find(name);
        axes.push_back(parse_range(it != request.ranges.end() ? it->second : info.default_grid.at(name)));
    }
    const PrecisionContext ctx = make_context(request.digits.value_or(info.default_digits));
    const std::string tol = request.tolerance.value_or(default_tolerance(request.identity));
    parse_decimal(tol, 64); // validates

    std::vector<VerificationReport> out;
    std::vector<std::size_t> index(axes.size(), 0);
    while (true) {
        std::map<std::string, std::int64_t> point;
        for (std::size_t a = 0; a < axes.size(); ++a)
            point[info.params[a]] = axes[a][index[a]];
        out.push_back(detail::dispatch(request.identity, point, ctx, tol));
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++index[a] < axes[a].size())
                break;
            index[a] = 0;
            if (a == 0)
                return out;
        }
        if (axes.empty())
            return out;
    }
}

// ---------------------------------------------------------------------------
// Tables

struct TableRow {
    std::string label;
    std::string closed_form;
    std::string value;
};

/// Reduced closed forms for j = 0..3, values with `decimals` digits after the point.
inline std::vector<TableRow> corollary_table(unsigned decimals)
{
    const PrecisionContext ctx = make_context(decimals + 10);
    std::vector<TableRow> rows;
    for (unsigned i = 1; i <= 4; ++i) {
        CorollaryFixture fx = corollary_fixture(i);
        BoundedValue v = eval(fx.reduced, ctx);
        PrecisionScope scope(ctx.working_bits());
        rows.push_back({"j=" + std::to_string(i - 1), fx.reduced.to_string(), format_fixed(v.value, decimals)});
    }
    return rows;
}

/// Odd m: rational multiple of a pi power from Euler numbers. Even m: the symbol itself.
inline std::string beta_closed_form_text(unsigned m)
{
    ClosedFormExpr e;
    if (m % 2 == 1) {
        const unsigned k = (m - 1) / 2;
        Integer den = 2;
        for (unsigned i = 2; i <= 2 * k; ++i)
            den *= i;
        den <<= m;
        Rational c(euler_number(k), den);
        if (k % 2 == 1)
            c = -c;
        e.add_term(c, {pi_factor(static_cast<int>(m))});
    } else {
        e.add_term(Rational(1), {m == 2 ? catalan_factor() : beta_factor(static_cast<int>(m))});
    }
    return e.to_string();
}

inline std::vector<TableRow> beta_table(unsigned decimals, unsigned max_m = 8)
{
    const PrecisionContext ctx = make_context(decimals + 10);
    std::vector<TableRow> rows;
    for (unsigned m = 1; m <= max_m; ++m) {
        BoundedValue v = beta(m, ctx);
        PrecisionScope scope(ctx.working_bits());
        rows.push_back({"beta(" + std::to_string(m) + ")", beta_closed_form_text(m), format_fixed(v.value, decimals)});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Convergence benchmark

struct BenchSchedule {
    std::uint64_t first = 0;
    std::uint64_t ratio = 1;
    unsigned steps = 0;

    std::vector<std::uint64_t> points() const
    {
        std::vector<std::uint64_t> out{first};
        for (unsigned i = 0; i < steps; ++i)
            out.push_back(out.back() * ratio);
        return out;
    }
};

/// "N0xR^k" gives N0, N0*R, ..., N0*R^k.
inline BenchSchedule parse_schedule(std::string_view text)
{
    auto fail = [&] { return domain_error("malformed schedule '" + std::string(text) + "', expected N0xR^k"); };
    std::size_t x = text.find('x');
    std::size_t caret = text.find('^');
    if (x == text.npos || caret == text.npos || caret < x)
        throw fail();
    BenchSchedule s;
    try {
        std::size_t used = 0;
        std::string a(text.substr(0, x)), b(text.substr(x + 1, caret - x - 1)), c(text.substr(caret + 1));
        s.first = std::stoull(a, &used);
        if (used != a.size())
            throw fail();
        s.ratio = std::stoull(b, &used);
        if (used != b.size())
            throw fail();
        s.steps = static_cast<unsigned>(std::stoul(c, &used));
        if (used != c.size())
            throw fail();
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw fail();
    }
    if (s.first == 0 || (s.steps > 0 && s.ratio < 2))
        throw domain_error("schedule must start at N0 >= 1 with ratio >= 2");
    double last = static_cast<double>(s.first) * std::pow(static_cast<double>(s.ratio), s.steps);
    if (last > 1e8)
        throw capacity_error("schedule exceeds 10^8 terms");
    return s;
}

struct BenchRow {
    std::uint64_t n;
    std::string partial_sum;
    std::string abs_error;
    std::uint64_t elapsed_ms; // cumulative
    Real error;
};

struct BenchResult {
    SeriesFamily family;
    std::string closed_form;
    std::vector<BenchRow> rows;
    /// Least-squares slope of log(error) against log(N); absent with fewer than two rows.
    std::optional<double> fitted_exponent;
};

inline BenchResult run_bench(SeriesTag tag, unsigned j, const BenchSchedule& schedule, unsigned digits = 20)
{
    const SeriesFamily family = make_family(tag, j);
    const PrecisionContext ctx = make_context(digits);
    const auto points = schedule.points();
    const ClosedFormExpr rhs_expr = tag == SeriesTag::theorem1 ? rhs_theorem1(j) : rhs_gencev(j);
    const BoundedValue rhs = eval(rhs_expr, summation_context(ctx, points.back()));
    const PrecisionContext sum_ctx = summation_context(ctx, points.back());

    BenchResult out{family, rhs_expr.canonical().to_string(), {}, std::nullopt};
    SeriesStream stream(family, sum_ctx);
    const auto start = std::chrono::steady_clock::now();
    for (auto n : points) {
        stream.advance_to(n);
        PrecisionScope scope(sum_ctx.working_bits());
        Real err = abs(Real(stream.partial_sum() - rhs.value));
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        out.rows.push_back({n, format_significant(stream.partial_sum(), digits), format_error(err),
                            static_cast<std::uint64_t>(ms.count()), err});
    }
    if (out.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : out.rows) {
            double lx = std::log(static_cast<double>(r.n));
            double ly = std::log(r.error.convert_to<double>());
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        double k = static_cast<double>(out.rows.size());
        out.fitted_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    return out;
}

} // namespace apery
