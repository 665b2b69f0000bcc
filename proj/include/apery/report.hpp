#pragma once

// VerificationReport and its text/JSON forms. Every numeric field is a decimal
// string so reports stay faithful at any precision and diff cleanly.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "apery/precision.hpp"

namespace apery {

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

inline Status status_from_string(const std::string& s)
{
    if (s == "PASS")
        return Status::pass;
    if (s == "FAIL")
        return Status::fail;
    if (s == "INCONCLUSIVE")
        return Status::inconclusive;
    throw domain_error("unknown status '" + s + "'");
}

/// Why a report is INCONCLUSIVE. Not serialized; drives the CLI exit code.
enum class InconclusiveCause { none, convergence, capacity };

struct VerificationReport {
    std::string identity_id;
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::string lhs;
    std::string rhs;
    std::string abs_error;
    std::string tolerance;
    std::string method;
    std::uint64_t work = 0;
    std::uint64_t elapsed_ms = 0;
    Status status = Status::inconclusive;
    InconclusiveCause cause = InconclusiveCause::none;
};

// ---------------------------------------------------------------------------
// Decimal formatting

namespace detail {

struct DecimalDigits {
    bool negative = false;
    std::string digits; // no sign, no point
    long exponent = 0;  // value = 0.d1d2... * 10^exponent
};

inline DecimalDigits decimal_digits(const Real& x, unsigned count, mpfr_rnd_t rounding)
{
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, count, x.backend().data(), rounding);
    DecimalDigits out;
    std::string s(raw);
    mpfr_free_str(raw);
    if (!s.empty() && s[0] == '-') {
        out.negative = true;
        s.erase(0, 1);
    }
    out.digits = std::move(s);
    out.exponent = static_cast<long>(exp);
    return out;
}

inline std::string scientific(const DecimalDigits& d)
{
    std::string out = d.negative ? "-" : "";
    out += d.digits.substr(0, 1);
    if (d.digits.size() > 1)
        out += "." + d.digits.substr(1);
    long e = d.exponent - 1;
    out += e < 0 ? "e-" : "e+";
    out += std::to_string(e < 0 ? -e : e);
    return out;
}

} // namespace detail

/// Exactly `digits` significant digits, round-to-nearest. Positional notation for
/// moderate magnitudes, scientific otherwise. Zero prints as "0".
inline std::string format_significant(const Real& x, unsigned digits)
{
    if (digits == 0)
        throw domain_error("format_significant: need at least one digit");
    if (x == 0)
        return "0";
    auto d = detail::decimal_digits(x, digits, MPFR_RNDN);
    const long e = d.exponent;
    if (e > 21 || e < -4 || (e > static_cast<long>(digits)))
        return detail::scientific(d);
    std::string out = d.negative ? "-" : "";
    if (e <= 0) {
        out += "0." + std::string(static_cast<std::size_t>(-e), '0') + d.digits;
    } else {
        out += d.digits.substr(0, static_cast<std::size_t>(e));
        if (static_cast<std::size_t>(e) < d.digits.size())
            out += "." + d.digits.substr(static_cast<std::size_t>(e));
    }
    return out;
}

/// Non-negative error magnitude in scientific notation, rounded up so the string
/// never understates the value. Zero prints as "0".
inline std::string format_error(const Real& x, unsigned digits = 3)
{
    if (x == 0)
        return "0";
    Real mag = abs(x);
    return detail::scientific(detail::decimal_digits(mag, digits, MPFR_RNDU));
}

/// Fixed-point with `decimals` digits after the point.
inline std::string format_fixed(const Real& x, unsigned decimals)
{
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rf", static_cast<int>(decimals), x.backend().data()) < 0)
        throw std::runtime_error("format_fixed: formatting failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

/// Parses a decimal string at `bits` precision.
inline Real parse_decimal(const std::string& text, unsigned bits)
{
    PrecisionScope scope(bits);
    Real out;
    if (mpfr_set_str(out.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
        throw domain_error("parse_decimal: not a decimal number: '" + text + "'");
    return out;
}

/// Sets abs_error, tolerance and status from the two sides. status is PASS iff the
/// formatted (rounded-up) abs_error is <= tolerance.
inline void settle_report(VerificationReport& r, const Real& lhs, const Real& rhs, const std::string& tolerance,
                          unsigned digits)
{
    const unsigned bits = std::max(precision_bits(lhs), precision_bits(rhs)) + 16;
    PrecisionScope scope(bits);
    r.lhs = format_significant(lhs, digits);
    r.rhs = format_significant(rhs, digits);
    r.abs_error = format_error(Real(lhs - rhs));
    r.tolerance = tolerance;
    const Real tol = parse_decimal(tolerance, bits);
    r.status = parse_decimal(r.abs_error, bits) <= tol ? Status::pass : Status::fail;
    r.cause = InconclusiveCause::none;
}

/// Marks a report INCONCLUSIVE, keeping the reason in `method`.
inline void mark_inconclusive(VerificationReport& r, InconclusiveCause cause, const std::string& tolerance,
                              const std::string& reason)
{
    r.lhs.clear();
    r.rhs.clear();
    r.abs_error.clear();
    r.tolerance = tolerance;
    r.method = reason;
    r.status = Status::inconclusive;
    r.cause = cause;
}

// ---------------------------------------------------------------------------
// JSON

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const VerificationReport& r)
{
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params)
        params[k] = v;
    ordered_json j;
    j["identity_id"] = r.identity_id;
    j["params"] = std::move(params);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_error"] = r.abs_error;
    j["tolerance"] = r.tolerance;
    j["method"] = r.method;
    j["work"] = r.work;
    j["elapsed_ms"] = r.elapsed_ms;
    j["status"] = to_string(r.status);
    return j;
}

inline VerificationReport report_from_json(const ordered_json& j)
{
    VerificationReport r;
    r.identity_id = j.at("identity_id").get<std::string>();
    for (const auto& [k, v] : j.at("params").items())
        r.params.emplace_back(k, v.get<std::int64_t>());
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.abs_error = j.at("abs_error").get<std::string>();
    r.tolerance = j.at("tolerance").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.work = j.at("work").get<std::uint64_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
    r.status = status_from_string(j.at("status").get<std::string>());
    return r;
}

/// One line of newline-delimited JSON (no trailing newline).
inline std::string to_json_line(const VerificationReport& r) { return to_json(r).dump(); }

inline std::string params_text(const VerificationReport& r)
{
    std::string out;
    for (const auto& [k, v] : r.params) {
        if (!out.empty())
            out += ' ';
        out += k + "=" + std::to_string(v);
    }
    return out;
}

/// Human-readable single line.
inline std::string to_text_line(const VerificationReport& r)
{
    std::string out = std::string(to_string(r.status)) + "  " + r.identity_id;
    std::string p = params_text(r);
    if (!p.empty())
        out += " [" + p + "]";
    if (r.status == Status::inconclusive) {
        out += "  " + r.method;
        return out;
    }
    out += "\n    lhs " + r.lhs + "\n    rhs " + r.rhs + "\n    |lhs-rhs| " + r.abs_error + (r.status == Status::pass ? " <= " : " > ") + r.tolerance +
           "  work=" + std::to_string(r.work) + "  " + std::to_string(r.elapsed_ms) + " ms\n    method " + r.method;
    return out;
}

} // namespace apery
