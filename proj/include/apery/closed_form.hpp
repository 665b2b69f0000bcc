#pragma once

// Exact symbolic right-hand sides: finite sums of rational coefficients times
// products of beta(m), eta(s), pi^k and Catalan's constant G, evaluated late.
//
// Canonical text form (see README for the grammar):
//   16*beta(1)*beta(3) - 8*beta(2)^2
//   17/5760*pi^8 - 16*beta(6)*G - 8*beta(4)^2

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apery/harmonic_sums.hpp"
#include "apery/precision.hpp"
#include "apery/special_constants.hpp"

namespace apery {

enum class ConstantKind { beta, eta, pi_power, catalan };

/// beta(arg), eta(arg), pi^arg, or G (arg unused, always 0).
struct Factor {
    ConstantKind kind;
    int arg;

    friend auto operator<=>(const Factor&, const Factor&) = default;
};

inline Factor beta_factor(int m) { return {ConstantKind::beta, m}; }
inline Factor eta_factor(int s) { return {ConstantKind::eta, s}; }
inline Factor pi_factor(int k) { return {ConstantKind::pi_power, k}; }
inline Factor catalan_factor() { return {ConstantKind::catalan, 0}; }

struct Term {
    Rational coeff;
    std::vector<Factor> factors; // sorted; pi powers merged; no pi^0

    friend bool operator==(const Term&, const Term&) = default;
};

class ClosedFormExpr {
public:
    ClosedFormExpr() = default;

    /// Appends a term. The factor list is put in canonical order and pi powers are
    /// combined; the term list itself is left as given (see canonical()).
    /// Zero-coefficient terms are dropped.
    ClosedFormExpr& add_term(Rational coeff, std::vector<Factor> factors)
    {
        if (coeff == 0)
            return *this;
        int pi_exp = 0;
        std::vector<Factor> kept;
        for (const auto& f : factors) {
            if (f.kind == ConstantKind::pi_power)
                pi_exp += f.arg;
            else
                kept.push_back(f.kind == ConstantKind::catalan ? catalan_factor() : f);
        }
        if (pi_exp != 0)
            kept.push_back(pi_factor(pi_exp));
        std::sort(kept.begin(), kept.end());
        terms_.push_back({std::move(coeff), std::move(kept)});
        return *this;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Terms sorted by factor list, identical factor lists merged, zeros dropped.
    ClosedFormExpr canonical() const
    {
        std::map<std::vector<Factor>, Rational> merged;
        for (const auto& t : terms_)
            merged[t.factors] += t.coeff;
        ClosedFormExpr out;
        for (auto& [factors, coeff] : merged)
            if (coeff != 0)
                out.terms_.push_back({coeff, factors});
        return out;
    }

    ClosedFormExpr scaled(const Rational& q) const
    {
        ClosedFormExpr out;
        for (const auto& t : terms_)
            out.add_term(t.coeff * q, t.factors);
        return out;
    }

    friend ClosedFormExpr operator+(ClosedFormExpr a, const ClosedFormExpr& b)
    {
        for (const auto& t : b.terms_)
            a.terms_.push_back(t);
        return a;
    }

    /// Equality of canonical forms.
    bool structurally_equal(const ClosedFormExpr& other) const
    {
        return canonical().terms_ == other.canonical().terms_;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            bool negative = t.coeff < 0;
            if (i == 0)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            Rational mag = negative ? Rational(-t.coeff) : t.coeff;
            bool show_coeff = t.factors.empty() || mag != 1;
            if (show_coeff)
                out += mag.str();
            std::size_t k = 0;
            bool first = !show_coeff;
            while (k < t.factors.size()) {
                std::size_t run = 1;
                while (k + run < t.factors.size() && t.factors[k + run] == t.factors[k])
                    ++run;
                out += first ? "" : "*";
                first = false;
                out += factor_text(t.factors[k], run);
                k += run;
            }
        }
        return out;
    }

private:
    static std::string factor_text(const Factor& f, std::size_t power)
    {
        std::string base;
        switch (f.kind) {
        case ConstantKind::beta: base = "beta(" + std::to_string(f.arg) + ")"; break;
        case ConstantKind::eta: base = "eta(" + std::to_string(f.arg) + ")"; break;
        case ConstantKind::catalan: base = "G"; break;
        case ConstantKind::pi_power:
            // pi powers are merged, so run length is 1 and the exponent is the arg
            return f.arg == 1 ? "pi" : "pi^" + std::to_string(f.arg);
        }
        return power == 1 ? base : base + "^" + std::to_string(power);
    }

    std::vector<Term> terms_;
};

/// Parses the canonical text form. Throws domain_error on malformed input.
inline ClosedFormExpr parse_closed_form(std::string_view text)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> void {
        throw domain_error("parse_closed_form: " + what + " at offset " + std::to_string(pos) + " in '" +
                           std::string(text) + "'");
    };
    auto skip_space = [&] {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            fail("expected digits");
        return std::string(text.substr(start, pos - start));
    };
    auto accept = [&](std::string_view token) {
        if (text.substr(pos, token.size()) == token) {
            pos += token.size();
            return true;
        }
        return false;
    };

    ClosedFormExpr expr;
    skip_space();
    if (text.substr(pos) == "0")
        return expr;

    bool negative = accept("-");
    while (true) {
        skip_space();
        Rational coeff = 1;
        bool have_item = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            Integer num(read_uint());
            Integer den = 1;
            if (accept("/"))
                den = Integer(read_uint());
            if (den == 0)
                fail("zero denominator");
            coeff = Rational(num, den);
            have_item = true;
        }
        std::vector<Factor> factors;
        while (true) {
            if (have_item && !accept("*"))
                break;
            Factor f{};
            if (accept("beta(")) {
                f = beta_factor(std::stoi(read_uint()));
                if (!accept(")"))
                    fail("expected ')'");
            } else if (accept("eta(")) {
                f = eta_factor(std::stoi(read_uint()));
                if (!accept(")"))
                    fail("expected ')'");
            } else if (accept("pi")) {
                f = pi_factor(1);
            } else if (accept("G")) {
                f = catalan_factor();
            } else {
                fail("expected a factor");
            }
            int power = 1;
            if (accept("^"))
                power = std::stoi(read_uint());
            if (f.kind == ConstantKind::pi_power)
                factors.push_back(pi_factor(power));
            else
                for (int i = 0; i < power; ++i)
                    factors.push_back(f);
            have_item = true;
        }
        expr.add_term(negative ? Rational(-coeff) : coeff, std::move(factors));
        skip_space();
        if (pos == text.size())
            break;
        if (accept("+"))
            negative = false;
        else if (accept("-"))
            negative = true;
        else
            fail("expected '+' or '-'");
    }
    return expr;
}

/// Numeric value with a propagated bound. Constants are evaluated once per call.
inline BoundedValue eval(const ClosedFormExpr& expr, const PrecisionContext& ctx)
{
    auto fine = ctx.with_extra_bits(16);
    std::map<Factor, BoundedValue> cache;
    auto constant = [&](const Factor& f) -> const BoundedValue& {
        auto it = cache.find(f);
        if (it != cache.end())
            return it->second;
        BoundedValue v;
        switch (f.kind) {
        case ConstantKind::beta:
            if (f.arg < 1)
                throw domain_error("eval: beta argument must be positive");
            v = beta(static_cast<unsigned>(f.arg), fine);
            break;
        case ConstantKind::eta:
            if (f.arg < 1)
                throw domain_error("eval: eta argument must be positive");
            v = eta(static_cast<unsigned>(f.arg), fine);
            break;
        case ConstantKind::catalan: v = catalan(fine); break;
        case ConstantKind::pi_power: {
            if (f.arg < 0)
                throw domain_error("eval: negative pi powers are not supported");
            BoundedValue p = pi(fine);
            PrecisionScope scope(fine.working_bits());
            v = BoundedValue::exact(Real(1));
            for (int i = 0; i < f.arg; ++i)
                v = v * p;
            break;
        }
        }
        return cache.emplace(f, std::move(v)).first->second;
    };

    PrecisionScope scope(fine.working_bits());
    BoundedValue total = BoundedValue::exact(Real(0));
    for (const auto& t : expr.terms()) {
        BoundedValue product = BoundedValue::exact(Real(1));
        for (const auto& f : t.factors)
            product = product * constant(f);
        total = total + t.coeff * product;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Series right-hand sides

/// 8 * sum_{k=0}^{2j} (-1)^k beta(k+1) beta(2j-k+1), all 2j+1 terms.
inline ClosedFormExpr rhs_theorem1(unsigned j)
{
    ClosedFormExpr e;
    for (unsigned k = 0; k <= 2 * j; ++k)
        e.add_term(Rational(k % 2 == 0 ? 8 : -8), {beta_factor(static_cast<int>(k + 1)),
                                                   beta_factor(static_cast<int>(2 * j - k + 1))});
    return e;
}

/// Pairs term k with term 2j-k of rhs_theorem1(j), giving j+1 terms:
/// 8 [2 sum_{k<j} (-1)^k beta(k+1) beta(2j-k+1) + (-1)^j beta(j+1)^2].
inline ClosedFormExpr fold_symmetry(const ClosedFormExpr& expr)
{
    const auto& terms = expr.terms();
    if (terms.size() % 2 == 0)
        throw domain_error("fold_symmetry: expected an odd number of terms");
    const std::size_t j = terms.size() / 2;
    ClosedFormExpr out;
    for (std::size_t k = 0; k < j; ++k) {
        const auto& a = terms[k];
        const auto& b = terms[2 * j - k];
        if (a.factors != b.factors || a.coeff != b.coeff)
            throw domain_error("fold_symmetry: terms " + std::to_string(k) + " and " + std::to_string(2 * j - k) +
                               " are not symmetric partners");
        out.add_term(a.coeff + b.coeff, a.factors);
    }
    out.add_term(terms[j].coeff, terms[j].factors);
    return out;
}

/// 2 eta(2j+1).
inline ClosedFormExpr rhs_gencev(unsigned j)
{
    ClosedFormExpr e;
    e.add_term(Rational(2), {eta_factor(static_cast<int>(2 * j + 1))});
    return e;
}

struct CorollaryFixture {
    unsigned index;       // 1..4
    unsigned depth;       // j = index - 1
    ClosedFormExpr raw;   // rhs_theorem1(j)
    ClosedFormExpr reduced;
};

/// The four reduced evaluations for j = 0..3.
inline CorollaryFixture corollary_fixture(unsigned i)
{
    if (i < 1 || i > 4)
        throw domain_error("corollary_fixture: index must be in 1..4");
    ClosedFormExpr reduced;
    switch (i) {
    case 1: reduced.add_term(Rational(1, 2), {pi_factor(2)}); break;
    case 2:
        reduced.add_term(Rational(1, 8), {pi_factor(4)});
        reduced.add_term(Rational(-8), {catalan_factor(), catalan_factor()});
        break;
    case 3:
        reduced.add_term(Rational(1, 48), {pi_factor(6)});
        reduced.add_term(Rational(-16), {catalan_factor(), beta_factor(4)});
        break;
    case 4:
        reduced.add_term(Rational(17, 5760), {pi_factor(8)});
        reduced.add_term(Rational(-16), {catalan_factor(), beta_factor(6)});
        reduced.add_term(Rational(-8), {beta_factor(4), beta_factor(4)});
        break;
    }
    return {i, i - 1, rhs_theorem1(i - 1), std::move(reduced)};
}

// ---------------------------------------------------------------------------
// Integral right-hand sides. (pi/2)^k is stored as 2^-k * pi^k.

namespace detail {

inline Integer factorial(unsigned n)
{
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

inline Rational half_power(unsigned k) { return Rational(Integer(1), Integer(1) << k); }

inline Rational signed_unit(long exponent) { return Rational(exponent % 2 == 0 ? 1 : -1); }

} // namespace detail

/// int_0^{pi/2} x^{2m} cos((2n-1)x) dx
///   = sum_{j=0}^{m} (-1)^{j+n-1} / (2n-1)^{2j+1} * (2m)!/(2m-2j)! * (pi/2)^{2m-2j}.
inline ClosedFormExpr rhs_lemma1i(unsigned m, unsigned n)
{
    if (n == 0)
        throw domain_error("rhs_lemma1i: n must be positive");
    ClosedFormExpr e;
    const Integer odd = 2 * n - 1;
    Integer odd_pow = odd;
    for (unsigned j = 0; j <= m; ++j) {
        Rational c = detail::signed_unit(static_cast<long>(j + n - 1)) *
                     Rational(detail::factorial(2 * m), odd_pow * detail::factorial(2 * m - 2 * j)) *
                     detail::half_power(2 * m - 2 * j);
        e.add_term(c, {pi_factor(static_cast<int>(2 * m - 2 * j))});
        odd_pow *= odd * odd;
    }
    return e;
}

/// int_0^{pi/2} x^{2m} sin(2kx)/sin(x) dx
///   = 2 (2m)! sum_{j=0}^{m} (-1)^j Obar_k^(2j+1) / (2m-2j)! * (pi/2)^{2m-2j}.
inline ClosedFormExpr rhs_lemma1ii(unsigned m, unsigned k)
{
    if (k == 0)
        throw domain_error("rhs_lemma1ii: k must be positive");
    std::vector<unsigned> orders;
    for (unsigned j = 0; j <= m; ++j)
        orders.push_back(2 * j + 1);
    auto s = exact_state_at(k, 0, orders, std::max<std::uint64_t>(k, kDefaultExactCap));
    ClosedFormExpr e;
    for (unsigned j = 0; j <= m; ++j) {
        Rational c = detail::signed_unit(j) * Rational(2 * detail::factorial(2 * m)) *
                     s.alt_odd_harmonics[j] / Rational(detail::factorial(2 * m - 2 * j)) *
                     detail::half_power(2 * m - 2 * j);
        e.add_term(c, {pi_factor(static_cast<int>(2 * m - 2 * j))});
    }
    return e;
}

/// int_0^1 Ti_{2j+1}(t)/(1+t^2) dt = 1/2 sum_{k=0}^{2j} (-1)^k beta(k+1) beta(2j-k+1).
inline ClosedFormExpr rhs_lemma2iii(unsigned j) { return rhs_theorem1(j).scaled(Rational(1, 16)); }

/// int_0^{pi/2} x^{2m} ln(sin x)/cos x dx
///   = 2 (2m)! sum_{j=0}^{m} (-1)^{j-1}/(2m-2j)! (pi/2)^{2m-2j} sum_{k=0}^{2j} (-1)^k beta(k+1) beta(2j-k+1).
inline ClosedFormExpr rhs_lemma2iv(unsigned m)
{
    ClosedFormExpr e;
    for (unsigned j = 0; j <= m; ++j) {
        Rational outer = -detail::signed_unit(j) * Rational(2 * detail::factorial(2 * m)) /
                         Rational(detail::factorial(2 * m - 2 * j)) * detail::half_power(2 * m - 2 * j);
        for (unsigned k = 0; k <= 2 * j; ++k)
            e.add_term(outer * detail::signed_unit(k),
                       {pi_factor(static_cast<int>(2 * m - 2 * j)), beta_factor(static_cast<int>(k + 1)),
                        beta_factor(static_cast<int>(2 * j - k + 1))});
    }
    return e;
}

/// int_0^{pi/2} x^{2m} cos^{2n-1}(x) dx
///   = (2m)!/2 * 4^n/(n C(2n,n)) * sum_{j=0}^{m} (-1)^j t*_n({2}_j)/(2m-2j)! * (pi/2)^{2m-2j}.
inline ClosedFormExpr rhs_lemma3(unsigned m, unsigned n)
{
    if (n == 0)
        throw domain_error("rhs_lemma3: n must be positive");
    auto s = exact_state_at(n, m, {}, std::max<std::uint64_t>(n, kDefaultExactCap));
    Rational weight(Integer(1) << (2 * n), Integer(n) * [&] {
        Integer c = 1;
        for (unsigned k = 1; k <= n; ++k)
            c = c * (n + k) / k;
        return c;
    }());
    ClosedFormExpr e;
    for (unsigned j = 0; j <= m; ++j) {
        Rational c = Rational(detail::factorial(2 * m), 2) * weight * detail::signed_unit(j) * s.t_star[j] /
                     Rational(detail::factorial(2 * m - 2 * j)) * detail::half_power(2 * m - 2 * j);
        e.add_term(c, {pi_factor(static_cast<int>(2 * m - 2 * j))});
    }
    return e;
}

/// int_0^{pi/2} x^{2m} cos(2nx) dx
///   = (2m)! sum_{j=1}^{m} (-1)^{j+n-1}/n^{2j} * 1/(2^{2j} (2m-2j+1)!) * (pi/2)^{2m-2j+1}.
inline ClosedFormExpr rhs_R1(unsigned m, unsigned n)
{
    if (n == 0)
        throw domain_error("rhs_R1: n must be positive");
    ClosedFormExpr e;
    Integer n_pow = 1;
    for (unsigned j = 1; j <= m; ++j) {
        n_pow *= Integer(n) * n;
        Rational c = detail::signed_unit(static_cast<long>(j + n - 1)) *
                     Rational(detail::factorial(2 * m), n_pow * detail::factorial(2 * m - 2 * j + 1)) *
                     detail::half_power(2 * j) * detail::half_power(2 * m - 2 * j + 1);
        e.add_term(c, {pi_factor(static_cast<int>(2 * m - 2 * j + 1))});
    }
    return e;
}

/// int_0^{pi/2} x^{2m} ln(sin x) dx
///   = (2m)! sum_{j=0}^{m} (-1)^{j-1} eta(2j+1) / (2^{2j} (2m-2j+1)!) * (pi/2)^{2m-2j+1}.
inline ClosedFormExpr rhs_R2(unsigned m)
{
    ClosedFormExpr e;
    for (unsigned j = 0; j <= m; ++j) {
        Rational c = -detail::signed_unit(j) *
                     Rational(detail::factorial(2 * m), detail::factorial(2 * m - 2 * j + 1)) *
                     detail::half_power(2 * j) * detail::half_power(2 * m - 2 * j + 1);
        e.add_term(c, {eta_factor(static_cast<int>(2 * j + 1)), pi_factor(static_cast<int>(2 * m - 2 * j + 1))});
    }
    return e;
}

/// int_0^{pi/2} x^{2m} cos^{2n}(x) dx
///   = (2m)! C(2n,n)/4^n * sum_{j=0}^{m} (-1)^j zeta*_n({2}_j) / (2^{2j} (2m-2j+1)!) * (pi/2)^{2m-2j+1}.
inline ClosedFormExpr rhs_R3(unsigned m, unsigned n)
{
    if (n == 0)
        throw domain_error("rhs_R3: n must be positive");
    auto s = exact_state_at(n, m, {}, std::max<std::uint64_t>(n, kDefaultExactCap));
    Integer c2n = 1;
    for (unsigned k = 1; k <= n; ++k)
        c2n = c2n * (n + k) / k;
    Rational weight(c2n, Integer(1) << (2 * n));
    ClosedFormExpr e;
    for (unsigned j = 0; j <= m; ++j) {
        Rational c = Rational(detail::factorial(2 * m)) * weight * detail::signed_unit(j) * s.zeta_star[j] /
                     Rational(detail::factorial(2 * m - 2 * j + 1)) * detail::half_power(2 * j) *
                     detail::half_power(2 * m - 2 * j + 1);
        e.add_term(c, {pi_factor(static_cast<int>(2 * m - 2 * j + 1))});
    }
    return e;
}

} // namespace apery
