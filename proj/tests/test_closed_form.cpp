#include <random>

#include <gtest/gtest.h>

#include "apery/closed_form.hpp"

using namespace apery;

namespace {

Real mpfr_catalan(unsigned bits)
{
    PrecisionScope scope(bits);
    Real g;
    mpfr_const_catalan(g.backend().data(), MPFR_RNDN);
    return g;
}

Real slack(const PrecisionContext& ctx) { return ldexp(Real(1), -static_cast<int>(ctx.working_bits()) + 8); }

} // namespace

TEST(Theorem1Rhs, TermCountsBeforeAndAfterFolding)
{
    for (unsigned j = 0; j <= 8; ++j) {
        EXPECT_EQ(rhs_theorem1(j).size(), 2 * j + 1) << j;
        EXPECT_EQ(fold_symmetry(rhs_theorem1(j)).size(), j + 1) << j;
    }
}

TEST(Theorem1Rhs, FoldedForms)
{
    EXPECT_EQ(fold_symmetry(rhs_theorem1(0)).to_string(), "8*beta(1)^2");
    EXPECT_EQ(fold_symmetry(rhs_theorem1(1)).to_string(), "16*beta(1)*beta(3) - 8*beta(2)^2");
    EXPECT_EQ(fold_symmetry(rhs_theorem1(2)).to_string(), "16*beta(1)*beta(5) - 16*beta(2)*beta(4) + 8*beta(3)^2");
    EXPECT_EQ(fold_symmetry(rhs_theorem1(3)).to_string(),
              "16*beta(1)*beta(7) - 16*beta(2)*beta(6) + 16*beta(3)*beta(5) - 8*beta(4)^2");
    EXPECT_TRUE(rhs_theorem1(1).structurally_equal(parse_closed_form("16*beta(1)*beta(3) - 8*beta(2)^2")));
}

TEST(Theorem1Rhs, FoldingPreservesValue)
{
    auto ctx = make_context(30);
    for (unsigned j = 0; j <= 6; ++j) {
        auto raw = eval(rhs_theorem1(j), ctx);
        auto folded = eval(fold_symmetry(rhs_theorem1(j)), ctx);
        PrecisionScope scope(ctx.working_bits() + 16);
        EXPECT_LE(abs(Real(raw.value - folded.value)), raw.abs_error_bound + folded.abs_error_bound) << j;
        EXPECT_TRUE(rhs_theorem1(j).structurally_equal(fold_symmetry(rhs_theorem1(j))));
    }
}

TEST(GencevRhs, SingleEtaTerm)
{
    EXPECT_EQ(rhs_gencev(0).to_string(), "2*eta(1)");
    EXPECT_EQ(rhs_gencev(1).to_string(), "2*eta(3)");
    EXPECT_EQ(rhs_gencev(2).to_string(), "2*eta(5)");
}

TEST(Eval, NamedValues)
{
    auto ctx = make_context(30);
    auto c1 = eval(rhs_theorem1(0), ctx);
    Real p = pi(ctx.with_extra_bits(32)).value;
    Real g = mpfr_catalan(ctx.working_bits() + 32);
    PrecisionScope scope(ctx.working_bits() + 32);
    EXPECT_TRUE(c1.contains(p * p / 2, slack(ctx)));
    EXPECT_LE(c1.abs_error_bound, ctx.target_abs_error());
    auto c2 = eval(rhs_theorem1(1), ctx);
    EXPECT_TRUE(c2.contains(pow(p, 4) / 8 - 8 * g * g, slack(ctx)));
    auto zero = eval(ClosedFormExpr{}, ctx);
    EXPECT_EQ(zero.value, 0);
    EXPECT_EQ(zero.abs_error_bound, 0);
    EXPECT_EQ(ClosedFormExpr{}.to_string(), "0");
}

TEST(Corollary, RawAndReducedAgree)
{
    auto ctx = make_context(40);
    const char* reduced[] = {"1/2*pi^2", "1/8*pi^4 - 8*G^2", "1/48*pi^6 - 16*beta(4)*G",
                             "17/5760*pi^8 - 16*beta(6)*G - 8*beta(4)^2"};
    for (unsigned i = 1; i <= 4; ++i) {
        auto fx = corollary_fixture(i);
        EXPECT_EQ(fx.depth, i - 1);
        EXPECT_EQ(fx.reduced.to_string(), reduced[i - 1]);
        EXPECT_TRUE(fx.raw.structurally_equal(rhs_theorem1(i - 1)));
        auto a = eval(fx.raw, ctx);
        auto b = eval(fx.reduced, ctx);
        PrecisionScope scope(ctx.working_bits() + 16);
        EXPECT_LE(abs(Real(a.value - b.value)), a.abs_error_bound + b.abs_error_bound) << i;
    }
    EXPECT_THROW(corollary_fixture(0), domain_error);
    EXPECT_THROW(corollary_fixture(5), domain_error);
}

TEST(ClosedFormExprTest, CanonicalMergesAndDropsZeros)
{
    ClosedFormExpr e;
    e.add_term(Rational(3), {beta_factor(3), beta_factor(1)});
    e.add_term(Rational(2), {beta_factor(1), beta_factor(3)});
    e.add_term(Rational(0), {eta_factor(5)});
    e.add_term(Rational(1, 2), {pi_factor(2), pi_factor(3)});
    e.add_term(Rational(-1, 2), {pi_factor(5)});
    EXPECT_EQ(e.size(), 4u); // zero term dropped on insertion, others kept
    auto c = e.canonical();
    EXPECT_EQ(c.to_string(), "5*beta(1)*beta(3)");
    EXPECT_TRUE(e.structurally_equal(parse_closed_form("2*beta(3)*beta(1) + 3*beta(1)*beta(3)")));
}

TEST(ClosedFormExprTest, ScaledAndSum)
{
    auto e = rhs_theorem1(1).scaled(Rational(1, 16));
    EXPECT_EQ(e.canonical().to_string(), "beta(1)*beta(3) - 1/2*beta(2)^2");
    auto s = rhs_gencev(0) + rhs_gencev(0).scaled(Rational(-1));
    EXPECT_TRUE(s.canonical().empty());
}

TEST(Parse, RejectsMalformed)
{
    for (const char* bad : {"", "beta(", "2*", "3 beta(1)", "1/0*pi", "beta(1) +", "x", "2*zeta(3)"})
        EXPECT_THROW(parse_closed_form(bad), domain_error) << bad;
    EXPECT_TRUE(parse_closed_form("0").empty());
}

TEST(Parse, RoundTripsRandomExpressions)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        ClosedFormExpr e;
        int terms = static_cast<int>(rng() % 5) + 1;
        for (int t = 0; t < terms; ++t) {
            Rational c(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
            std::vector<Factor> fs;
            int nf = static_cast<int>(rng() % 4);
            for (int k = 0; k < nf; ++k) {
                switch (rng() % 4) {
                case 0: fs.push_back(beta_factor(static_cast<int>(rng() % 9) + 1)); break;
                case 1: fs.push_back(eta_factor(static_cast<int>(rng() % 9) + 1)); break;
                case 2: fs.push_back(pi_factor(static_cast<int>(rng() % 6) + 1)); break;
                default: fs.push_back(catalan_factor()); break;
                }
            }
            e.add_term(c, fs);
        }
        auto canon = e.canonical();
        std::string text = canon.to_string();
        auto back = parse_closed_form(text);
        EXPECT_EQ(back.to_string(), text);
        EXPECT_TRUE(back.structurally_equal(canon)) << text;
        // non-canonical text also parses back to the same structure
        EXPECT_TRUE(parse_closed_form(e.to_string()).structurally_equal(e)) << e.to_string();
    }
}

TEST(L3Rhs, SmallCases)
{
    auto ctx = make_context(30);
    Real p = pi(ctx.with_extra_bits(32)).value;
    PrecisionScope scope(ctx.working_bits() + 32);
    Real h = p / 2;
    for (unsigned n = 1; n <= 6; ++n) {
        // m = 0: (1/2) 4^n / (n C(2n,n))
        Integer c = 1;
        for (unsigned k = 1; k <= n; ++k)
            c = c * (n + k) / k;
        Rational expected = Rational(Integer(1) << (2 * n), 2 * Integer(n) * c);
        EXPECT_EQ(rhs_lemma3(0, n).canonical().to_string(), expected.str()) << n;
    }
    EXPECT_TRUE(eval(rhs_lemma3(1, 1), ctx).contains(Real(h * h - 2), slack(ctx)));
    EXPECT_TRUE(eval(rhs_lemma3(2, 1), ctx).contains(Real(pow(h, 4) - 12 * h * h + 24), slack(ctx)));
}

TEST(IntegralRhs, ElementaryValues)
{
    auto ctx = make_context(30);
    Real p = pi(ctx.with_extra_bits(32)).value;
    PrecisionScope scope(ctx.working_bits() + 32);
    Real h = p / 2;
    EXPECT_EQ(rhs_lemma1i(0, 1).to_string(), "1");
    EXPECT_EQ(rhs_lemma1i(0, 2).to_string(), "-1/3");
    EXPECT_TRUE(eval(rhs_lemma1i(1, 1), ctx).contains(Real(h * h - 2), slack(ctx)));
    EXPECT_EQ(rhs_lemma1ii(0, 1).to_string(), "2");
    EXPECT_EQ(rhs_lemma1ii(0, 2).to_string(), "4/3");
    EXPECT_TRUE(eval(rhs_lemma1ii(1, 1), ctx).contains(Real(2 * (h * h - 2)), slack(ctx)));
    EXPECT_TRUE(eval(rhs_lemma2iii(0), ctx).contains(Real(p * p / 32), slack(ctx)));
    EXPECT_TRUE(eval(rhs_lemma2iv(0), ctx).contains(Real(-p * p / 8), slack(ctx)));
    EXPECT_TRUE(rhs_R1(0, 3).empty());
    EXPECT_TRUE(eval(rhs_R2(0), ctx).contains(Real(-h * log(Real(2))), slack(ctx)));
    EXPECT_TRUE(eval(rhs_R3(0, 1), ctx).contains(Real(p / 4), slack(ctx)));
}

// Dirichlet kernel: the L1ii right side is twice the sum of L1i right sides.
TEST(IntegralRhs, DirichletKernelStructure)
{
    for (unsigned m = 0; m <= 3; ++m)
        for (unsigned k = 1; k <= 6; ++k) {
            ClosedFormExpr sum;
            for (unsigned n = 1; n <= k; ++n)
                sum = sum + rhs_lemma1i(m, n).scaled(Rational(2));
            EXPECT_TRUE(sum.structurally_equal(rhs_lemma1ii(m, k))) << m << " " << k;
        }
}
