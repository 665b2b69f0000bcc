#include <gtest/gtest.h>

#include "apery/suite.hpp"

using namespace apery;

namespace {

std::size_t significant_digits(const std::string& s)
{
    std::string mant = s.substr(0, s.find('e'));
    std::size_t i = 0;
    while (i < mant.size() && (mant[i] == '-' || mant[i] == '0' || mant[i] == '.'))
        ++i;
    std::size_t count = 0;
    for (; i < mant.size(); ++i)
        if (std::isdigit(static_cast<unsigned char>(mant[i])))
            ++count;
    return count;
}

} // namespace

TEST(Format, ExactSignificantDigits)
{
    PrecisionScope scope(300);
    Real values[] = {Real(2), Real(1) / 3, Real(-22) / 7, Real(12345678), ldexp(Real(1), -30), Real(1e25) / 7,
                     Real(-5) / 10000};
    for (unsigned d : {1u, 3u, 12u, 20u, 40u})
        for (const auto& v : values)
            EXPECT_EQ(significant_digits(format_significant(v, d)), d) << format_significant(v, d);
    EXPECT_EQ(format_significant(Real(2), 5), "2.0000");
    EXPECT_EQ(format_significant(Real(11) / 16, 20), "0.68750000000000000000");
    EXPECT_EQ(format_significant(Real(0), 5), "0");
    EXPECT_THROW(format_significant(Real(1), 0), domain_error);
}

TEST(Format, ErrorRoundsUp)
{
    PrecisionScope scope(100);
    EXPECT_EQ(format_error(Real(0)), "0");
    EXPECT_EQ(format_error(Real(1234) / 1000000), "1.24e-3");
    EXPECT_EQ(format_error(Real(-1) / 1000), "1.00e-3");
    EXPECT_EQ(format_error(Real(99951) / 100000), "1.00e+0");
    EXPECT_GE(parse_decimal(format_error(Real(1) / 3), 100), Real(1) / 3);
}

TEST(Format, FixedDecimals)
{
    PrecisionScope scope(100);
    EXPECT_EQ(format_fixed(Real(1) / 8, 2), "0.12");
    EXPECT_EQ(format_fixed(Real(-7) / 2, 3), "-3.500");
    EXPECT_THROW(parse_decimal("1.2.3", 64), domain_error);
}

TEST(Settle, PassIffFormattedErrorWithinTolerance)
{
    PrecisionScope scope(128);
    VerificationReport r;
    settle_report(r, Real(1), Real(1) + ldexp(Real(1), -34), "1e-10", 20);
    EXPECT_EQ(r.abs_error, "5.83e-11");
    EXPECT_EQ(r.status, Status::pass);
    settle_report(r, Real(1), Real(1) + ldexp(Real(1), -33), "1e-10", 20);
    EXPECT_EQ(r.abs_error, "1.17e-10");
    EXPECT_EQ(r.status, Status::fail);
    settle_report(r, Real(1), Real(1) + Real(1) / 1024, "9.77e-4", 20); // 9.765625e-4 rounds up to the tolerance
    EXPECT_EQ(r.status, Status::pass);
    settle_report(r, Real(3), Real(3), "0", 20);
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(r.abs_error, "0");
    for (const auto& rep : run_suite({"L1i", {{"m", "0..1"}, {"n", "1..3"}}, std::nullopt, std::nullopt})) {
        bool within = parse_decimal(rep.abs_error, 128) <= parse_decimal(rep.tolerance, 128);
        EXPECT_EQ(rep.status == Status::pass, within);
        EXPECT_EQ(significant_digits(rep.lhs), 20u) << rep.lhs;
    }
}

TEST(Json, RoundTripIsByteIdentical)
{
    auto reports = run_suite({"beta-table", {{"m", "1..4"}}, 30u, std::nullopt});
    auto more = run_suite({"oracle-tstar", {{"n", "3"}, {"j", "0..2"}}, std::nullopt, std::nullopt});
    reports.insert(reports.end(), more.begin(), more.end());
    VerificationReport inc;
    inc.identity_id = "theorem1";
    inc.params = {{"j", 9}};
    mark_inconclusive(inc, InconclusiveCause::capacity, "1e-15", "capacity: too deep");
    reports.push_back(inc);
    for (const auto& r : reports) {
        std::string line = to_json_line(r);
        auto parsed = report_from_json(ordered_json::parse(line));
        EXPECT_EQ(to_json_line(parsed), line);
        EXPECT_EQ(parsed.status, r.status);
    }
    auto j = to_json(reports.front());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    std::vector<std::string> expected{"identity_id", "params", "lhs",         "rhs",   "abs_error", "tolerance",
                                      "method",      "work",   "elapsed_ms", "status"};
    EXPECT_EQ(keys, expected);
    EXPECT_THROW(status_from_string("MAYBE"), domain_error);
}

TEST(Ranges, Parsing)
{
    EXPECT_EQ(parse_range("3"), (std::vector<std::int64_t>{3}));
    EXPECT_EQ(parse_range("0..3"), (std::vector<std::int64_t>{0, 1, 2, 3}));
    EXPECT_EQ(parse_range("25,50,90"), (std::vector<std::int64_t>{25, 50, 90}));
    EXPECT_EQ(parse_range("1..2,5"), (std::vector<std::int64_t>{1, 2, 5}));
    for (const char* bad : {"", "1..", "..2", "a", "3..1", "1,,2", "1.5"})
        EXPECT_THROW(parse_range(bad), domain_error) << bad;
}

TEST(Suite, Registry)
{
    const char* ids[] = {"theorem1", "gencev", "corollary", "L1i", "L1ii", "L2i", "L2ii", "L2iii", "L2iv",
                         "L3", "R1", "R2", "R3", "oracle-tstar", "oracle-zetastar", "poly-identities", "beta-table"};
    EXPECT_EQ(identity_registry().size(), std::size(ids));
    for (const char* id : ids) {
        EXPECT_NO_THROW(identity_info(id));
        EXPECT_NO_THROW(default_tolerance(id));
    }
    EXPECT_THROW(run_suite({"lemma9", {}, std::nullopt, std::nullopt}), domain_error);
    EXPECT_THROW(run_suite({"L3", {{"j", "1"}}, std::nullopt, std::nullopt}), domain_error);
    EXPECT_THROW(run_suite({"L3", {}, 0u, std::nullopt}), capacity_error);
    EXPECT_THROW(run_suite({"L3", {}, 20000u, std::nullopt}), capacity_error);
    EXPECT_THROW(run_suite({"L3", {}, std::nullopt, std::string("abc")}), domain_error);
}

TEST(Suite, DeterministicOrderAndOutput)
{
    VerifyRequest req{"R3", {{"m", "0..1"}, {"n", "1..2"}}, std::nullopt, std::nullopt};
    auto a = run_suite(req);
    auto b = run_suite(req);
    ASSERT_EQ(a.size(), 4u);
    std::vector<std::pair<std::int64_t, std::int64_t>> order;
    for (const auto& r : a)
        order.emplace_back(r.params[0].second, r.params[1].second);
    EXPECT_EQ(order, (std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {0, 2}, {1, 1}, {1, 2}}));
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i].elapsed_ms = b[i].elapsed_ms = 0;
        EXPECT_EQ(to_json_line(a[i]), to_json_line(b[i]));
    }
}

TEST(Suite, TheoremOneMatchesCorollaryValues)
{
    auto reps = run_suite({"theorem1", {{"j", "0..3"}}, 20u, std::nullopt});
    ASSERT_EQ(reps.size(), 4u);
    const char* prefixes[] = {"4.93480220054467930", "5.46419262151", "5.53551458971", "5.54407355391"};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(reps[i].status, Status::pass);
        EXPECT_EQ(reps[i].rhs.rfind(prefixes[i], 0), 0u) << reps[i].rhs;
    }
}

TEST(Suite, GencevJZero)
{
    auto reps = run_suite({"gencev", {{"j", "0"}}, 15u, std::nullopt});
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].status, Status::pass);
    EXPECT_EQ(reps[0].lhs, "1.38629436111989");
    EXPECT_EQ(reps[0].rhs, "1.38629436111989");
}

TEST(Suite, TooDeepIsCapacityInconclusive)
{
    auto reps = run_suite({"theorem1", {{"j", "7"}}, std::nullopt, std::nullopt});
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].status, Status::inconclusive);
    EXPECT_EQ(reps[0].cause, InconclusiveCause::capacity);
}

TEST(Suite, OraclesAreExact)
{
    for (const char* id : {"oracle-tstar", "oracle-zetastar"})
        for (const auto& r : run_suite({id, {}, std::nullopt, std::nullopt})) {
            EXPECT_EQ(r.status, Status::pass);
            EXPECT_EQ(r.abs_error, "0");
        }
}

TEST(Tables, CorollaryAndBeta)
{
    auto c = corollary_table(12);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[0].value, "4.934802200545");
    EXPECT_EQ(c[0].closed_form, "1/2*pi^2");
    auto coarse = corollary_table(1);
    EXPECT_EQ(coarse[0].value, "4.9");
    auto b = beta_table(10);
    ASSERT_EQ(b.size(), 8u);
    EXPECT_EQ(b[0].closed_form, "1/4*pi");
    EXPECT_EQ(b[1].closed_form, "G");
    EXPECT_EQ(b[2].closed_form, "1/32*pi^3");
    EXPECT_EQ(b[4].closed_form, "5/1536*pi^5");
    EXPECT_EQ(b[6].closed_form, "61/184320*pi^7");
    EXPECT_EQ(b[1].value, "0.9159655942");
}

TEST(Bench, ScheduleAndRows)
{
    auto s = parse_schedule("1000x4^2");
    EXPECT_EQ(s.points(), (std::vector<std::uint64_t>{1000, 4000, 16000}));
    for (const char* bad : {"1000", "x4^2", "10x1^2", "0x2^1", "10x2^", "10x2^1z"})
        EXPECT_THROW(parse_schedule(bad), domain_error) << bad;
    EXPECT_THROW(parse_schedule("1000x10^9"), capacity_error);

    auto one = run_bench(SeriesTag::theorem1, 0, parse_schedule("1x2^0"));
    ASSERT_EQ(one.rows.size(), 1u);
    EXPECT_EQ(one.rows[0].partial_sum, "2.0000000000000000000");
    EXPECT_FALSE(one.fitted_exponent.has_value());
    auto two = run_bench(SeriesTag::gencev, 0, parse_schedule("2x2^0"));
    EXPECT_EQ(two.rows[0].partial_sum, "0.68750000000000000000");

    auto law = run_bench(SeriesTag::theorem1, 1, parse_schedule("1000x4^2"));
    ASSERT_TRUE(law.fitted_exponent.has_value());
    EXPECT_NEAR(*law.fitted_exponent, -0.5, 0.02);
}
