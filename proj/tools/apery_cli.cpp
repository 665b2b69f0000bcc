// apery: verify identities, print constant tables, benchmark series convergence.
//
// Exit codes: 0 all PASS, 1 any FAIL or non-converged check, 2 usage error,
// 3 precision or capacity error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "apery/suite.hpp"

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, capacity = 3 };

int print_reports(const std::vector<apery::VerificationReport>& reports, bool json, bool timing)
{
    int code = ok;
    std::size_t passed = 0;
    for (auto r : reports) {
        if (json) {
            if (!timing)
                r.elapsed_ms = 0;
            std::cout << apery::to_json_line(r) << '\n';
        } else {
            std::cout << apery::to_text_line(r) << '\n';
        }
        switch (r.status) {
        case apery::Status::pass: ++passed; break;
        case apery::Status::fail: code = std::max<int>(code, failed); break;
        case apery::Status::inconclusive:
            code = std::max<int>(code, r.cause == apery::InconclusiveCause::capacity ? capacity : failed);
            break;
        }
    }
    if (!json)
        std::cout << passed << "/" << reports.size() << " PASS\n";
    return code;
}

void print_table(const std::vector<apery::TableRow>& rows)
{
    std::size_t w0 = 0, w1 = 0;
    for (const auto& r : rows) {
        w0 = std::max(w0, r.label.size());
        w1 = std::max(w1, r.closed_form.size());
    }
    for (const auto& r : rows)
        std::cout << std::left << std::setw(static_cast<int>(w0)) << r.label << "  " << std::setw(static_cast<int>(w1))
                  << r.closed_form << "  " << r.value << '\n';
}

void print_bench(const apery::BenchResult& b, bool json, bool timing)
{
    if (json) {
        apery::ordered_json rows = apery::ordered_json::array();
        for (const auto& r : b.rows)
            rows.push_back({{"n", r.n}, {"partial_sum", r.partial_sum}, {"abs_error", r.abs_error},
                            {"elapsed_ms", timing ? r.elapsed_ms : 0}});
        apery::ordered_json j;
        j["family"] = apery::to_string(b.family.tag);
        j["j"] = b.family.depth;
        j["closed_form"] = b.closed_form;
        j["rows"] = std::move(rows);
        if (b.fitted_exponent) {
            std::ostringstream s;
            s << std::fixed << std::setprecision(4) << *b.fitted_exponent;
            j["fitted_exponent"] = s.str();
        } else {
            j["fitted_exponent"] = nullptr;
        }
        std::cout << j.dump() << '\n';
        return;
    }
    std::cout << apery::to_string(b.family.tag) << " j=" << b.family.depth << "  limit " << b.closed_form << '\n';
    std::cout << std::left << std::setw(12) << "N" << std::setw(26) << "S_N" << std::setw(12) << "|S_N - S|"
              << "ms\n";
    for (const auto& r : b.rows)
        std::cout << std::left << std::setw(12) << r.n << std::setw(26) << r.partial_sum << std::setw(12)
                  << r.abs_error << r.elapsed_ms << '\n';
    if (b.fitted_exponent)
        std::cout << "fitted tail exponent " << std::fixed << std::setprecision(4) << *b.fitted_exponent << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verify Apery-like series and integral identities at high precision"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run one identity over a parameter grid");
    std::string identity;
    std::map<std::string, std::string> ranges;
    unsigned digits = 0;
    std::string tolerance;
    bool json = false;
    bool timing = false;
    verify->add_option("identity", identity, "Identity id")->required();
    for (const char* p : {"j", "m", "n", "k", "K", "t", "x"}) {
        std::string name = std::string("--") + p;
        verify->add_option_function<std::string>(
            name, [&ranges, key = std::string(p)](const std::string& v) { ranges[key] = v; },
            "Range A..B, single value or comma list");
    }
    verify->add_option("--digits", digits, "Significant digits of the context");
    verify->add_option("--tolerance", tolerance, "Override the default tolerance");
    verify->add_flag("--json", json, "Newline-delimited JSON reports");
    verify->add_flag("--timing", timing, "Record elapsed_ms in JSON (otherwise 0 for reproducible output)");

    // table
    auto* table = app.add_subcommand("table", "Print closed forms and values");
    std::string which;
    unsigned table_digits = 12;
    table->add_option("which", which, "corollary | beta")->required()->check(CLI::IsMember({"corollary", "beta"}));
    table->add_option("--digits", table_digits, "Digits after the decimal point");

    // bench
    auto* bench = app.add_subcommand("bench", "Partial sums against the closed form along a geometric schedule");
    std::string family;
    unsigned bench_j = 0;
    std::string schedule;
    unsigned bench_digits = 20;
    bool bench_json = false;
    bool bench_timing = false;
    bench->add_option("family", family, "theorem1 | gencev")->required()->check(CLI::IsMember({"theorem1", "gencev"}));
    bench->add_option("--j", bench_j, "Depth");
    bench->add_option("--schedule", schedule, "N0xR^k")->required();
    bench->add_option("--digits", bench_digits, "Significant digits");
    bench->add_flag("--json", bench_json, "JSON output");
    bench->add_flag("--timing", bench_timing, "Record elapsed_ms in JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*verify) {
            apery::VerifyRequest req{identity, ranges, std::nullopt, std::nullopt};
            if (verify->count("--digits"))
                req.digits = digits;
            if (verify->count("--tolerance"))
                req.tolerance = tolerance;
            return print_reports(apery::run_suite(req), json, timing);
        }
        if (*table) {
            if (table_digits == 0)
                throw apery::capacity_error("table needs at least one digit");
            print_table(which == "corollary" ? apery::corollary_table(table_digits)
                                             : apery::beta_table(table_digits));
            return ok;
        }
        if (*bench) {
            auto tag = family == "theorem1" ? apery::SeriesTag::theorem1 : apery::SeriesTag::gencev;
            print_bench(apery::run_bench(tag, bench_j, apery::parse_schedule(schedule), bench_digits), bench_json,
                        bench_timing);
            return ok;
        }
    } catch (const apery::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return capacity;
    } catch (const apery::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const apery::convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    } catch (const apery::consistency_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failed;
    }
    return usage;
}
