// racopt_cli.cpp -- command-line front end
//
// Subcommands: value, optimal-value, check, improve, count, witness.
// Letters and indices are 1-based in human-readable text (matching the
// alphabet {1, ..., d}) and 0-based in all JSON payloads and strategy files.
// Exit codes: 0 success, 2 input error, 3 enumeration-cap refusal.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <racopt/racopt.hpp>

namespace {

using namespace racopt;
using nlohmann::json;

enum class Format { kText, kJson, kCsv };

struct Options {
    Format format = Format::kText;
    unsigned digits = 12;
    bool force = false;
    std::uint64_t cap = 0;
    bool cap_set = false;

    std::uint64_t word_cap() const {
        if (force) return kUncapped;
        return cap_set ? cap : kDefaultWordCap;
    }
    std::uint64_t matrix_cap() const {
        if (force) return kUncapped;
        return cap_set ? cap : kDefaultMatrixCap;
    }
};

DecodingMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open strategy file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("strategy file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

std::string value_line(const Rational& v, unsigned digits) {
    return fraction_string(v) + " (" + decimal_string(v, digits) + ")";
}

std::string word_text(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(w[i] + 1);
    }
    return out;
}

std::string matrix_text(const DecodingMatrix& m) {
    std::string out;
    for (const Word& row : m.rows()) out += word_text(row) + "\n";
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ----------------------------------------------------------------------------
// value
// ----------------------------------------------------------------------------

int cmd_value(const std::string& file, const Options& opt) {
    const auto m = load_matrix(file);
    const ValueReport report{m.params(), strategy_value(m, opt.word_cap()),
                             ValueMethod::kWordEnumeration};
    switch (opt.format) {
        case Format::kText:
            std::cout << value_line(report.value, opt.digits) << "\n";
            break;
        case Format::kJson:
            emit(to_json(report, opt.digits));
            break;
        case Format::kCsv:
            std::cout << "n,d,value,decimal\n"
                      << report.params.n << "," << report.params.d << ","
                      << fraction_string(report.value) << ","
                      << decimal_string(report.value, opt.digits) << "\n";
            break;
    }
    return 0;
}

// ----------------------------------------------------------------------------
// optimal-value
// ----------------------------------------------------------------------------

int emit_table(int n_max, int d_max, const Options& opt) {
    const auto table = optimal_value_table(n_max, d_max);
    if (opt.format == Format::kJson) {
        json rows = json::array();
        for (int n = 1; n <= n_max; ++n) {
            json row = json::array();
            for (int d = 1; d <= d_max; ++d) row.push_back(fraction_string(table[n - 1][d - 1]));
            rows.push_back(std::move(row));
        }
        emit(json{{"n_max", n_max}, {"d_max", d_max}, {"rows", std::move(rows)}});
        return 0;
    }
    if (opt.format == Format::kCsv) {
        std::cout << "n\\d";
        for (int d = 1; d <= d_max; ++d) std::cout << "," << d;
        std::cout << "\n";
        for (int n = 1; n <= n_max; ++n) {
            std::cout << n;
            for (int d = 1; d <= d_max; ++d)
                std::cout << "," << fraction_string(table[n - 1][d - 1]);
            std::cout << "\n";
        }
        return 0;
    }
    // text: fixed-width grid
    std::size_t width = 3;
    for (const auto& row : table)
        for (const auto& v : row) width = std::max(width, fraction_string(v).size());
    std::cout << "n\\d";
    for (int d = 1; d <= d_max; ++d) {
        const std::string head = std::to_string(d);
        std::cout << " " << std::string(width - std::min(width, head.size()), ' ') << head;
    }
    std::cout << "\n";
    for (int n = 1; n <= n_max; ++n) {
        const std::string label = std::to_string(n);
        std::cout << std::string(3 - std::min<std::size_t>(3, label.size()), ' ') << label;
        for (int d = 1; d <= d_max; ++d) {
            const std::string cell = fraction_string(table[n - 1][d - 1]);
            std::cout << " " << std::string(width - cell.size(), ' ') << cell;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_optimal_value(std::optional<int> n, std::optional<int> d,
                      const std::vector<int>& table_bounds, const Options& opt) {
    if (!table_bounds.empty()) return emit_table(table_bounds[0], table_bounds[1], opt);
    if (!n || !d)
        throw std::invalid_argument("optimal-value: give N and D, or --table NMAX DMAX");
    const GameParams params(*n, *d);
    const ValueReport report{params, optimal_value(params), ValueMethod::kMultiplicityDP};
    switch (opt.format) {
        case Format::kText:
            std::cout << value_line(report.value, opt.digits) << "\n";
            break;
        case Format::kJson:
            emit(to_json(report, opt.digits));
            break;
        case Format::kCsv:
            std::cout << "n,d,value,decimal\n"
                      << params.n << "," << params.d << "," << fraction_string(report.value)
                      << "," << decimal_string(report.value, opt.digits) << "\n";
            break;
    }
    return 0;
}

// ----------------------------------------------------------------------------
// check
// ----------------------------------------------------------------------------

int cmd_check(const std::string& file, const Options& opt) {
    const auto m = load_matrix(file);
    const GameParams& p = m.params();
    const OptimalityClass regime = classify(p);
    const bool p1 = satisfies_property1(m);
    const bool p2 = satisfies_property2(m);
    const bool optimal = is_optimal(m);
    const Rational best = optimal_value(p);

    std::optional<Rational> value;
    if (p.word_space_size() <= opt.word_cap()) value = strategy_value(m, opt.word_cap());
    std::optional<Rational> gap;
    if (value) gap = best - *value;

    switch (opt.format) {
        case Format::kText:
            std::cout << "regime: " << to_string(regime) << "\n"
                      << "property1: " << (p1 ? "true" : "false") << "\n"
                      << "property2: " << (p2 ? "true" : "false") << "\n"
                      << "optimal: " << (optimal ? "true" : "false") << "\n"
                      << "optimal_value: " << value_line(best, opt.digits) << "\n";
            if (value) std::cout << "value: " << value_line(*value, opt.digits) << "\n";
            if (gap) std::cout << "gap: " << value_line(*gap, opt.digits) << "\n";
            break;
        case Format::kJson: {
            json j{{"n", p.n},
                   {"d", p.d},
                   {"regime", to_string(regime)},
                   {"property1", p1},
                   {"property2", p2},
                   {"optimal", optimal},
                   {"optimal_value", fraction_string(best)}};
            if (value) j["value"] = fraction_string(*value);
            if (gap) j["gap"] = fraction_string(*gap);
            emit(j);
            break;
        }
        case Format::kCsv:
            std::cout << "n,d,regime,property1,property2,optimal,optimal_value,value,gap\n"
                      << p.n << "," << p.d << "," << to_string(regime) << "," << p1 << "," << p2
                      << "," << optimal << "," << fraction_string(best) << ","
                      << (value ? fraction_string(*value) : "") << ","
                      << (gap ? fraction_string(*gap) : "") << "\n";
            break;
    }
    return 0;
}

// ----------------------------------------------------------------------------
// improve
// ----------------------------------------------------------------------------

int cmd_improve(const std::string& file, const Options& opt) {
    const auto m = load_matrix(file);
    const NormalizationTrace trace = normalize_to_property1(m, opt.word_cap());
    switch (opt.format) {
        case Format::kText: {
            std::cout << "steps: " << trace.steps.size() << "\n";
            for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                const auto& s = trace.steps[i];
                std::cout << "  " << (i + 1) << ": column " << (s.column + 1) << ", row "
                          << (s.row + 1) << ": " << (s.from + 1) << " -> " << (s.to + 1) << "\n";
            }
            if (trace.values) {
                std::cout << "values:";
                for (const Rational& v : *trace.values) std::cout << " " << fraction_string(v);
                std::cout << "\n";
            }
            std::cout << "final:\n" << matrix_text(trace.final);
            break;
        }
        case Format::kJson:
            emit(to_json(trace, opt.digits));
            break;
        case Format::kCsv:
            std::cout << "step,j,y,from,to\n";
            for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                const auto& s = trace.steps[i];
                std::cout << (i + 1) << "," << s.column << "," << s.row << "," << s.from << ","
                          << s.to << "\n";
            }
            break;
    }
    return 0;
}

// ----------------------------------------------------------------------------
// count
// ----------------------------------------------------------------------------

int cmd_count(int n, int d, bool with_oracle, const Options& opt) {
    const GameParams params(n, d);
    const auto count = count_optimal(params, opt.matrix_cap());
    std::optional<BigInt> oracle;
    std::optional<std::string> verdict;
    if (with_oracle) {
        oracle = oracle_enumerate(params, opt.matrix_cap()).optimizer_count;
        verdict = count && *count == *oracle ? "AGREE" : "DISAGREE";
    }
    switch (opt.format) {
        case Format::kText:
            std::cout << "count: " << (count ? count->str() : "unavailable") << "\n";
            if (oracle) std::cout << "oracle: " << oracle->str() << "\n";
            if (verdict) std::cout << "verdict: " << *verdict << "\n";
            break;
        case Format::kJson: {
            json j{{"n", n}, {"d", d}};
            j["count"] = count ? json(count->str()) : json(nullptr);
            if (oracle) j["oracle"] = oracle->str();
            if (verdict) j["verdict"] = *verdict;
            emit(j);
            break;
        }
        case Format::kCsv:
            std::cout << "n,d,count,oracle,verdict\n"
                      << n << "," << d << "," << (count ? count->str() : "") << ","
                      << (oracle ? oracle->str() : "") << "," << (verdict ? *verdict : "")
                      << "\n";
            break;
    }
    return 0;
}

// ----------------------------------------------------------------------------
// witness
// ----------------------------------------------------------------------------

int max_sim_over_rows(const DecodingMatrix& m, const Word& x) {
    int best = 0;
    for (const Word& row : m.rows()) best = std::max(best, sim(row, x));
    return best;
}

int cmd_witness(const std::string& file, std::optional<int> column, std::optional<int> y1,
                std::optional<int> y2, const Options& opt) {
    const auto m = load_matrix(file);
    const OptimalityClass regime = classify(m.params());

    int lemma = 0;
    Word witness;
    json extra;
    std::string text_extra;
    if (regime == OptimalityClass::kGeneral) {
        if (!column || !y1 || !y2)
            throw std::invalid_argument(
                "witness: the general regime needs --column, --y1 and --y2 (1-based)");
        lemma = 3;
        witness = lemma3_witness(m, *column - 1, *y1 - 1, *y2 - 1);
        const auto merged = m.with_entry(*y1 - 1, *column - 1, m.at(*y2 - 1, *column - 1));
        const int before = max_sim_over_rows(m, witness);
        const int after = max_sim_over_rows(merged, witness);
        extra = json{{"max_sim", before}, {"merged_max_sim", after}};
        text_extra = "max_sim: " + std::to_string(before) +
                     "\nmerged_max_sim: " + std::to_string(after);
    } else if (regime == OptimalityClass::kBinaryEvenN) {
        lemma = 5;
        witness = lemma5_witness(m);
        const int best = max_sim_over_rows(m, witness);
        extra = json{{"max_sim", best}};
        text_extra = "max_sim: " + std::to_string(best);
    } else {
        throw std::invalid_argument(
            "witness: no witness construction applies to the " + to_string(regime) +
            " regime (needs the general or binary even-n regime)");
    }

    switch (opt.format) {
        case Format::kText:
            std::cout << "lemma: " << lemma << "\n"
                      << "witness: " << word_text(witness) << "\n"
                      << text_extra << "\n";
            break;
        case Format::kJson: {
            json j{{"n", m.params().n}, {"d", m.params().d}, {"lemma", lemma},
                   {"witness", witness}};
            j.update(extra);
            emit(j);
            break;
        }
        case Format::kCsv: {
            std::string w;
            for (std::size_t i = 0; i < witness.size(); ++i)
                w += (i ? " " : "") + std::to_string(witness[i]);
            std::cout << "n,d,lemma,witness,max_sim\n"
                      << m.params().n << "," << m.params().d << "," << lemma << "," << w << ","
                      << extra["max_sim"].get<int>() << "\n";
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "racopt -- exact analysis of classical n->1 random access codes over a d-letter "
        "alphabet.\n"
        "Strategy files are JSON: {\"n\": int, \"d\": int, \"rows\": d arrays of n 0-based "
        "letters}.\nHuman-readable output shows 1-based letters; JSON stays 0-based."};
    app.require_subcommand(1);

    Options opt;
    const std::map<std::string, Format> format_names{
        {"text", Format::kText}, {"json", Format::kJson}, {"csv", Format::kCsv}};
    app.add_option("--format", opt.format, "Output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_str("text");
    app.add_option("--digits", opt.digits, "Significant digits in decimal renderings")
        ->check(CLI::Range(1, 1000))
        ->default_val(12);
    auto* cap_opt =
        app.add_option("--cap", opt.cap,
                       "Enumeration cap for the current command: words (default 10^8) for "
                       "value/check/improve, matrices (default 2*10^7) for count --oracle")
            ->envname("RACOPT_CAP");
    app.add_flag("--force", opt.force, "Lift the enumeration cap entirely");

    std::string strategy_file;

    auto* value_cmd = app.add_subcommand("value", "Exact value of a strategy file");
    value_cmd->add_option("file", strategy_file, "Strategy JSON file")->required();

    auto* optval_cmd =
        app.add_subcommand("optimal-value", "Exact optimal value for (n, d), or a whole table");
    std::optional<int> ov_n, ov_d;
    std::vector<int> table_bounds;
    optval_cmd->add_option("n", ov_n, "Word length")->check(CLI::Range(1, kMaxParam));
    optval_cmd->add_option("d", ov_d, "Alphabet size")->check(CLI::Range(1, kMaxParam));
    optval_cmd->add_option("--table", table_bounds, "Emit the full grid for n <= NMAX, d <= DMAX")
        ->expected(2)
        ->check(CLI::Range(1, 1000));

    auto* check_cmd =
        app.add_subcommand("check", "Certify a strategy file against the optimality rules");
    check_cmd->add_option("file", strategy_file, "Strategy JSON file")->required();

    auto* improve_cmd =
        app.add_subcommand("improve", "Normalize a strategy without losing value");
    improve_cmd->add_option("file", strategy_file, "Strategy JSON file")->required();

    auto* count_cmd = app.add_subcommand("count", "Number of optimal deterministic strategies");
    int count_n = 1, count_d = 1;
    bool with_oracle = false;
    count_cmd->add_option("n", count_n, "Word length")->required()->check(CLI::Range(1, kMaxParam));
    count_cmd->add_option("d", count_d, "Alphabet size")
        ->required()
        ->check(CLI::Range(1, kMaxParam));
    count_cmd->add_flag("--oracle", with_oracle, "Also scan the whole matrix space and compare");

    auto* witness_cmd = app.add_subcommand(
        "witness", "Word certifying strict suboptimality for a matrix (and cell)");
    std::optional<int> w_column, w_y1, w_y2;
    witness_cmd->add_option("file", strategy_file, "Strategy JSON file")->required();
    witness_cmd->add_option("--column", w_column, "Merge column (1-based)");
    witness_cmd->add_option("--y1", w_y1, "Row receiving the other row's letter (1-based)");
    witness_cmd->add_option("--y2", w_y2, "Row providing the letter (1-based)");

    // global flags remain valid after the subcommand name
    for (CLI::App* sub : {value_cmd, optval_cmd, check_cmd, improve_cmd, count_cmd, witness_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    opt.cap_set = cap_opt->count() > 0;

    try {
        if (app.got_subcommand(value_cmd)) return cmd_value(strategy_file, opt);
        if (app.got_subcommand(optval_cmd)) return cmd_optimal_value(ov_n, ov_d, table_bounds, opt);
        if (app.got_subcommand(check_cmd)) return cmd_check(strategy_file, opt);
        if (app.got_subcommand(improve_cmd)) return cmd_improve(strategy_file, opt);
        if (app.got_subcommand(count_cmd)) return cmd_count(count_n, count_d, with_oracle, opt);
        if (app.got_subcommand(witness_cmd))
            return cmd_witness(strategy_file, w_column, w_y1, w_y2, opt);
        throw std::logic_error("no subcommand dispatched");
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (use --cap or --force to override)\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
