// json_io.hpp -- JSON wire formats for strategies, reports and traces
//
// Strategy files are objects {"n": int, "d": int, "rows": [[...], ...]} with
// d rows of n letters each, 0-based; out-of-range or non-integer entries are
// rejected. Exact rationals always serialize as "p/q" strings.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "improve.hpp"
#include "optimality.hpp"
#include "rational.hpp"
#include "value.hpp"

namespace racopt {

inline nlohmann::json to_json(const DecodingMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Word& row : m.rows()) rows.push_back(row);
    return nlohmann::json{{"n", m.params().n}, {"d", m.params().d}, {"rows", std::move(rows)}};
}

inline DecodingMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("strategy JSON: expected an object");
    for (const char* key : {"n", "d", "rows"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("strategy JSON: missing key \"") + key + "\"");
    if (!j["n"].is_number_integer() || !j["d"].is_number_integer())
        throw std::invalid_argument("strategy JSON: \"n\" and \"d\" must be integers");

    const GameParams params(j["n"].get<int>(), j["d"].get<int>());
    const nlohmann::json& rows = j["rows"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(params.d))
        throw std::invalid_argument("strategy JSON: \"rows\" must be an array of d rows");

    std::vector<Word> parsed;
    parsed.reserve(rows.size());
    for (const nlohmann::json& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(params.n))
            throw std::invalid_argument("strategy JSON: every row must hold n letters");
        Word w;
        w.reserve(row.size());
        for (const nlohmann::json& entry : row) {
            if (!entry.is_number_integer())
                throw std::invalid_argument("strategy JSON: letters must be integers");
            const auto v = entry.get<long long>();
            if (v < 0 || v >= params.d)
                throw std::invalid_argument("strategy JSON: letter " + std::to_string(v) +
                                            " out of range [0, " + std::to_string(params.d) + ")");
            w.push_back(static_cast<Letter>(v));
        }
        parsed.push_back(std::move(w));
    }
    return DecodingMatrix(params, std::move(parsed));
}

inline nlohmann::json to_json(const ValueReport& report, unsigned digits = 12) {
    return nlohmann::json{{"n", report.params.n},
                          {"d", report.params.d},
                          {"value", fraction_string(report.value)},
                          {"decimal", decimal_string(report.value, digits)},
                          {"method", to_string(report.method)}};
}

inline nlohmann::json to_json(const NormalizationTrace& trace, unsigned digits = 12) {
    nlohmann::json steps = nlohmann::json::array();
    for (const ImprovementStep& s : trace.steps)
        steps.push_back(nlohmann::json{{"j", s.column}, {"y", s.row}, {"from", s.from}, {"to", s.to}});
    nlohmann::json out{{"initial", to_json(trace.initial)},
                       {"final", to_json(trace.final)},
                       {"steps", std::move(steps)}};
    if (trace.values) {
        nlohmann::json values = nlohmann::json::array();
        nlohmann::json decimals = nlohmann::json::array();
        for (const Rational& v : *trace.values) {
            values.push_back(fraction_string(v));
            decimals.push_back(decimal_string(v, digits));
        }
        out["values"] = std::move(values);
        out["decimals"] = std::move(decimals);
    }
    return out;
}

inline nlohmann::json to_json(const OracleResult& result) {
    nlohmann::json out{{"n", result.params.n},
                       {"d", result.params.d},
                       {"max_value", fraction_string(result.max_value)},
                       {"count", result.optimizer_count.str()}};
    if (result.optimizers) {
        nlohmann::json opts = nlohmann::json::array();
        for (const DecodingMatrix& m : *result.optimizers) opts.push_back(to_json(m));
        out["optimizers"] = std::move(opts);
    }
    return out;
}

}  // namespace racopt
