#include "ck/json_io.hpp"

#include <fstream>

#include "ck/errors.hpp"

namespace ck {

AdjacencyMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows"))
        fail("ParseError", "matrix JSON must be {\"n\":..., \"rows\":[[...]]}");
    std::vector<std::vector<int>> raw;
    for (const auto& row : j.at("rows")) raw.push_back(row.get<std::vector<int>>());
    if (j.contains("n") && j.at("n").get<size_t>() != raw.size())
        fail("ParseError", "matrix JSON: n does not match the number of rows");
    return AdjacencyMatrix::validate(raw);
}

AdjacencyMatrix matrix_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileError", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("ParseError", path + ": " + e.what());
    }
    return matrix_from_json(j);
}

json matrix_to_json(const AdjacencyMatrix& A) {
    json rows = json::array();
    for (int i = 0; i < A.n(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < A.n(); ++j2) row.push_back(A.at(i, j2) ? 1 : 0);
        rows.push_back(row);
    }
    return json{{"n", A.n()}, {"rows", rows}};
}

Word word_from_json(const json& j) {
    Word w;
    for (const auto& l : j) {
        const int x = l.get<int>();
        if (x < 1 || x > 255) fail("ParseError", "letters are 1-based small integers");
        w.push_back(static_cast<Letter>(x - 1));
    }
    return w;
}

json word_to_json(const Word& w) {
    json j = json::array();
    for (Letter l : w) j.push_back(int(l) + 1);
    return j;
}

EpPoint point_from_json(const AdjacencyMatrix& A, const json& j) {
    if (!j.is_object() || !j.contains("period"))
        fail("ParseError", "point JSON must be {\"preperiod\":[...], \"period\":[...]}");
    Word pre = j.contains("preperiod") ? word_from_json(j.at("preperiod")) : Word{};
    Word per = word_from_json(j.at("period"));
    return EpPoint::make(A, std::move(pre), std::move(per));
}

json point_to_json(const EpPoint& p) {
    return json{{"preperiod", word_to_json(p.preperiod())}, {"period", word_to_json(p.period())}};
}

json group_to_json(const FGAbelianGroup& g) {
    json torsion = json::array();
    for (const Int& d : g.torsion) {
        if (d <= Int(std::numeric_limits<std::int64_t>::max()))
            torsion.push_back(static_cast<std::int64_t>(d));
        else
            torsion.push_back(d.str());
    }
    return json{{"free_rank", g.free_rank}, {"torsion", torsion}};
}

namespace {

ChoiceFunction function_from_json(const AdjacencyMatrix& A, const json& j) {
    const std::string rule = j.value("rule", "greedy-min");
    ChoiceFunction f(A, rule == "greedy-max" ? ChoiceFunction::Rule::GreedyMax
                                             : ChoiceFunction::Rule::GreedyMin);
    if (rule != "greedy-min" && rule != "greedy-max")
        fail("ParseError", "unknown choice rule " + rule);
    if (j.contains("overrides"))
        for (const auto& [key, val] : j.at("overrides").items()) {
            json kw = json::parse(key);
            f.set_override(word_from_json(kw), point_from_json(A, val));
        }
    return f;
}

json function_to_json(const ChoiceFunction& f) {
    json overrides = json::object();
    for (const auto& [mu, p] : f.overrides())
        overrides[word_to_json(mu).dump()] = point_to_json(p);
    return json{{"rule", f.rule_name()}, {"overrides", overrides}};
}

} // namespace

ChoicePair pair_from_json(const AdjacencyMatrix& A, const json& j) {
    return ChoicePair{function_from_json(A, j.at("plus")), function_from_json(A, j.at("minus")),
                      j.value("comparison_constant", 1.0)};
}

json pair_to_json(const ChoicePair& p) {
    return json{{"plus", function_to_json(p.plus)},
                {"minus", function_to_json(p.minus)},
                {"comparison_constant", p.comparison_constant}};
}

json perron_report_json(const ConformalMeasure& m, int conformality_depth) {
    const PerronData& p = m.perron_data();
    return json{{"lambda", p.lambda},
                {"delta", m.delta()},
                {"v", p.v},
                {"residual", p.residual},
                {"reducible", p.reducible},
                {"conformality_defect", m.conformality_residual(conformality_depth)}};
}

} // namespace ck
