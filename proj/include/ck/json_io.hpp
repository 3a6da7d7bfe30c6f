#pragma once

#include <json.hpp>
#include <string>

#include "ck/adjacency.hpp"
#include "ck/choice.hpp"
#include "ck/ktheory.hpp"
#include "ck/measure.hpp"
#include "ck/point.hpp"

namespace ck {

using nlohmann::json;

// Matrix JSON: {"n": N, "rows": [[0|1,...],...]}
AdjacencyMatrix matrix_from_json(const json& j);
AdjacencyMatrix matrix_from_file(const std::string& path);
json matrix_to_json(const AdjacencyMatrix& A);

// Word JSON: [l1,...,lk] with 1-based letters
Word word_from_json(const json& j);
json word_to_json(const Word& w);

// Point JSON: {"preperiod": [...], "period": [...]}
EpPoint point_from_json(const AdjacencyMatrix& A, const json& j);
json point_to_json(const EpPoint& p);

// Group JSON: {"free_rank": r, "torsion": [d1,...]}
json group_to_json(const FGAbelianGroup& g);

// ChoicePair JSON: {"plus": {"rule": ..., "overrides": {...}}, "minus": {...}}
ChoicePair pair_from_json(const AdjacencyMatrix& A, const json& j);
json pair_to_json(const ChoicePair& p);

json perron_report_json(const ConformalMeasure& m, int conformality_depth);

} // namespace ck
