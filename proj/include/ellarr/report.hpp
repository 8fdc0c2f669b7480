#pragma once

// JSON and CSV renderings of library results. JSON text is deterministic:
// object keys sorted, floats printed with 17 significant digits, complex
// numbers as [re, im].

#include <string>

#include "json.hpp"

#include "ellarr/arrangement.hpp"
#include "ellarr/bfunc.hpp"

namespace ellarr {

using json = nlohmann::json;

std::string dump_json(const json& j, int indent = 2);

json to_json(cplx z);
json to_json(const TorsionPoint& t);
json to_json(const Lattice& lat);
json to_json(const ZeroPair& z);
json to_json(const DoubleZeroReport& r);
json to_json(const ArrangementReport& r);
json to_json(const DichotomyExperiment& e);

/// Everything the bfun command reports about one function.
json describe_b(const BFunction& f);

/// "re,im,kind" rows: the pole p, then one row per cluster center with
/// kind node, triple or cluster<r>.
std::string arrangement_csv(const ArrangementReport& r);
/// Poles and zeros of one function.
std::string bfun_csv(const BFunction& f, const ZeroPair& z);

}  // namespace ellarr
