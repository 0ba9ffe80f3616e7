#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fraclift/lifted.hpp"
#include "fraclift/oracle.hpp"
#include "fraclift/series.hpp"

namespace fraclift {

// {"basepoint": a, "terms": [{"exp": e, "coef": c}, ...]}, exponent-sorted.
// Truncated series also carry "truncation"; without it a series is exact.
nlohmann::json to_json(const GenSeries& s);
GenSeries series_from_json(const nlohmann::json& j);

// {"basepoint": a, "offset": k, "values": [{"index": j, "value": v}, ...]}
nlohmann::json to_json(const LiftedSeq& s);
LiftedSeq lifted_from_json(const nlohmann::json& j);

// Reads and parses a JSON file ("-" is stdin); DomainError on I/O or parse
// failure.
nlohmann::json read_json_file(const std::string& path);

// 17 significant digits, C locale.
std::string format_double(double v);

// Header `x,termwise,oracle,abs_diff`, one row per evaluation point.
void write_csv(std::ostream& out, const EvalTable& table);

} // namespace fraclift
