#include "fraclift/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include "fraclift/errors.hpp"

namespace fraclift {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number())
    throw DomainError(std::string("JSON: missing or non-numeric field '") + key + "'");
  return j.at(key).get<double>();
}

const nlohmann::json& array_field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    throw DomainError(std::string("JSON: missing array field '") + key + "'");
  return j.at(key);
}

// Absent means exact.
double optional_truncation(const nlohmann::json& j) {
  return j.contains("truncation") ? number_field(j, "truncation") : GenSeries::kExact;
}

} // namespace

nlohmann::json to_json(const GenSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms()) terms.push_back({{"exp", t.exponent}, {"coef", t.coef}});
  nlohmann::json j = {{"basepoint", s.basepoint()}, {"terms", std::move(terms)}};
  if (!s.is_exact()) j["truncation"] = s.truncation_order();
  return j;
}

GenSeries series_from_json(const nlohmann::json& j) {
  const double a = number_field(j, "basepoint");
  std::vector<Term> terms;
  for (const auto& t : array_field(j, "terms"))
    terms.push_back({number_field(t, "exp"), number_field(t, "coef")});
  return GenSeries(a, std::move(terms), optional_truncation(j));
}

nlohmann::json to_json(const LiftedSeq& s) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& [idx, v] : s.values()) values.push_back({{"index", idx}, {"value", v}});
  nlohmann::json j = {{"basepoint", s.basepoint()},
                      {"offset", s.offset().value()},
                      {"values", std::move(values)}};
  if (s.truncation() != GenSeries::kExact) j["truncation"] = s.truncation();
  return j;
}

LiftedSeq lifted_from_json(const nlohmann::json& j) {
  const double a = number_field(j, "basepoint");
  const double k = number_field(j, "offset");
  std::map<long, double> values;
  for (const auto& v : array_field(j, "values")) {
    if (!v.contains("index") || !v.at("index").is_number_integer())
      throw DomainError("JSON: lifted value without integer 'index'");
    values[v.at("index").get<long>()] += number_field(v, "value");
  }
  return LiftedSeq(a, Offset(k), std::move(values), optional_truncation(j));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw DomainError("cannot open '" + path + "'");
  }
  std::istream& in = path == "-" ? std::cin : file;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("'" + path + "': " + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const EvalTable& table) {
  out << "x,termwise,oracle,abs_diff\n";
  for (const auto& r : table)
    out << format_double(r.x) << ',' << format_double(r.termwise) << ','
        << format_double(r.oracle) << ',' << format_double(r.abs_diff) << '\n';
}

} // namespace fraclift
