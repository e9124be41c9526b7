#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mathrules/rulegen.hpp"

namespace mathrules {

using OrderedJson = nlohmann::ordered_json;

/// Stable field order: prompt, original_expression, answer, variables,
/// prompt_type, seed, extras.
inline OrderedJson record_to_json(const RuleRecord& r) {
  OrderedJson j;
  j["prompt"] = r.prompt;
  j["original_expression"] = r.original_expression;
  j["answer"] = r.answer;
  j["variables"] = r.variables;
  j["prompt_type"] = r.prompt_type;
  j["seed"] = r.seed;
  OrderedJson ex = OrderedJson::object();
  for (const auto& [k, v] : r.extras) ex[k] = v;
  j["extras"] = ex;
  return j;
}

inline RuleRecord record_from_json(const OrderedJson& j) {
  RuleRecord r;
  r.prompt = j.at("prompt").get<std::string>();
  r.original_expression = j.at("original_expression").get<std::string>();
  r.answer = j.at("answer").get<std::string>();
  for (const auto& v : j.at("variables")) r.variables.push_back(v.get<std::string>());
  r.prompt_type = j.at("prompt_type").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("extras"))
    for (auto it = j.at("extras").begin(); it != j.at("extras").end(); ++it)
      r.extras[it.key()] = it.value().get<std::string>();
  return r;
}

inline void write_records(std::ostream& out, const std::vector<RuleRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << "\n";
}

inline void write_records(const std::string& path, const std::vector<RuleRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open for writing: " + path);
  write_records(out, records);
}

inline std::vector<RuleRecord> read_records(std::istream& in) {
  std::vector<RuleRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    OrderedJson j = OrderedJson::parse(line, nullptr, false);
    if (j.is_discarded())
      raise(errc::io_error, "bad JSON on line " + std::to_string(line_no));
    out.push_back(record_from_json(j));
  }
  return out;
}

inline std::vector<RuleRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open for reading: " + path);
  return read_records(in);
}

/// Response file rows: {"record_id": <seed>, "output": "..."}.
struct ResponseRow {
  std::uint64_t record_id = 0;
  std::string output;
};

inline void write_responses(const std::string& path, const std::vector<ResponseRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open for writing: " + path);
  for (const auto& r : rows) {
    OrderedJson j;
    j["record_id"] = r.record_id;
    j["output"] = r.output;
    out << j.dump() << "\n";
  }
}

inline std::vector<ResponseRow> read_responses(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open for reading: " + path);
  std::vector<ResponseRow> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    OrderedJson j = OrderedJson::parse(line);
    out.push_back({j.at("record_id").get<std::uint64_t>(), j.at("output").get<std::string>()});
  }
  return out;
}

}  // namespace mathrules
