#include "semfl/method_table.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "semfl/errors.hpp"

namespace semfl {

using nlohmann::json;

MethodTable::MethodTable(std::vector<MethodRef> methods) : methods_(std::move(methods)) {
  std::sort(methods_.begin(), methods_.end(),
            [](const MethodRef& a, const MethodRef& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < methods_.size(); ++i) by_id_[methods_[i].id] = i;
}

const MethodRef* MethodTable::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &methods_[it->second];
}

const MethodRef& MethodTable::at(const std::string& id) const {
  const MethodRef* m = find(id);
  if (!m) throw integrity_error("unknown method id: " + id);
  return *m;
}

namespace {

std::string record_label(const json& rec, std::size_t index) {
  std::string label = "record " + std::to_string(index);
  if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
    label += " (id=" + rec["id"].get<std::string>() + ")";
  }
  return label;
}

}  // namespace

MethodTable ingest_method_table(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("methods document is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw parse_error("methods document must be a JSON array");

  std::vector<MethodRef> methods;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    const std::string label = record_label(rec, i);
    if (!rec.is_object()) throw parse_error("methods document: " + label + " is not an object");
    for (const char* key : {"id", "signature", "file", "start_line", "end_line", "code"}) {
      if (!rec.contains(key))
        throw parse_error("methods document: " + label + " is missing \"" + key + "\"");
    }
    MethodRef m;
    try {
      m.id = rec.at("id").get<std::string>();
      m.signature = rec.at("signature").get<std::string>();
      m.file_path = rec.at("file").get<std::string>();
      m.start_line = rec.at("start_line").get<int>();
      m.end_line = rec.at("end_line").get<int>();
      m.code = rec.at("code").get<std::string>();
      if (rec.contains("comment") && !rec.at("comment").is_null())
        m.comment = rec.at("comment").get<std::string>();
    } catch (const json::exception& e) {
      throw parse_error("methods document: " + label + ": " + e.what());
    }
    if (m.id.empty()) throw parse_error("methods document: " + label + " has an empty id");
    if (m.start_line <= 0 || m.end_line <= 0 || m.start_line > m.end_line)
      throw parse_error("methods document: " + label + " has an invalid line range");
    if (m.code.empty()) continue;  // methods without bodies are excluded at ingestion
    auto [it, inserted] = seen.emplace(m.id, i);
    if (!inserted)
      throw integrity_error("duplicate method id \"" + m.id + "\" (records " +
                            std::to_string(it->second) + " and " + std::to_string(i) + ")");
    methods.push_back(std::move(m));
  }
  return MethodTable(std::move(methods));
}

std::vector<FailingTest> parse_failing_tests(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("tests document is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw parse_error("tests document must be a JSON array");
  std::vector<FailingTest> tests;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    if (!rec.is_object() || !rec.contains("test_id") || !rec.contains("test_code"))
      throw parse_error("tests document: record " + std::to_string(i) +
                        " must contain test_id and test_code");
    FailingTest t;
    try {
      t.test_id = rec.at("test_id").get<std::string>();
      t.test_code = rec.at("test_code").get<std::string>();
      if (rec.contains("test_output") && !rec.at("test_output").is_null())
        t.test_output = rec.at("test_output").get<std::string>();
      if (rec.contains("stack_trace") && !rec.at("stack_trace").is_null())
        t.stack_trace = rec.at("stack_trace").get<std::string>();
    } catch (const json::exception& e) {
      throw parse_error("tests document: record " + std::to_string(i) + ": " + e.what());
    }
    if (t.test_id.empty()) throw parse_error("tests document: record " + std::to_string(i) + " has an empty test_id");
    tests.push_back(std::move(t));
  }
  return tests;
}

}  // namespace semfl
