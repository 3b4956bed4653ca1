#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace semfl {

// One source method as reported by the instrumentation side. `id` is the
// fully qualified key used everywhere downstream, e.g. "pkg.Cls#name(int)".
struct MethodRef {
  std::string id;
  std::string signature;
  std::string file_path;
  int start_line = 0;
  int end_line = 0;
  std::string code;
  std::optional<std::string> comment;
};

class MethodTable {
 public:
  MethodTable() = default;
  explicit MethodTable(std::vector<MethodRef> methods);

  const std::vector<MethodRef>& methods() const { return methods_; }
  const MethodRef* find(const std::string& id) const;
  const MethodRef& at(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }
  std::size_t size() const { return methods_.size(); }

 private:
  std::vector<MethodRef> methods_;  // sorted by id
  std::map<std::string, std::size_t> by_id_;
};

// Parses a methods.json document: array of objects
// {"id","signature","file","start_line","end_line","code","comment"(nullable)}.
// Entries with an empty code body are dropped; duplicate ids are rejected.
MethodTable ingest_method_table(const std::string& json_text);

// A failed test as given in tests.json.
struct FailingTest {
  std::string test_id;
  std::string test_code;
  std::optional<std::string> test_output;
  std::optional<std::string> stack_trace;
};

std::vector<FailingTest> parse_failing_tests(const std::string& json_text);

}  // namespace semfl
