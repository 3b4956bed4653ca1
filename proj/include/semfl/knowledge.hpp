#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semfl/call_graph.hpp"
#include "semfl/chat_backend.hpp"
#include "semfl/community.hpp"
#include "semfl/method_table.hpp"

namespace semfl {

struct ModuleReport {
  std::string module_id;
  std::string title;
  std::string summary;
  std::vector<std::string> detailed_findings;  // length >= 1
};

struct MethodReport {
  std::string method_id;
  std::string functionality;
  std::vector<std::string> chunk_descriptions;  // length >= 1, generation order
};

// Chunk ids are "<method id>#chunk#<ordinal>".
std::string chunk_id(const std::string& method_id, std::size_t ordinal);
// Returns (method id, ordinal); throws if `id` is not a chunk id.
std::pair<std::string, std::size_t> parse_chunk_id(const std::string& id);

// Natural-language knowledge per element at module, method and chunk level,
// plus the method->module and method->chunks maps.
class KnowledgeBase {
 public:
  std::map<std::string, ModuleReport> module_reports;
  std::map<std::string, MethodReport> method_reports;
  std::map<std::string, std::string> phi;                  // method id -> module id
  std::map<std::string, std::vector<std::string>> varphi;  // method id -> chunk ids

  const ModuleReport& module_report(const std::string& module_id) const;
  const MethodReport& method_report(const std::string& method_id) const;
  const std::string& module_of(const std::string& method_id) const;
  // Owning method of a chunk id; throws if the chunk is unknown.
  std::string owner_of_chunk(const std::string& chunk) const;
  bool has_method(const std::string& method_id) const { return method_reports.count(method_id) != 0; }

  // Verifies that every method's module/method/chunk knowledge resolves.
  void check_complete() const;

  void save(const std::filesystem::path& kb_dir) const;
  static KnowledgeBase load(const std::filesystem::path& kb_dir);
};

// Deterministic text form of a module for the summary prompt: member blocks
// ordered by id, then internal call edges as "caller -> callee (count=N)".
std::string serialize_module(const CallGraph& g, const FunctionalModule& module,
                             const MethodTable& methods);

// Serialization with long method bodies elided (signature and comment kept),
// longest first, until the text fits `char_budget`. 0 means no budget.
std::string serialize_module_bounded(const CallGraph& g, const FunctionalModule& module,
                                     const MethodTable& methods, std::size_t char_budget);

// Parses a TITLE / SUMMARY / DETAILED FINDINGS response. Tolerates prose
// around the report but requires all three headings (case-insensitive).
ModuleReport parse_module_report(const std::string& module_id, const std::string& response);

// Parses a FUNCTIONALITY / DESCRIPTION response; each DESCRIPTION paragraph
// becomes one chunk description.
MethodReport parse_method_report(const std::string& method_id, const std::string& response);

ModuleReport extract_module_report(ChatBackend& backend, const RetryPolicy& retry,
                                   const std::string& module_id, const std::string& serialized);

MethodReport extract_method_report(ChatBackend& backend, const RetryPolicy& retry,
                                   const MethodRef& method, const ModuleReport* module_context);

struct KnowledgeBuildOptions {
  std::size_t workers = 4;          // bounded pool for method reports
  std::size_t module_char_budget = 24000;
  bool module_context = true;       // false: skip module reports entirely
  RetryPolicy retry;
  std::function<void(const std::string&)> log;  // optional progress sink
};

// Extracts module reports first, then method reports with their module's
// report as context. Reports already present under kb_dir are kept and not
// re-extracted, which makes interrupted runs resumable.
KnowledgeBase build_knowledge_base(ChatBackend& backend, const CallGraph& g,
                                   const ModulePartition& partition, const MethodTable& methods,
                                   const std::filesystem::path& kb_dir,
                                   const KnowledgeBuildOptions& opts);

}  // namespace semfl
