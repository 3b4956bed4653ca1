#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semfl/method_table.hpp"

namespace semfl {

struct ModuleReport;
struct FaultInfo;

// Section markers shared between the prompt builders, the report parsers and
// the mock backend. Changing one of these changes the wire protocol.
namespace marker {
inline constexpr const char* kModuleReportTask = "# Module Summary Task";
inline constexpr const char* kMethodReportTask = "# Method Walkthrough Task";
inline constexpr const char* kQueryTask = "# Fault Description Task";
inline constexpr const char* kExplainTask = "# Explanation Task";
inline constexpr const char* kFaultInfo = "# Fault Information";
inline constexpr const char* kModuleDetails = "## Module Details";
inline constexpr const char* kResponseFormat = "# Response Format";
}  // namespace marker

// Prompt asking for a module functionality summary report with TITLE /
// SUMMARY / DETAILED FINDINGS sections, over a serialized call subgraph.
std::string build_module_report_prompt(const std::string& serialized_module);

// Prompt asking for a method report with FUNCTIONALITY / DESCRIPTION
// sections. Renders "(none)" for a missing developer comment; the module
// context is omitted entirely when `module_context` is null.
std::string build_method_report_prompt(const MethodRef& method,
                                       const ModuleReport* module_context);

// Interactive query prompt: the model either answers with the three
// granularity queries or requests more module details.
std::string build_query_prompt(const FaultInfo& fault, bool force_final, bool format_reminder);

// Prompt asking for a short user-facing rationale for one ranked method.
std::string build_explain_prompt(const std::string& method_id, const std::string& functionality,
                                 const std::vector<std::string>& queries, int rank);

}  // namespace semfl
