#include "semfl/prompts.hpp"

#include <sstream>

#include "semfl/knowledge.hpp"
#include "semfl/querygen.hpp"

namespace semfl {

std::string build_module_report_prompt(const std::string& serialized_module) {
  std::ostringstream p;
  p << marker::kModuleReportTask << "\n"
    << "You are an expert software analyst. The call subgraph below is one functional\n"
       "module of a program: a group of closely related methods and the invocation\n"
       "edges observed between them at runtime. Generate a comprehensive functionality\n"
       "summary report for the module.\n\n"
    << "# Module Data\n"
    << serialized_module << "\n"
    << "# Report Structure\n"
       "## TITLE\n"
       "Name the overall functionality of the module.\n"
       "## SUMMARY\n"
       "Summarize the overall structure of the module and how its methods interact.\n"
       "## DETAILED FINDINGS\n"
       "A list of insights, one per line starting with \"- \", elaborating on the\n"
       "behavior of the important methods.\n";
  return p.str();
}

std::string build_method_report_prompt(const MethodRef& method, const ModuleReport* module_context) {
  std::ostringstream p;
  p << marker::kMethodReportTask << "\n"
    << "You are an expert code summarizer. Describe the key functionality of the\n"
       "method below and provide a detailed walkthrough of its workflow.\n\n"
    << "# Example\n"
       "Input: a method `int add(int a, int b) { return a + b; }` with comment\n"
       "\"sums two operands\".\n"
       "Output:\n"
       "## FUNCTIONALITY\n"
       "Adds two integer operands and returns their sum.\n"
       "## DESCRIPTION\n"
       "Computes a + b in a single expression and returns the result.\n\n"
    << "# Input\n";
  if (module_context) {
    p << "Module Context: " << module_context->title << " - " << module_context->summary << "\n";
  }
  p << "Method ID: " << method.id << "\n"
    << "Signature: " << method.signature << "\n"
    << "Developer Comment: " << (method.comment ? *method.comment : std::string("(none)")) << "\n"
    << "Method Code:\n```\n"
    << method.code << (method.code.empty() || method.code.back() == '\n' ? "" : "\n") << "```\n\n"
    << "# Report Structure\n"
       "## FUNCTIONALITY\n"
       "One paragraph describing what the method does and its role"
    << (module_context ? " within the module context" : "") << ".\n"
    << "## DESCRIPTION\n"
       "A list of paragraphs separated by blank lines, each explaining one contiguous\n"
       "portion of the method's workflow in order.\n";
  return p.str();
}

std::string build_query_prompt(const FaultInfo& fault, bool force_final, bool format_reminder) {
  std::ostringstream p;
  p << marker::kQueryTask << "\n"
    << "A test of this program fails. Examine the fault information and either\n"
       "identify the potential faulty functionality or request additional\n"
       "information as needed.\n\n"
    << marker::kFaultInfo << "\n"
    << "## Failed Test Case\n"
    << fault.test_code << "\n"
    << "## Test Output\n"
    << (fault.test_output ? *fault.test_output : std::string("(not available)")) << "\n"
    << "## Stack Trace\n"
    << (fault.stack_trace ? *fault.stack_trace : std::string("(not available)")) << "\n"
    << marker::kModuleDetails << "\n";
  if (fault.module_details.empty()) {
    p << "(none yet)\n";
  } else {
    for (std::size_t i = 0; i < fault.module_details.size(); ++i) {
      const auto& [mid, report] = fault.module_details[i];
      p << (i + 1) << ". [" << mid << "] " << report.title << ": " << report.summary << "\n";
      for (const auto& finding : report.detailed_findings) p << "   - " << finding << "\n";
    }
  }
  p << "\n" << marker::kResponseFormat << "\n";
  if (force_final) {
    p << "You must now identify the faulty functionality. Respond with a single JSON\n"
         "object of the form\n"
         "{\"module\": \"...\", \"method\": \"...\", \"chunk\": \"...\"}\n"
         "describing the suspected faulty functionality at module, method and chunk\n"
         "granularity. Requests for more information are no longer accepted.\n";
  } else {
    p << "Respond with a single JSON object. Either request the details of one\n"
         "functional module:\n"
         "{\"request\": \"description of the needed functional module\"}\n"
         "or identify the suspected faulty functionality at three granularities:\n"
         "{\"module\": \"...\", \"method\": \"...\", \"chunk\": \"...\"}\n";
  }
  if (format_reminder) {
    p << "\nYour previous response could not be parsed. Respond with exactly one JSON\n"
         "object in the specified format and nothing else.\n";
  }
  return p.str();
}

std::string build_explain_prompt(const std::string& method_id, const std::string& functionality,
                                 const std::vector<std::string>& queries, int rank) {
  std::ostringstream p;
  p << marker::kExplainTask << "\n"
    << "The method below was ranked #" << rank
    << " as a suspected fault location. Write a short, user-friendly rationale\n"
       "for why this method may contain the fault, referencing its functionality\n"
       "and the matched fault descriptions.\n\n"
    << "Method ID: " << method_id << "\n"
    << "Functionality: " << functionality << "\n"
    << "Matched fault descriptions:\n";
  for (const auto& q : queries) p << "- " << q << "\n";
  return p.str();
}

}  // namespace semfl
