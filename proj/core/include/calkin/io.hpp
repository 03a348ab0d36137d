#pragma once

#include <string>

#include "calkin/obstruction.hpp"

namespace calkin {

// JSON schemas (all complex numbers as [re, im] inside flat entry lists):
//   operator: { "symbol": [[k, re, im], ...],
//               "compact": { "size": n0, "entries": [[i, j, re, im], ...] } }
//   tuple:    { "operators": [operator, ...] }
// Parsers throw ParseError with a field-level message on malformed input.

StructuredOperator parse_operator(const std::string& text);
OperatorTuple parse_tuple(const std::string& text);

/// Accepts either schema; a bare operator object becomes a 1-tuple.
OperatorTuple parse_tuple_or_operator(const std::string& text);

std::string operator_to_json(const StructuredOperator& op, int indent = 2);
std::string tuple_to_json(const OperatorTuple& t, int indent = 2);

// Report serialization (canonical key order, round-trip stable).
std::string check_report_to_json(const SphericalIsometryDiagnostics& diag,
                                 const LeftInverseResult* left_inverse,
                                 const KernelBasis* joint_kernel,
                                 const RowKernelCertificate* row_certificate,
                                 const std::string& input_label,
                                 const std::string& error_note, int indent = 2);
std::string isometrization_report_to_json(const IsometrizationReport& report,
                                          int indent = 2);
std::string index_report_to_json(const IndexReport& report, int indent = 2);
std::string verdict_report_to_json(const VerdictReport& report,
                                   int indent = 2);
std::string demo_report_to_json(const DemoReport& report, int indent = 2);

}  // namespace calkin
