#include "calkin/io.hpp"

#include <json.hpp>

#include "calkin/errors.hpp"

namespace calkin {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

StructuredOperator operator_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("operator: expected an object");

  std::map<int, Complex> coeffs;
  if (j.contains("symbol")) {
    const auto& sym = j.at("symbol");
    if (!sym.is_array()) throw ParseError("operator.symbol: expected array");
    for (const auto& triple : sym) {
      if (!triple.is_array() || triple.size() != 3 ||
          !triple[0].is_number_integer() || !triple[1].is_number() ||
          !triple[2].is_number()) {
        throw ParseError("operator.symbol: entries must be [k, re, im]");
      }
      const int k = triple[0].get<int>();
      if (coeffs.count(k)) {
        throw ParseError("operator.symbol: duplicate exponent " +
                         std::to_string(k));
      }
      coeffs[k] = Complex(triple[1].get<double>(), triple[2].get<double>());
    }
  }

  CompactBlock block;
  if (j.contains("compact") && !j.at("compact").is_null()) {
    const auto& comp = j.at("compact");
    if (!comp.is_object() || !comp.contains("size") ||
        !comp.at("size").is_number_integer()) {
      throw ParseError("operator.compact: expected { size, entries }");
    }
    const int n0 = comp.at("size").get<int>();
    if (n0 < 0) throw ParseError("operator.compact.size: must be >= 0");
    Matrix m = Matrix::Zero(n0, n0);
    if (comp.contains("entries")) {
      if (!comp.at("entries").is_array()) {
        throw ParseError("operator.compact.entries: expected array");
      }
      for (const auto& quad : comp.at("entries")) {
        if (!quad.is_array() || quad.size() != 4 ||
            !quad[0].is_number_integer() || !quad[1].is_number_integer() ||
            !quad[2].is_number() || !quad[3].is_number()) {
          throw ParseError(
              "operator.compact.entries: entries must be [i, j, re, im]");
        }
        const int i = quad[0].get<int>();
        const int col = quad[1].get<int>();
        if (i < 0 || col < 0 || i >= n0 || col >= n0) {
          throw ParseError("operator.compact.entries: index out of range");
        }
        m(i, col) = Complex(quad[2].get<double>(), quad[3].get<double>());
      }
    }
    block = CompactBlock(m);
  }

  return {LaurentPoly(std::move(coeffs)), std::move(block)};
}

json operator_to_json_value(const StructuredOperator& op) {
  json sym = json::array();
  for (const auto& [k, c] : op.symbol.coeffs()) {
    sym.push_back(json::array({k, c.real(), c.imag()}));
  }
  json entries = json::array();
  const int n0 = op.compact.size();
  for (int i = 0; i < n0; ++i) {
    for (int j2 = 0; j2 < n0; ++j2) {
      const Complex c = op.compact.matrix()(i, j2);
      if (std::abs(c) > 0.0) {
        entries.push_back(json::array({i, j2, c.real(), c.imag()}));
      }
    }
  }
  return json{{"symbol", std::move(sym)},
              {"compact", json{{"size", n0}, {"entries", std::move(entries)}}}};
}

json kernel_basis_to_json_value(const KernelBasis& kb) {
  double max_res = 0.0;
  for (double r : kb.residuals) max_res = std::max(max_res, r);
  return json{{"section_size", kb.section_size},
              {"margin", kb.margin},
              {"dimension", kb.dimension()},
              {"exact", kb.exact},
              {"max_residual", max_res}};
}

json index_report_to_json_value(const IndexReport& r) {
  return json{{"operator", r.label},
              {"winding_index", r.winding_index},
              {"section_index", r.section_index},
              {"kernel_dim", r.kernel_dim},
              {"adjoint_kernel_dim", r.adjoint_kernel_dim},
              {"agreement", r.agreement}};
}

}  // namespace

StructuredOperator parse_operator(const std::string& text) {
  return operator_from_json(parse_text(text));
}

OperatorTuple parse_tuple(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("operators") ||
      !j.at("operators").is_array() || j.at("operators").empty()) {
    throw ParseError("tuple: expected { \"operators\": [ ... ] } (nonempty)");
  }
  std::vector<StructuredOperator> ops;
  for (const auto& item : j.at("operators")) {
    ops.push_back(operator_from_json(item));
  }
  return OperatorTuple(std::move(ops));
}

OperatorTuple parse_tuple_or_operator(const std::string& text) {
  const json j = parse_text(text);
  if (j.is_object() && j.contains("operators")) return parse_tuple(text);
  return OperatorTuple{operator_from_json(j)};
}

std::string operator_to_json(const StructuredOperator& op, int indent) {
  return operator_to_json_value(op).dump(indent) + "\n";
}

std::string tuple_to_json(const OperatorTuple& t, int indent) {
  json ops = json::array();
  for (const auto& op : t.entries()) ops.push_back(operator_to_json_value(op));
  return json{{"operators", std::move(ops)}}.dump(indent) + "\n";
}

std::string check_report_to_json(const SphericalIsometryDiagnostics& diag,
                                 const LeftInverseResult* left_inverse,
                                 const KernelBasis* joint_kernel,
                                 const RowKernelCertificate* row_certificate,
                                 const std::string& input_label,
                                 const std::string& error_note, int indent) {
  json j{{"command", "check"},
         {"input", input_label},
         {"essential_spherical_isometry", diag.verdict},
         {"gram_symbol_is_one", diag.gram_symbol_is_one},
         {"essentially_commuting", diag.essentially_commuting},
         {"gram_block_norm", diag.gram_block_norm},
         {"commutator_block_norms", diag.commutator_block_norms}};
  if (left_inverse != nullptr) {
    j["left_inverse"] = json{
        {"defect_is_compact", left_inverse->defect_is_compact},
        {"defect_block_norm", left_inverse->defect.frobenius_norm()}};
  }
  if (joint_kernel != nullptr) {
    j["joint_kernel"] = kernel_basis_to_json_value(*joint_kernel);
  }
  if (row_certificate != nullptr) {
    json dims = json::array();
    for (const auto& [n, dim] : row_certificate->dimensions()) {
      dims.push_back(json::array({n, dim}));
    }
    j["row_kernel_certificate"] =
        json{{"margin", row_certificate->margin}, {"dimensions", dims}};
  }
  if (!error_note.empty()) j["note"] = error_note;
  return j.dump(indent) + "\n";
}

std::string isometrization_report_to_json(const IsometrizationReport& report,
                                          int indent) {
  json k = json::array();
  for (const auto& op : report.perturbation) {
    k.push_back(operator_to_json_value(op));
  }
  json v = json::array();
  for (const auto& op : report.isometry.entries()) {
    v.push_back(operator_to_json_value(op));
  }
  json j{{"command", "isometrize"},
         {"perturbation", std::move(k)},
         {"isometry", std::move(v)},
         {"gram_block_norm", report.gram_block_norm},
         {"dense_residual", report.dense_residual},
         {"dense_check_size", report.dense_check_size},
         {"kernel_dim", report.kernel_dim},
         {"cokernel_certified_dim", report.cokernel_certified_dim},
         {"symbols_preserved", report.symbols_preserved},
         {"exact", report.exact}};
  return j.dump(indent) + "\n";
}

std::string index_report_to_json(const IndexReport& report, int indent) {
  return index_report_to_json_value(report).dump(indent) + "\n";
}

std::string verdict_report_to_json(const VerdictReport& report, int indent) {
  json j{{"command", "verdict"},
         {"verdict", to_string(report.verdict)},
         {"first", index_report_to_json_value(report.first)},
         {"second", index_report_to_json_value(report.second)}};
  return j.dump(indent) + "\n";
}

std::string demo_report_to_json(const DemoReport& report, int indent) {
  json steps = json::array();
  for (const auto& [name, ok] : report.assertions) {
    steps.push_back(json{{"assertion", name}, {"passed", ok}});
  }
  json j{{"command", "demo"},
         {"assertions", std::move(steps)},
         {"verdict", to_string(report.verdict.verdict)},
         {"index_sqrt2_t1", report.verdict.first.winding_index},
         {"isometrization_residual", report.isometrization_residual},
         {"all_passed", report.all_passed}};
  return j.dump(indent) + "\n";
}

}  // namespace calkin
