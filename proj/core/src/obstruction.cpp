#include "calkin/obstruction.hpp"

#include <cmath>

#include "calkin/errors.hpp"
#include "calkin/presets.hpp"

namespace calkin {

IndexReport fredholm_index(const StructuredOperator& op,
                           const std::string& label) {
  IndexReport report;
  report.label = label;
  report.winding_index = -winding_number(op.symbol);

  const KernelBasis ker = stabilized_joint_kernel(OperatorTuple{op});
  const KernelBasis coker = stabilized_joint_kernel(OperatorTuple{adjoint(op)});
  report.kernel_dim = ker.dimension();
  report.adjoint_kernel_dim = coker.dimension();
  report.section_index = ker.dimension() - coker.dimension();
  report.agreement = (report.section_index == report.winding_index);
  return report;
}

bool essential_inverse_pair_check(const StructuredOperator& a,
                                  const StructuredOperator& b) {
  return subtract(compose(b, a), identity()).symbol.is_zero() &&
         subtract(compose(a, b), identity()).symbol.is_zero();
}

std::string to_string(Verdict v) {
  return v == Verdict::kPossible ? "POSSIBLE" : "OBSTRUCTED";
}

VerdictReport commuting_perturbation_verdict(const StructuredOperator& a,
                                             const StructuredOperator& b) {
  if (!essential_inverse_pair_check(a, b)) {
    throw NotEssentialInversePair(
        "commuting_perturbation_verdict: AB - 1 or BA - 1 is not compact");
  }
  VerdictReport report;
  report.first = fredholm_index(a, "A");
  report.second = fredholm_index(b, "B");
  report.verdict = (report.first.winding_index == 0 &&
                    report.second.winding_index == 0)
                       ? Verdict::kPossible
                       : Verdict::kObstructed;
  return report;
}

DemoReport counterexample_demo() {
  DemoReport demo;
  const OperatorTuple t = make_preset("chavan-counterexample");

  demo.spherical = is_essential_spherical_isometry(t);
  demo.assertions.emplace_back("essential spherical isometry",
                               demo.spherical.verdict);

  const double root2 = std::sqrt(2.0);
  const StructuredOperator a = scale(root2, t[0]);
  const StructuredOperator b = scale(root2, t[1]);
  demo.inverse_pair = essential_inverse_pair_check(a, b);
  demo.assertions.emplace_back("essentially inverse pair", demo.inverse_pair);

  demo.verdict = commuting_perturbation_verdict(a, b);
  demo.assertions.emplace_back(
      "index(sqrt(2) T1) = -1",
      demo.verdict.first.winding_index == -1 && demo.verdict.first.agreement);
  demo.assertions.emplace_back("verdict OBSTRUCTED",
                               demo.verdict.verdict == Verdict::kObstructed);

  const IsometrizationReport iso = isometrize(t);
  demo.isometrization_residual = iso.gram_block_norm;
  demo.assertions.emplace_back(
      "isometrization succeeds with residual <= 1e-8",
      iso.gram_block_norm <= kResidualTol &&
          iso.dense_residual <= kResidualTol && iso.symbols_preserved);

  demo.all_passed = true;
  for (const auto& [name, ok] : demo.assertions) demo.all_passed &= ok;
  return demo;
}

}  // namespace calkin
