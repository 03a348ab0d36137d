#pragma once

#include <string>

#include "calkin/isometrize.hpp"

namespace calkin {

/// Fredholm index computed along two independent routes: minus the symbol
/// winding number, and dim ker - dim coker from stabilized certified
/// section kernels. `agreement` records whether they coincide.
struct IndexReport {
  std::string label;
  int winding_index = 0;
  int section_index = 0;
  int kernel_dim = 0;
  int adjoint_kernel_dim = 0;
  bool agreement = false;
};

/// Throws SymbolVanishesOnCircle when the operator is not Fredholm in this
/// class; NotStabilized when the section kernels do not settle.
IndexReport fredholm_index(const StructuredOperator& op,
                           const std::string& label = "operator");

/// True iff AB - 1 and BA - 1 are both compact, i.e. the symbols are
/// mutually inverse.
bool essential_inverse_pair_check(const StructuredOperator& a,
                                  const StructuredOperator& b);

enum class Verdict { kPossible, kObstructed };

std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::kPossible;
  IndexReport first;
  IndexReport second;
};

/// Existence of commuting compact perturbations of an essentially inverse
/// pair: POSSIBLE iff both indices vanish. Decides only; the POSSIBLE branch
/// does not construct the perturbations. Throws NotEssentialInversePair.
VerdictReport commuting_perturbation_verdict(const StructuredOperator& a,
                                             const StructuredOperator& b);

/// The closing counterexample, runnable end to end: T = (R, R*)/sqrt(2) is
/// an essential spherical isometry, (sqrt(2)T_1, sqrt(2)T_2) is an
/// essentially inverse pair with index(sqrt(2)T_1) = -1, so no commuting
/// compact perturbation exists - yet isometrization still succeeds.
struct DemoReport {
  SphericalIsometryDiagnostics spherical;
  bool inverse_pair = false;
  VerdictReport verdict;
  double isometrization_residual = 0.0;
  std::vector<std::pair<std::string, bool>> assertions;
  bool all_passed = false;
};

DemoReport counterexample_demo();

}  // namespace calkin
