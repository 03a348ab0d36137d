#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace calkin {

using Complex = std::complex<double>;

// Tolerances shared across the library (see individual call sites).
inline constexpr double kCoeffDropTol = 1e-14;   // normalization cutoff
inline constexpr double kCoeffEqTol = 1e-12;     // symbol equality, per coefficient
inline constexpr int kWindingGridDefault = 4096;
inline constexpr double kWindingMinModulus = 1e-8;

/// A finitely supported Laurent polynomial c(z) = sum_k c_k z^k.
///
/// This is the Calkin-algebra symbol of a structured operator: the class of
/// the operator modulo compacts is determined by this object alone.
/// Coefficients of modulus below kCoeffDropTol are dropped on construction,
/// so the zero polynomial has empty support and equality is well defined.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Complex> coeffs);

  static LaurentPoly zero() { return LaurentPoly{}; }
  static LaurentPoly one() { return monomial(0, 1.0); }
  static LaurentPoly monomial(int exponent, Complex coefficient = 1.0);

  const std::map<int, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one(double tol = kCoeffEqTol) const;

  // Support window; all three return 0 for the zero polynomial.
  int min_exponent() const;
  int max_exponent() const;
  int bandwidth() const;  // max(|min_exponent|, |max_exponent|)

  Complex eval(Complex z) const;
  Complex eval_circle(double theta) const;  // value at e^{i theta}

  double sup_norm_bound() const;  // sum of coefficient moduli

 private:
  std::map<int, Complex> coeffs_;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly subtract(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(Complex c, const LaurentPoly& a);

/// Coefficient convolution: (ab)_m = sum_k a_k b_{m-k}.
LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b);

/// Symbol of the adjoint: (a*)_k = conj(a_{-k}). An involution.
LaurentPoly star(const LaurentPoly& a);

/// sum_i star(phi_i) * phi_i; the symbol of the column-operator Gram.
LaurentPoly sum_of_squares(const std::vector<LaurentPoly>& symbols);

bool approx_equal(const LaurentPoly& a, const LaurentPoly& b,
                  double tol = kCoeffEqTol);

/// Winding number of the symbol around 0, from principal-branch phase
/// increments on a uniform circle grid. Throws SymbolVanishesOnCircle when
/// the grid minimum modulus falls below min_modulus (not Fredholm).
int winding_number(const LaurentPoly& a,
                   int grid_points = kWindingGridDefault,
                   double min_modulus = kWindingMinModulus);

std::string to_string(const LaurentPoly& a);

}  // namespace calkin
