#include "calkin/symbol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "calkin/errors.hpp"

namespace calkin {

namespace {
void drop_small(std::map<int, Complex>& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (std::abs(it->second) < kCoeffDropTol) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}
}  // namespace

LaurentPoly::LaurentPoly(std::map<int, Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  drop_small(coeffs_);
}

LaurentPoly LaurentPoly::monomial(int exponent, Complex coefficient) {
  return LaurentPoly{{{exponent, coefficient}}};
}

Complex LaurentPoly::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{0.0} : it->second;
}

bool LaurentPoly::is_one(double tol) const {
  return approx_equal(*this, one(), tol);
}

int LaurentPoly::min_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

int LaurentPoly::bandwidth() const {
  return std::max(std::abs(min_exponent()), std::abs(max_exponent()));
}

Complex LaurentPoly::eval(Complex z) const {
  Complex value = 0.0;
  for (const auto& [k, c] : coeffs_) {
    value += c * std::pow(z, Complex(static_cast<double>(k), 0.0));
  }
  return value;
}

Complex LaurentPoly::eval_circle(double theta) const {
  Complex value = 0.0;
  for (const auto& [k, c] : coeffs_) {
    value += c * std::polar(1.0, k * theta);
  }
  return value;
}

double LaurentPoly::sup_norm_bound() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) s += std::abs(c);
  return s;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<int, Complex> out = a.coeffs();
  for (const auto& [k, c] : b.coeffs()) out[k] += c;
  return LaurentPoly(std::move(out));
}

LaurentPoly subtract(const LaurentPoly& a, const LaurentPoly& b) {
  return add(a, scale(-1.0, b));
}

LaurentPoly scale(Complex c, const LaurentPoly& a) {
  std::map<int, Complex> out;
  for (const auto& [k, v] : a.coeffs()) out[k] = c * v;
  return LaurentPoly(std::move(out));
}

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<int, Complex> out;
  for (const auto& [ka, ca] : a.coeffs()) {
    for (const auto& [kb, cb] : b.coeffs()) {
      out[ka + kb] += ca * cb;
    }
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly star(const LaurentPoly& a) {
  std::map<int, Complex> out;
  for (const auto& [k, c] : a.coeffs()) out[-k] = std::conj(c);
  return LaurentPoly(std::move(out));
}

LaurentPoly sum_of_squares(const std::vector<LaurentPoly>& symbols) {
  if (symbols.empty()) {
    throw std::invalid_argument("sum_of_squares: empty symbol list");
  }
  LaurentPoly total;
  for (const auto& phi : symbols) total = add(total, multiply(star(phi), phi));
  return total;
}

bool approx_equal(const LaurentPoly& a, const LaurentPoly& b, double tol) {
  auto ia = a.coeffs().begin();
  auto ib = b.coeffs().begin();
  while (ia != a.coeffs().end() || ib != b.coeffs().end()) {
    if (ib == b.coeffs().end() ||
        (ia != a.coeffs().end() && ia->first < ib->first)) {
      if (std::abs(ia->second) > tol) return false;
      ++ia;
    } else if (ia == a.coeffs().end() || ib->first < ia->first) {
      if (std::abs(ib->second) > tol) return false;
      ++ib;
    } else {
      if (std::abs(ia->second - ib->second) > tol) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

int winding_number(const LaurentPoly& a, int grid_points, double min_modulus) {
  if (grid_points <= 0) {
    throw std::invalid_argument("winding_number: grid_points must be positive");
  }
  if (min_modulus <= 0.0) {
    throw std::invalid_argument("winding_number: min_modulus must be positive");
  }
  if (a.is_zero()) {
    throw SymbolVanishesOnCircle("winding_number: zero symbol");
  }

  const double step = 2.0 * std::numbers::pi / grid_points;
  std::vector<Complex> values(grid_points);
  double min_mod = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_points; ++j) {
    values[j] = a.eval_circle(j * step);
    min_mod = std::min(min_mod, std::abs(values[j]));
  }
  if (min_mod < min_modulus) {
    std::ostringstream msg;
    msg << "winding_number: symbol modulus " << min_mod
        << " below cutoff " << min_modulus << " on the circle grid";
    throw SymbolVanishesOnCircle(msg.str());
  }

  double total = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    total += std::arg(values[(j + 1) % grid_points] / values[j]);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::string to_string(const LaurentPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : a.coeffs()) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    if (k != 0) out << "*z^" << k;
  }
  return out.str();
}

}  // namespace calkin
