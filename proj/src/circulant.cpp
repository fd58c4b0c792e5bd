#include "flatpunct/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

using cplx = std::complex<double>;

CirculantMatrix CirculantMatrix::from_rational(std::vector<Rational> coefficients) {
  CirculantMatrix out;
  out.c.reserve(coefficients.size());
  for (const auto& q : coefficients) out.c.push_back(to_double(q));
  out.exact = std::move(coefficients);
  return out;
}

double CirculantMatrix::entry(std::size_t row, std::size_t col) const {
  const std::size_t m = c.size();
  return c[(row + m - col % m) % m];
}

cplx root_of_unity(std::size_t m, std::size_t j) {
  // Reduce first so exp() sees an angle in [0, 2*pi).
  const double angle = 2.0 * kPi * static_cast<double>(j % m) / static_cast<double>(m);
  return std::polar(1.0, angle);
}

std::vector<cplx> Spectrum::eigenvector(std::size_t j) const {
  const std::size_t m = eigenvalues.size();
  std::vector<cplx> v(m);
  for (std::size_t r = 0; r < m; ++r) v[r] = root_of_unity(m, j * r);
  return v;
}

cplx associated_polynomial(const CirculantMatrix& matrix, cplx x) {
  cplx acc = 0.0;
  for (std::size_t k = matrix.c.size(); k-- > 0;) acc = acc * x + matrix.c[k];
  return acc;
}

Spectrum eigenvalues(const CirculantMatrix& matrix) {
  const std::size_t m = matrix.size();
  Spectrum out;
  out.eigenvalues.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += matrix.c[k] * root_of_unity(m, (m - k) * j);
    out.eigenvalues[j] = acc;
  }
  return out;
}

double determinant(const CirculantMatrix& matrix) {
  const std::size_t m = matrix.size();
  if (m == 0) return 1.0;
  cplx product = 1.0;
  for (std::size_t j = 0; j < m; ++j) product *= associated_polynomial(matrix, root_of_unity(m, j));
  if (std::abs(product.imag()) > 1e-9 * std::max(1.0, std::abs(product))) {
    throw Error(ErrorCode::DomainError, "circulant determinant has an imaginary residue");
  }
  return product.real();
}

namespace {

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a / b; b nonzero.
Polynomial remainder(Polynomial a, const Polynomial& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

Polynomial cyclotomic_modulus(std::size_t m) {
  Polynomial p(m + 1, Rational(0));
  p[0] = -1;
  p[m] = 1;
  return p;
}

cplx evaluate(const Polynomial& p, cplx x) {
  cplx acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + to_double(p[k]);
  return acc;
}

const std::vector<Rational>& require_exact(const CirculantMatrix& matrix) {
  if (!matrix.exact) {
    throw Error(ErrorCode::RequiresExact, "rank by gcd needs exact rational coefficients");
  }
  return *matrix.exact;
}

}  // namespace

Polynomial polynomial_gcd(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Polynomial r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& coeff : a) coeff /= lead;
  }
  return a;
}

std::size_t rank_by_gcd(const CirculantMatrix& matrix) {
  const auto& coeffs = require_exact(matrix);
  const std::size_t m = coeffs.size();
  const Polynomial g = polynomial_gcd(coeffs, cyclotomic_modulus(m));
  // gcd(0, x^m - 1) = x^m - 1: the zero matrix has rank 0.
  return m - (g.size() - 1);
}

std::vector<std::size_t> exact_vanishing_factors(const CirculantMatrix& matrix) {
  const auto& coeffs = require_exact(matrix);
  const std::size_t m = coeffs.size();
  const Polynomial g = polynomial_gcd(coeffs, cyclotomic_modulus(m));
  std::vector<std::size_t> out;
  if (g.size() <= 1) return out;
  // The roots of g are m-th roots of unity, so exact zeros evaluate to
  // rounding noise and every other root of unity stays well away from 0.
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(evaluate(g, root_of_unity(m, j))) < 1e-9) out.push_back(j);
  }
  return out;
}

namespace {

void check_principal_domain(double total_pi, int n) {
  if (n < 3) throw Error(ErrorCode::ArityError, "principal matrix needs n >= 3");
  const double magnitude = -total_pi;
  if (magnitude < n - 1 - 1e-9 || magnitude >= n + 1e-9) {
    throw Error(ErrorCode::ArityError,
                "K is outside [(n-1)pi, n*pi) for n = " + std::to_string(n));
  }
}

}  // namespace

CirculantMatrix principal_matrix(double total, int n) {
  check_principal_domain(total / kPi, n);
  CirculantMatrix out;
  out.c.assign(static_cast<std::size_t>(n), 0.0);
  out.c[0] = 1.0;
  out.c[1] = 2.0 * std::cos(kPi - total / n);
  out.c[2] = 1.0;
  return out;
}

CirculantMatrix principal_matrix_exact(const Rational& total_pi, int n) {
  check_principal_domain(to_double(total_pi), n);
  // Angle (1 - q/n)*pi reduced to [0, 2) in units of pi.
  Rational s = Rational(1) - total_pi / n;
  const Rational two(2);
  while (s >= two) s -= two;
  while (s < 0) s += two;
  std::optional<Rational> cos_value;
  const Rational half(1, 2);
  if (s == 0) cos_value = Rational(1);
  else if (s == Rational(1, 3) || s == Rational(5, 3)) cos_value = half;
  else if (s == half || s == Rational(3, 2)) cos_value = Rational(0);
  else if (s == Rational(2, 3) || s == Rational(4, 3)) cos_value = -half;
  else if (s == 1) cos_value = Rational(-1);

  if (!cos_value) return principal_matrix(to_double(total_pi) * kPi, n);
  std::vector<Rational> coeffs(static_cast<std::size_t>(n), Rational(0));
  coeffs[0] = 1;
  coeffs[1] = 2 * *cos_value;
  coeffs[2] = 1;
  return CirculantMatrix::from_rational(std::move(coeffs));
}

SingularityReport singularity(double total, int n) {
  const CirculantMatrix matrix = principal_matrix(total, n);
  SingularityReport out;
  out.min_modulus = INFINITY;
  const std::size_t m = matrix.size();
  for (std::size_t j = 0; j < m; ++j) {
    const double modulus = std::abs(associated_polynomial(matrix, root_of_unity(m, j)));
    out.min_modulus = std::min(out.min_modulus, modulus);
    if (modulus <= 1e-9) out.vanishing.push_back(j);
  }
  out.singular = !out.vanishing.empty();
  return out;
}

bool singular_case(double total, int n) { return singularity(total, n).singular; }

std::vector<double> circulant_apply(const CirculantMatrix& matrix, std::span<const double> x) {
  const std::size_t m = matrix.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t s = 0; s < m; ++s) out[r] += matrix.entry(r, s) * x[s];
  }
  return out;
}

std::vector<double> circulant_solve(const CirculantMatrix& matrix, std::span<const double> rhs) {
  const std::size_t m = matrix.size();
  if (rhs.size() != m) throw Error(ErrorCode::DomainError, "circulant_solve: size mismatch");
  const Spectrum spectrum = eigenvalues(matrix);
  double largest = 0.0;
  for (const auto& lambda : spectrum.eigenvalues) largest = std::max(largest, std::abs(lambda));
  for (const auto& lambda : spectrum.eigenvalues) {
    if (std::abs(lambda) <= 1e-12 * largest || largest == 0.0) {
      throw Error(ErrorCode::DomainError, "circulant matrix is singular");
    }
  }
  // C = F diag(lambda) F^-1 with F[r][j] = omega_j^r and F^-1 = conj(F)^T / m.
  std::vector<double> x(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    cplx coeff = 0.0;
    for (std::size_t s = 0; s < m; ++s) coeff += std::conj(root_of_unity(m, j * s)) * rhs[s];
    coeff /= spectrum.eigenvalues[j] * static_cast<double>(m);
    for (std::size_t r = 0; r < m; ++r) x[r] += (coeff * root_of_unity(m, j * r)).real();
  }
  return x;
}

}  // namespace flatpunct
