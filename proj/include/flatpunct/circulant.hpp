#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flatpunct/rational.hpp"

namespace flatpunct {

/// Circulant matrix given by its first column: C[r][s] = c[(r - s) mod m].
struct CirculantMatrix {
  std::vector<double> c;
  std::optional<std::vector<Rational>> exact;  // same coefficients, when rational

  static CirculantMatrix from_rational(std::vector<Rational> coefficients);
  std::size_t size() const { return c.size(); }
  double entry(std::size_t row, std::size_t col) const;
};

/// lambda_j = sum_k c_k * omega_j^(-k) with eigenvector [1, omega_j, omega_j^2, ...]
/// and omega_j = exp(2*pi*i*j/m).
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<std::complex<double>> eigenvector(std::size_t j) const;
};

std::complex<double> root_of_unity(std::size_t m, std::size_t j);

// f(x) = c_0 + c_1 x + ... + c_{m-1} x^{m-1}.
std::complex<double> associated_polynomial(const CirculantMatrix& matrix, std::complex<double> x);

Spectrum eigenvalues(const CirculantMatrix& matrix);

// prod_j f(omega_j). Throws Error{DomainError} if the imaginary part of the
// product exceeds 1e-9 relative to its modulus.
double determinant(const CirculantMatrix& matrix);

using Polynomial = std::vector<Rational>;  // low degree first, no trailing zeros

Polynomial polynomial_gcd(Polynomial a, Polynomial b);  // monic; zero polynomial is {}

// m - deg gcd(f, x^m - 1). Throws Error{RequiresExact} without rational coefficients.
std::size_t rank_by_gcd(const CirculantMatrix& matrix);

// Indices j whose omega_j is a root of gcd(f, x^m - 1), i.e. exact zero eigen-factors.
std::vector<std::size_t> exact_vanishing_factors(const CirculantMatrix& matrix);

// Coefficients (1, 2cos(pi - K/n), 1, 0, ...). Throws Error{ArityError} for
// n < 3 or K outside [-(n)pi, -(n-1)pi].
CirculantMatrix principal_matrix(double total, int n);
// Exact variant from K/pi; the coefficient is rational only when
// cos(pi - K/n) is one of 0, +-1/2, +-1, otherwise `exact` stays empty.
CirculantMatrix principal_matrix_exact(const Rational& total_pi, int n);

struct SingularityReport {
  bool singular = false;
  std::vector<std::size_t> vanishing;  // j with |1 + c_1 omega_j + omega_j^2| <= 1e-9
  double min_modulus = 0.0;
};

SingularityReport singularity(double total, int n);
bool singular_case(double total, int n);

// Solves C x = rhs through the closed-form eigendecomposition. Throws
// Error{DomainError} when some |lambda_j| is below 1e-12 times the largest.
std::vector<double> circulant_solve(const CirculantMatrix& matrix, std::span<const double> rhs);

std::vector<double> circulant_apply(const CirculantMatrix& matrix, std::span<const double> x);

}  // namespace flatpunct
