// Classical orthogonal polynomial data: three-term/series generators for
// Hermite, Laguerre and Jacobi, the classical second-order operators, and the
// catalogs of quasi-rational eigenfunctions used to seed factorizations.
#pragma once

#include "xops/quasirational.hpp"

namespace xops {

enum class Family { Hermite, Laguerre, Jacobi };

struct ClassicalParams {
  Family family = Family::Hermite;
  Scalar alpha, beta;  // Laguerre uses alpha; Jacobi uses both

  static ClassicalParams hermite() { return {Family::Hermite, Scalar(0), Scalar(0)}; }
  static ClassicalParams laguerre(const Scalar& a) { return {Family::Laguerre, a, Scalar(0)}; }
  static ClassicalParams jacobi(const Scalar& a, const Scalar& b) { return {Family::Jacobi, a, b}; }
};

// H_n / L_n^(alpha) / P_n^(alpha,beta); exact in the instantiated parameters
Poly classical_poly(const ClassicalParams& params, int n);

// binomial(t, k) with arbitrary scalar t and integer k >= 0
Scalar binomial_scalar(const Scalar& t, int k);

struct ClassicalOperator {
  // p y'' + q y' (r = 0 for the classical normalizations used here)
  Poly p, q;
};
ClassicalOperator classical_operator(const ClassicalParams& params);
// eigenvalue of classical_poly(params, n) under classical_operator(params)
Scalar classical_eigenvalue(const ClassicalParams& params, int n);

// quasi-rational eigenfunctions of the classical operator; kind 1..2 for
// Hermite, 1..4 for Laguerre and Jacobi
struct QuasiEigenfunction {
  QuasiRational fn;
  Scalar eigenvalue;
};
QuasiEigenfunction quasi_eigenfunction(const ClassicalParams& params, int kind, int n);

}  // namespace xops
