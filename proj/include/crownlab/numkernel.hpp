#pragma once

// Dense complex linear algebra for the small matrices (n <= ~8) that carry
// elements of SL(n, C) and their Iwasawa factors.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "crownlab/config.hpp"

namespace crownlab {

using cdouble = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);
  ComplexMatrix(std::size_t n, std::vector<cdouble> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cdouble> d);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return n_; }
  cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  std::span<const cdouble> entries() const noexcept { return a_; }

  // Bilinear transpose (no conjugation).
  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cdouble s);

  // Top-left k x k block.
  ComplexMatrix leading_block(std::size_t k) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;
  bool is_real(double tol) const;
  cdouble trace() const;

  // Determinant and inverse by elimination with partial pivoting. Only used
  // for residual checks and group-element bookkeeping, never for the
  // Iwasawa factorization itself.
  cdouble det() const;
  ComplexMatrix inverse() const;

 private:
  std::size_t n_ = 0;
  std::vector<cdouble> a_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);

// Coordinates along the diagonal: a^2 = diag(D), H in a_C, and so on.
struct DiagonalVector {
  std::vector<cdouble> entries;

  std::size_t dim() const noexcept { return entries.size(); }
  cdouble sum() const;
  bool is_finite() const;
};

// Largest |S_ij - S_ji|.
double max_asymmetry(const ComplexMatrix& s);

// Determinants of the leading k x k blocks, k = 1..n. Throws StructuralError
// if S is not symmetric.
std::vector<cdouble> principal_minors(const ComplexMatrix& s,
                                      const Tolerances& tol = default_tolerances());

struct LdlFactors {
  ComplexMatrix upper;  // unit upper-triangular N
  DiagonalVector d;     // S = N^T diag(d) N
};

// Symmetric (bilinear) LDL without pivoting: pivoting would break
// D_k = Delta_k / Delta_{k-1}. Throws NearSingularMinor when a leading minor
// drops below tol.minor_floor * max|S_ij|^k.
LdlFactors sym_ldl(const ComplexMatrix& s, const Tolerances& tol = default_tolerances());

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // real orthogonal, columns match values
};

// Cyclic Jacobi on a real symmetric matrix.
SymmetricEigen real_symmetric_eigen(const ComplexMatrix& x,
                                    const Tolerances& tol = default_tolerances());

// Eigenvalues (ascending) of a hermitian matrix, via the real symmetric
// embedding [[Re, -Im], [Im, Re]] whose spectrum doubles each eigenvalue.
std::vector<double> sym_eig(const ComplexMatrix& x,
                            const Tolerances& tol = default_tolerances());

// exp(z x) for real symmetric x.
ComplexMatrix group_exp(const ComplexMatrix& x, cdouble z,
                        const Tolerances& tol = default_tolerances());
// Same, reusing an eigendecomposition.
ComplexMatrix group_exp(const SymmetricEigen& eig, cdouble z);

// One-sided (Hestenes) Jacobi; descending. Equals the square roots of the
// eigenvalues of g^* g, but keeps relative accuracy in the small ones.
std::vector<double> singular_values(const ComplexMatrix& g,
                                    const Tolerances& tol = default_tolerances());

}  // namespace crownlab
