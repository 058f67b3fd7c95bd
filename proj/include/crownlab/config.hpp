#pragma once

namespace crownlab {

// Every numerical threshold used by the library. Functions take a
// Tolerances by const reference and default to default_tolerances().
struct Tolerances {
  // Relative entrywise asymmetry accepted by symmetric routines.
  double symmetry = 1e-12;
  // Relative anti-hermitian part accepted by sym_eig.
  double hermitian = 1e-12;
  // |Delta_k| must exceed minor_floor * scale^k, scale = max |S_ij|.
  double minor_floor = 1e-13;
  // |det g - 1| accepted for SL(n) inputs.
  double determinant = 1e-9;
  // Relative Frobenius residual accepted for reconstructions.
  double reconstruction = 1e-9;
  // Smallest singular value (relative to the largest) for invertibility.
  double singular_floor = 1e-14;
  // Zero-trace and real-entry checks on P elements.
  double traceless = 1e-10;
  // Jacobi sweeps stop once the off-diagonal mass falls below this.
  double jacobi = 1e-15;
  int jacobi_max_sweeps = 60;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace crownlab
