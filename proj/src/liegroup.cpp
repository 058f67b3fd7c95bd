#include "crownlab/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "crownlab/errors.hpp"

namespace crownlab {

LieStructure LieStructure::sl(int n) {
  if (n < 2) throw StructuralError("LieStructure: n must be >= 2");
  LieStructure s;
  s.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<double> r(n, 0.0);
      r[i] = 1.0;
      r[j] = -1.0;
      s.restricted_roots.push_back(std::move(r));
    }
  if (n <= 5) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      s.weyl_group.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return s;
}

std::vector<int> random_weyl_element(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

PElement::PElement(const ComplexMatrix& x, const Tolerances& tol) : x_(x) {
  if (!x.is_finite()) throw StructuralError("PElement: non-finite entry");
  if (!x.is_real(tol.traceless)) throw StructuralError("PElement: matrix must be real");
  const double scale = std::max(1.0, x.max_abs());
  if (max_asymmetry(x) > tol.symmetry * scale)
    throw StructuralError("PElement: matrix must be symmetric");
  if (std::abs(x.trace()) > tol.traceless * scale)
    throw StructuralError("PElement: matrix must be traceless");
  eig_ = real_symmetric_eigen(x, tol);
}

PElement PElement::diagonal(std::span<const double> entries) {
  return PElement(ComplexMatrix::diagonal(entries));
}

PElement PElement::scaled(double c) const {
  PElement out(*this);
  out.x_ *= c;
  for (auto& v : out.eig_.values) v *= c;
  if (c < 0.0) {
    std::reverse(out.eig_.values.begin(), out.eig_.values.end());
    const std::size_t n = dim();
    ComplexMatrix v(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(i, j) = eig_.vectors(i, n - 1 - j);
    out.eig_.vectors = v;
  }
  return out;
}

double rho(const PElement& x) {
  const auto& ev = x.eigenvalues();
  return ev.back() - ev.front();
}

bool crown_contains(const PElement& x, double margin) {
  if (margin < 0.0) throw StructuralError("crown_contains: margin must be >= 0");
  return rho(x) < std::numbers::pi / 2.0 - margin;
}

PElement boundary_direction(const PElement& h_raw) {
  const double r = rho(h_raw);
  if (!(r > 0.0)) throw StructuralError("boundary_direction: zero direction");
  return h_raw.scaled((std::numbers::pi / 2.0) / r);
}

PElement random_boundary_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix x(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = gauss(rng);
      x(i, j) = v;
      x(j, i) = v;
    }
  const double tr = x.trace().real() / n;
  for (int i = 0; i < n; ++i) x(i, i) -= tr;
  return boundary_direction(PElement(x));
}

ComplexMatrix haar_so(int n, std::mt19937_64& rng) {
  if (n < 2) throw StructuralError("haar_so: n must be >= 2");
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = gauss(rng);
  // Modified Gram-Schmidt: Q has the positive-diagonal R convention.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += cols[k][i] * cols[j][i];
      for (int i = 0; i < n; ++i) cols[j][i] -= d * cols[k][i];
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += cols[j][i] * cols[j][i];
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) cols[j][i] /= nrm;
  }
  ComplexMatrix q(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = cols[j][i];
  if (q.det().real() < 0.0)
    for (int i = 0; i < n; ++i) q(i, 0) = -q(i, 0);
  return q;
}

ComplexMatrix haar_so(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_so(n, rng);
}

ComplexMatrix givens(int n, int p, int q, double angle) {
  ComplexMatrix g = ComplexMatrix::identity(n);
  const double c = std::cos(angle), s = std::sin(angle);
  g(p, p) = c;
  g(q, q) = c;
  g(p, q) = -s;
  g(q, p) = s;
  return g;
}

double s_max(const ComplexMatrix& g, const Tolerances& tol) {
  const auto sv = singular_values(g, tol);
  if (!(sv.back() > tol.singular_floor * sv.front()))
    throw DomainError("s_max: matrix is numerically singular");
  return sv.front() / sv.back();
}

}  // namespace crownlab
