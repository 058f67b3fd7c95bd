#include "crownlab/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "crownlab/errors.hpp"

namespace crownlab {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n, cdouble{}) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cdouble> row_major)
    : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n * n) {
    throw StructuralError("ComplexMatrix: expected " + std::to_string(n * n) +
                          " entries, got " + std::to_string(a_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows)
    : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw StructuralError("ComplexMatrix: ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cdouble> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix t(*this);
  for (auto& v : t.a_) v = std::conj(v);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.n_ != n_) throw StructuralError("ComplexMatrix: dimension mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.n_ != n_) throw StructuralError("ComplexMatrix: dimension mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
  for (auto& v : a_) v *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::leading_block(std::size_t k) const {
  ComplexMatrix b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
  return b;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](const cdouble& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

bool ComplexMatrix::is_real(double tol) const {
  const double scale = std::max(1.0, max_abs());
  return std::all_of(a_.begin(), a_.end(),
                     [&](const cdouble& v) { return std::abs(v.imag()) <= tol * scale; });
}

cdouble ComplexMatrix::trace() const {
  cdouble s{};
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

cdouble ComplexMatrix::det() const {
  ComplexMatrix lu(*this);
  cdouble d = 1.0;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n_; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (lu(p, k) == cdouble{}) return cdouble{};
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu(p, j), lu(k, j));
      d = -d;
    }
    d *= lu(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const cdouble f = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n_; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return d;
}

ComplexMatrix ComplexMatrix::inverse() const {
  ComplexMatrix a(*this);
  ComplexMatrix inv = identity(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n_; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == cdouble{}) throw StructuralError("ComplexMatrix::inverse: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a(p, j), a(k, j));
        std::swap(inv(p, j), inv(k, j));
      }
    }
    const cdouble piv = a(k, k);
    for (std::size_t j = 0; j < n_; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == k) continue;
      const cdouble f = a(i, k);
      if (f == cdouble{}) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw StructuralError("ComplexMatrix: dimension mismatch in *");
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cdouble aik = a(i, k);
      if (aik == cdouble{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }

cdouble DiagonalVector::sum() const {
  return std::accumulate(entries.begin(), entries.end(), cdouble{});
}

bool DiagonalVector::is_finite() const {
  return std::all_of(entries.begin(), entries.end(), [](const cdouble& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double max_asymmetry(const ComplexMatrix& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) m = std::max(m, std::abs(s(i, j) - s(j, i)));
  return m;
}

namespace {

void require_symmetric(const ComplexMatrix& s, const Tolerances& tol, const char* who) {
  if (!s.is_finite()) throw StructuralError(std::string(who) + ": non-finite entry");
  const double asym = max_asymmetry(s);
  if (asym > tol.symmetry * std::max(1.0, s.max_abs())) {
    std::ostringstream os;
    os << who << ": input not symmetric (max asymmetry " << asym << ")";
    throw StructuralError(os.str());
  }
}

}  // namespace

std::vector<cdouble> principal_minors(const ComplexMatrix& s, const Tolerances& tol) {
  require_symmetric(s, tol, "principal_minors");
  std::vector<cdouble> out;
  out.reserve(s.dim());
  for (std::size_t k = 1; k <= s.dim(); ++k) out.push_back(s.leading_block(k).det());
  return out;
}

LdlFactors sym_ldl(const ComplexMatrix& s, const Tolerances& tol) {
  require_symmetric(s, tol, "sym_ldl");
  const std::size_t n = s.dim();
  const double scale = s.max_abs() > 0.0 ? s.max_abs() : 1.0;
  // l(i, k) holds N(k, i): unit lower factor of S = L D L^T.
  ComplexMatrix l = ComplexMatrix::identity(n);
  std::vector<cdouble> d(n);
  cdouble minor = 1.0;
  double floor_k = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cdouble dk = s(k, k);
    for (std::size_t j = 0; j < k; ++j) dk -= l(k, j) * l(k, j) * d[j];
    minor *= dk;
    floor_k *= scale;
    if (!(std::abs(minor) > tol.minor_floor * floor_k)) {
      throw NearSingularMinor(k + 1, std::abs(minor));
    }
    d[k] = dk;
    for (std::size_t i = k + 1; i < n; ++i) {
      cdouble v = s(i, k);
      for (std::size_t j = 0; j < k; ++j) v -= l(i, j) * l(k, j) * d[j];
      l(i, k) = v / dk;
    }
  }
  return LdlFactors{l.transpose(), DiagonalVector{std::move(d)}};
}

SymmetricEigen real_symmetric_eigen(const ComplexMatrix& x, const Tolerances& tol) {
  const std::size_t n = x.dim();
  if (!x.is_finite()) throw StructuralError("real_symmetric_eigen: non-finite entry");
  if (!x.is_real(tol.symmetry)) throw StructuralError("real_symmetric_eigen: input not real");
  require_symmetric(x, tol, "real_symmetric_eigen");

  std::vector<double> a(n * n), v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (x(i, j).real() + x(j, i).real());
  }
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

  double total = 0.0;
  for (double e : a) total += e * e;
  const double target = tol.jacobi * std::sqrt(std::max(total, 1e-300));

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (std::sqrt(off) <= target) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return A(i, i) < A(j, j); });
  SymmetricEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = A(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = V(r, order[c]);
  }
  return out;
}

std::vector<double> sym_eig(const ComplexMatrix& x, const Tolerances& tol) {
  const std::size_t n = x.dim();
  if (!x.is_finite()) throw StructuralError("sym_eig: non-finite entry");
  double anti = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) anti = std::max(anti, std::abs(x(i, j) - std::conj(x(j, i))));
  if (anti > tol.hermitian * std::max(1.0, x.max_abs())) {
    std::ostringstream os;
    os << "sym_eig: input not hermitian (max deviation " << anti << ")";
    throw StructuralError(os.str());
  }
  ComplexMatrix big(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cdouble h = 0.5 * (x(i, j) + std::conj(x(j, i)));
      big(i, j) = h.real();
      big(i + n, j + n) = h.real();
      big(i, j + n) = -h.imag();
      big(i + n, j) = h.imag();
    }
  const auto eig = real_symmetric_eigen(big, tol);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = 0.5 * (eig.values[2 * i] + eig.values[2 * i + 1]);
  return vals;
}

ComplexMatrix group_exp(const SymmetricEigen& eig, cdouble z) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n);
  std::vector<cdouble> e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(z * eig.values[k]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cdouble s{};
      for (std::size_t k = 0; k < n; ++k)
        s += eig.vectors(i, k).real() * e[k] * eig.vectors(j, k).real();
      out(i, j) = s;
    }
  return out;
}

ComplexMatrix group_exp(const ComplexMatrix& x, cdouble z, const Tolerances& tol) {
  return group_exp(real_symmetric_eigen(x, tol), z);
}

std::vector<double> singular_values(const ComplexMatrix& g, const Tolerances& tol) {
  const std::size_t n = g.dim();
  if (!g.is_finite()) throw StructuralError("singular_values: non-finite entry");
  // Columns stored contiguously.
  std::vector<cdouble> u(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[j * n + i] = g(i, j);
  auto col = [&](std::size_t j) { return u.data() + j * n; };

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cdouble* up = col(p);
        cdouble* uq = col(q);
        double alpha = 0.0, beta = 0.0;
        cdouble gamma{};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(up[i]);
          beta += std::norm(uq[i]);
          gamma += std::conj(up[i]) * uq[i];
        }
        const double ag = std::abs(gamma);
        if (ag == 0.0 || ag <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cdouble phase = gamma / ag;  // rotate u_q so the overlap is real
        const double zeta = (beta - alpha) / (2.0 * ag);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const cdouble a = up[i];
          const cdouble b = uq[i] * std::conj(phase);
          up[i] = c * a - s * b;
          uq[i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(col(j)[i]);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace crownlab
