#include "ccbc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ccbc {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::max_abs() const {
  double v = 0.0;
  for (double x : data_) v = std::max(v, std::abs(x));
  return v;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

SymMatrix SymMatrix::from_matrix(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric matrix must be square");
  const double scale = std::max(a.max_abs(), 1e-300);
  SymMatrix s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol * scale)
        throw std::invalid_argument("matrix is not symmetric within tolerance");
      s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    }
  }
  return s;
}

namespace {

bool abs_order(double a, double b) {
  const double aa = std::abs(a);
  const double ab = std::abs(b);
  return aa < ab || (aa == ab && a < b);
}

void check_finite(const Matrix& a) {
  for (double v : a.data())
    if (!std::isfinite(v)) throw std::invalid_argument("matrix has non-finite entries");
}

// Cyclic Jacobi on a copy of `a`. Returns unsorted eigenvalues; `v` receives
// eigenvectors as columns when non-null.
std::vector<double> jacobi(Matrix a, Matrix* v) {
  const std::size_t n = a.rows();
  if (v) *v = Matrix::identity(n);
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a(i, i);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) break;
    const double thresh = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        // Negligible off-diagonal after a few sweeps: zero it.
        if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p]) && std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::abs(a(p, q)) <= thresh) continue;

        const double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = a(p, q) / h;
        } else {
          const double theta = 0.5 * h / a(p, q);
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double hh = t * a(p, q);
        z[p] -= hh;
        z[q] += hh;
        d[p] -= hh;
        d[q] += hh;
        a(p, q) = 0.0;

        auto rotate = [&](double& x, double& y) {
          const double gx = x;
          const double hy = y;
          x = gx - s * (hy + gx * tau);
          y = hy + s * (gx - hy * tau);
        };
        for (std::size_t j = 0; j < p; ++j) rotate(a(j, p), a(j, q));
        for (std::size_t j = p + 1; j < q; ++j) rotate(a(p, j), a(j, q));
        for (std::size_t j = q + 1; j < n; ++j) rotate(a(p, j), a(q, j));
        if (v)
          for (std::size_t j = 0; j < n; ++j) rotate((*v)(j, p), (*v)(j, q));
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  return d;
}

struct LU {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
  std::size_t failed_pivot = 0;
};

LU decompose(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LU requires a square matrix");
  check_finite(a);
  const std::size_t n = a.rows();
  LU f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const double tol = 1e-14 * a.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    const double pivot = f.lu(k, k);
    if (!(std::abs(pivot) > tol)) {
      f.singular = true;
      f.failed_pivot = k;
      return f;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

std::vector<double> lu_solve(const LU& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

}  // namespace

std::vector<double> sym_eigenvalues(const SymMatrix& a) {
  check_finite(a.matrix());
  auto d = jacobi(a.matrix(), nullptr);
  std::sort(d.begin(), d.end(), abs_order);
  return d;
}

SymEigen sym_eigen(const SymMatrix& a) {
  check_finite(a.matrix());
  Matrix v;
  auto d = jacobi(a.matrix(), &v);
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return abs_order(d[i], d[j]); });
  SymEigen out{std::vector<double>(d.size()), Matrix(v.rows(), v.cols())};
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.values[k] = d[idx[k]];
    for (std::size_t r = 0; r < v.rows(); ++r) out.vectors(r, k) = v(r, idx[k]);
  }
  return out;
}

std::vector<double> solve(const Matrix& a, std::span<const double> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side size mismatch");
  const LU f = decompose(a);
  if (f.singular) throw SingularMatrixError(f.failed_pivot);
  return lu_solve(f, b);
}

Matrix invert(const Matrix& a) {
  const LU f = decompose(a);
  if (f.singular) throw SingularMatrixError(f.failed_pivot);
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const auto col = lu_solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double determinant(const Matrix& a) {
  const LU f = decompose(a);
  if (f.singular) return 0.0;
  double det = f.sign;
  for (std::size_t i = 0; i < a.rows(); ++i) det *= f.lu(i, i);
  return det;
}

}  // namespace ccbc
