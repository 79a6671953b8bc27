#include "corb/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace corb {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (auto &r : rows) {
    if (r.size() != cols_)
      throw std::invalid_argument("ragged matrix literal");
    for (long v : r)
      e_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix I(n, n);
  for (size_t i = 0; i < n; ++i)
    I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>> &rows, size_t cols) {
  if (!rows.empty())
    cols = rows[0].size();
  IntMatrix A(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (size_t j = 0; j < cols; ++j)
      A(i, j) = rows[i][j];
  }
  return A;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<BigInt>> &cols, size_t rows) {
  IntMatrix A(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("ragged matrix columns");
    for (size_t i = 0; i < rows; ++i)
      A(i, j) = cols[j][i];
  }
  return A;
}

std::vector<BigInt> IntMatrix::row(size_t i) const {
  return {e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_};
}

std::vector<BigInt> IntMatrix::column(size_t j) const {
  std::vector<BigInt> c(rows_);
  for (size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::select_columns(const std::vector<size_t> &idx) const {
  IntMatrix R(rows_, idx.size());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      R(i, j) = (*this)(i, idx[j]);
  return R;
}

IntMatrix IntMatrix::select_rows(const std::vector<size_t> &idx) const {
  IntMatrix R(idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < cols_; ++j)
      R(i, j) = (*this)(idx[i], j);
  return R;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::hconcat(const IntMatrix &rhs) const {
  if (rhs.rows_ != rows_)
    throw std::invalid_argument("hconcat: row count mismatch");
  IntMatrix R(rows_, cols_ + rhs.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j)
      R(i, j) = (*this)(i, j);
    for (size_t j = 0; j < rhs.cols_; ++j)
      R(i, cols_ + j) = rhs(i, j);
  }
  return R;
}

bool IntMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const BigInt &x) { return x == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix R(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const BigInt &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (size_t j = 0; j < o.cols_; ++j)
        R(i, j) += a * o(k, j);
    }
  return R;
}

std::vector<BigInt> IntMatrix::operator*(const std::vector<BigInt> &v) const {
  if (v.size() != cols_)
    throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<BigInt> r(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      r[i] += (*this)(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix R = *this;
  for (auto &x : R.e_)
    x = -x;
  return R;
}

void IntMatrix::swap_rows(size_t a, size_t b) {
  if (a == b)
    return;
  for (size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(size_t a, size_t b) {
  if (a == b)
    return;
  for (size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

BigInt FinDiagGroupDesc::order() const {
  if (free_rank != 0)
    throw std::domain_error("group is infinite");
  BigInt o = 1;
  for (auto &t : torsion)
    o *= t;
  return o;
}

namespace {

// rows (r, s) <- [[x, y], [z, w]] * rows (r, s)
void mix_rows(IntMatrix &M, size_t r, size_t s, const BigInt &x, const BigInt &y, const BigInt &z,
              const BigInt &w) {
  for (size_t j = 0; j < M.cols(); ++j) {
    BigInt a = M(r, j), b = M(s, j);
    M(r, j) = x * a + y * b;
    M(s, j) = z * a + w * b;
  }
}

void mix_cols(IntMatrix &M, size_t r, size_t s, const BigInt &x, const BigInt &y, const BigInt &z,
              const BigInt &w) {
  for (size_t i = 0; i < M.rows(); ++i) {
    BigInt a = M(i, r), b = M(i, s);
    M(i, r) = x * a + y * b;
    M(i, s) = z * a + w * b;
  }
}

void add_row_multiple(IntMatrix &M, size_t dst, size_t src, const BigInt &q) {
  if (q == 0)
    return;
  for (size_t j = 0; j < M.cols(); ++j)
    M(dst, j) += q * M(src, j);
}

void negate_row(IntMatrix &M, size_t r) {
  for (size_t j = 0; j < M.cols(); ++j)
    M(r, j) = -M(r, j);
}

// unimodular 2x2 sending (a, b) to (g, 0); a plain subtraction when a | b
void gcd_step(const BigInt &a, const BigInt &b, BigInt &x, BigInt &y, BigInt &z, BigInt &w) {
  if (a != 0 && b % a == 0) {
    x = 1;
    y = 0;
    z = -b / a;
    w = 1;
    return;
  }
  BigInt g;
  xgcd(a, b, g, x, y);
  z = -b / g;
  w = a / g;
}

} // namespace

HermiteForm hnf(const IntMatrix &A) {
  IntMatrix H = A, U = IntMatrix::identity(A.rows());
  size_t r = 0;
  for (size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (size_t i = r + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0)
        continue;
      BigInt x, y, z, w;
      gcd_step(H(r, c), H(i, c), x, y, z, w);
      mix_rows(H, r, i, x, y, z, w);
      mix_rows(U, r, i, x, y, z, w);
    }
    if (H(r, c) == 0)
      continue;
    if (H(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (size_t i = 0; i < r; ++i) {
      BigInt q = -floor_div(H(i, c), H(r, c));
      add_row_multiple(H, i, r, q);
      add_row_multiple(U, i, r, q);
    }
    ++r;
  }
  return {H, U};
}

SmithForm snf(const IntMatrix &A) {
  IntMatrix D = A, U = IntMatrix::identity(A.rows()), V = IntMatrix::identity(A.cols());
  const size_t m = D.rows(), n = D.cols(), k = std::min(m, n);
  for (size_t t = 0; t < k; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m)
      break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);
    for (;;) {
      for (size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0)
          continue;
        BigInt x, y, z, w;
        gcd_step(D(t, t), D(i, t), x, y, z, w);
        mix_rows(D, t, i, x, y, z, w);
        mix_rows(U, t, i, x, y, z, w);
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0)
          continue;
        BigInt x, y, z, w;
        gcd_step(D(t, t), D(t, j), x, y, z, w);
        mix_cols(D, t, j, x, y, z, w);
        mix_cols(V, t, j, x, y, z, w);
      }
      bool clean = true;
      for (size_t i = t + 1; i < m && clean; ++i)
        if (D(i, t) != 0)
          clean = false;
      if (!clean)
        continue;
      size_t bad = m;
      for (size_t i = t + 1; i < m && bad == m; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m)
        break;
      add_row_multiple(D, t, bad, 1);
      add_row_multiple(U, t, bad, 1);
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
  }
  SmithForm S;
  S.d.resize(k);
  for (size_t i = 0; i < k; ++i)
    S.d[i] = D(i, i);
  S.U = std::move(U);
  S.V = std::move(V);
  return S;
}

size_t rank(const IntMatrix &A) {
  HermiteForm h = hnf(A);
  size_t r = 0;
  for (size_t i = 0; i < h.H.rows(); ++i) {
    bool nz = false;
    for (size_t j = 0; j < h.H.cols() && !nz; ++j)
      nz = h.H(i, j) != 0;
    if (nz)
      ++r;
  }
  return r;
}

BigInt determinant(const IntMatrix &A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("determinant of non-square matrix");
  const size_t n = A.rows();
  if (n == 0)
    return 1;
  IntMatrix M = A;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && M(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMatrix kernel_basis(const IntMatrix &A) {
  HermiteForm h = hnf(A.transpose());
  std::vector<size_t> zero_rows;
  for (size_t i = 0; i < h.H.rows(); ++i) {
    bool nz = false;
    for (size_t j = 0; j < h.H.cols() && !nz; ++j)
      nz = h.H(i, j) != 0;
    if (!nz)
      zero_rows.push_back(i);
  }
  if (zero_rows.empty())
    return IntMatrix(A.cols(), 0);
  IntMatrix K = hnf(h.U.select_rows(zero_rows)).H;
  return K.transpose();
}

FinDiagGroupDesc cokernel(const IntMatrix &A) {
  SmithForm s = snf(A);
  FinDiagGroupDesc g;
  size_t r = 0;
  for (auto &d : s.d)
    if (d != 0) {
      ++r;
      if (d > 1)
        g.torsion.push_back(d);
    }
  g.free_rank = A.rows() - r;
  return g;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix &A, const std::vector<BigInt> &b) {
  if (b.size() != A.rows())
    throw std::invalid_argument("solve_integer: shape mismatch");
  SmithForm s = snf(A);
  std::vector<BigInt> c = s.U * b;
  std::vector<BigInt> y(A.cols());
  for (size_t i = 0; i < A.rows(); ++i) {
    BigInt d = i < s.d.size() ? s.d[i] : BigInt(0);
    if (d == 0) {
      if (c[i] != 0)
        return std::nullopt;
    } else {
      if (c[i] % d != 0)
        return std::nullopt;
      y[i] = c[i] / d;
    }
  }
  return s.V * y;
}

std::optional<std::vector<BigInt>> solve_mod(const IntMatrix &A, const std::vector<BigInt> &b,
                                             const BigInt &m) {
  if (b.size() != A.rows())
    throw std::invalid_argument("solve_mod: shape mismatch");
  if (m < 1)
    throw std::invalid_argument("solve_mod: modulus must be positive");
  SmithForm s = snf(A);
  std::vector<BigInt> c = s.U * b;
  std::vector<BigInt> y(A.cols());
  for (size_t i = 0; i < A.rows(); ++i) {
    BigInt d = i < s.d.size() ? s.d[i] : BigInt(0);
    BigInt ci = mod_floor(c[i], m);
    BigInt g, u, v;
    xgcd(d, m, g, u, v);
    if (ci % g != 0)
      return std::nullopt;
    if (i < A.cols())
      y[i] = mod_floor((ci / g) * u, m / g);
  }
  std::vector<BigInt> x = s.V * y;
  for (auto &xi : x)
    xi = mod_floor(xi, m);
  return x;
}

nlohmann::ordered_json big_to_json(const BigInt &x) {
  if (x <= BigInt(std::numeric_limits<long long>::max()) && x >= BigInt(std::numeric_limits<long long>::min()))
    return x.convert_to<long long>();
  return x.str();
}

nlohmann::ordered_json to_json(const IntMatrix &A) {
  auto j = nlohmann::ordered_json::array();
  for (size_t i = 0; i < A.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (size_t c = 0; c < A.cols(); ++c)
      row.push_back(A(i, c).str());
    j.push_back(row);
  }
  return j;
}

IntMatrix matrix_from_json(const nlohmann::ordered_json &j) {
  std::vector<std::vector<BigInt>> rows;
  for (auto &r : j) {
    std::vector<BigInt> row;
    for (auto &x : r)
      row.push_back(x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long long>()));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

nlohmann::ordered_json to_json(const FinDiagGroupDesc &g) {
  nlohmann::ordered_json j;
  auto t = nlohmann::ordered_json::array();
  for (auto &x : g.torsion)
    t.push_back(big_to_json(x));
  j["torsion"] = t;
  j["free_rank"] = g.free_rank;
  return j;
}

} // namespace corb
