#include "corb/rational_lp.hpp"

#include <stdexcept>

namespace corb {

namespace {

struct Tableau {
  size_t m, n; // constraint rows, structural columns (rhs stored separately)
  std::vector<std::vector<Rational>> T;
  std::vector<Rational> rhs;
  std::vector<Rational> obj; // reduced costs, maximize
  Rational value;            // current objective value
  std::vector<size_t> basis;

  void pivot(size_t r, size_t c) {
    Rational p = T[r][c];
    for (size_t j = 0; j < n; ++j)
      if (T[r][j] != 0)
        T[r][j] /= p;
    rhs[r] /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || T[i][c] == 0)
        continue;
      Rational f = T[i][c];
      for (size_t j = 0; j < n; ++j)
        if (T[r][j] != 0)
          T[i][j] -= f * T[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (obj[c] != 0) {
      Rational f = obj[c];
      for (size_t j = 0; j < n; ++j)
        if (T[r][j] != 0)
          obj[j] -= f * T[r][j];
      value += f * rhs[r];
    }
    basis[r] = c;
  }

  // false if unbounded
  bool run(const std::vector<bool> &allowed) {
    for (;;) {
      size_t enter = n;
      for (size_t j = 0; j < n; ++j)
        if (allowed[j] && obj[j] > 0) {
          enter = j;
          break;
        }
      if (enter == n)
        return true;
      size_t leave = m;
      Rational best;
      for (size_t i = 0; i < m; ++i) {
        if (T[i][enter] <= 0)
          continue;
        Rational ratio = rhs[i] / T[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m)
        return false;
      pivot(leave, enter);
    }
  }
};

} // namespace

LpResult lp_maximize(const std::vector<std::vector<Rational>> &A, const std::vector<Rational> &b,
                     const std::vector<Rational> &c) {
  const size_t m = A.size(), n = c.size();
  if (b.size() != m)
    throw std::invalid_argument("lp: rhs length mismatch");
  for (auto &row : A)
    if (row.size() != n)
      throw std::invalid_argument("lp: row length mismatch");

  Tableau t;
  t.m = m;
  t.n = n + m;
  t.T.assign(m, std::vector<Rational>(n + m));
  t.rhs.resize(m);
  t.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    Rational s = b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j)
      t.T[i][j] = s * A[i][j];
    t.T[i][n + i] = 1;
    t.rhs[i] = s * b[i];
    t.basis[i] = n + i;
  }
  // phase 1: maximize -sum(artificial)
  t.obj.assign(n + m, 0);
  t.value = 0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j)
      t.obj[j] += t.T[i][j];
    t.value -= t.rhs[i];
  }
  std::vector<bool> all(n + m, true);
  t.run(all);
  LpResult res;
  if (t.value != 0) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // drive artificial variables out of the basis
  std::vector<bool> keep_row(m, true);
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n)
      continue;
    size_t col = n;
    for (size_t j = 0; j < n; ++j)
      if (t.T[i][j] != 0) {
        col = j;
        break;
      }
    if (col == n)
      keep_row[i] = false;
    else
      t.pivot(i, col);
  }
  Tableau u;
  u.n = n;
  for (size_t i = 0; i < m; ++i) {
    if (!keep_row[i])
      continue;
    u.T.emplace_back(t.T[i].begin(), t.T[i].begin() + n);
    u.rhs.push_back(t.rhs[i]);
    u.basis.push_back(t.basis[i]);
  }
  u.m = u.T.size();
  // phase 2 reduced costs
  u.obj = c;
  u.value = 0;
  for (size_t i = 0; i < u.m; ++i) {
    const Rational &cb = c[u.basis[i]];
    if (cb == 0)
      continue;
    for (size_t j = 0; j < n; ++j)
      u.obj[j] -= cb * u.T[i][j];
    u.value += cb * u.rhs[i];
  }
  std::vector<bool> allowed(n, true);
  if (!u.run(allowed)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.value = u.value;
  res.x.assign(n, 0);
  for (size_t i = 0; i < u.m; ++i)
    res.x[u.basis[i]] = u.rhs[i];
  return res;
}

bool lp_feasible(const std::vector<std::vector<Rational>> &A, const std::vector<Rational> &b) {
  std::vector<Rational> c(A.empty() ? 0 : A[0].size(), 0);
  return lp_maximize(A, b, c).status != LpResult::Status::Infeasible;
}

} // namespace corb
