#pragma once

#include "corb/bigint.hpp"

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <optional>
#include <vector>

namespace corb {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>> &rows, size_t cols = 0);
  static IntMatrix from_columns(const std::vector<std::vector<BigInt>> &cols, size_t rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const std::vector<BigInt> &entries() const { return e_; }

  BigInt &operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const BigInt &operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  std::vector<BigInt> row(size_t i) const;
  std::vector<BigInt> column(size_t j) const;
  IntMatrix select_columns(const std::vector<size_t> &idx) const;
  IntMatrix select_rows(const std::vector<size_t> &idx) const;
  IntMatrix transpose() const;
  IntMatrix hconcat(const IntMatrix &rhs) const;

  bool is_zero() const;
  bool operator==(const IntMatrix &o) const = default;
  IntMatrix operator*(const IntMatrix &o) const;
  std::vector<BigInt> operator*(const std::vector<BigInt> &v) const;
  IntMatrix operator-() const;

  void swap_rows(size_t a, size_t b);
  void swap_cols(size_t a, size_t b);

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> e_;
};

struct HermiteForm {
  IntMatrix H, U;
};

struct SmithForm {
  std::vector<BigInt> d; // length min(rows, cols)
  IntMatrix U, V;
};

struct FinDiagGroupDesc {
  size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool finite() const { return free_rank == 0; }
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  BigInt order() const; // throws if infinite
  bool operator==(const FinDiagGroupDesc &o) const = default;
};

// row style: U*A = H, positive pivots, 0 <= entries above a pivot < pivot
HermiteForm hnf(const IntMatrix &A);
// U*A*V = diag(d), d_i | d_{i+1}
SmithForm snf(const IntMatrix &A);
// columns form a lattice basis of {x : A x = 0}, in Hermite-normalized order
IntMatrix kernel_basis(const IntMatrix &A);
// Z^rows / column image of A
FinDiagGroupDesc cokernel(const IntMatrix &A);

size_t rank(const IntMatrix &A);
BigInt determinant(const IntMatrix &A);

// integer x with A x = b
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix &A, const std::vector<BigInt> &b);
// x with A x = b (mod m), entries reduced into [0, m)
std::optional<std::vector<BigInt>> solve_mod(const IntMatrix &A, const std::vector<BigInt> &b,
                                             const BigInt &m);

// number when it fits in int64, decimal string otherwise
nlohmann::ordered_json big_to_json(const BigInt &x);
nlohmann::ordered_json to_json(const IntMatrix &A);
IntMatrix matrix_from_json(const nlohmann::ordered_json &j);
nlohmann::ordered_json to_json(const FinDiagGroupDesc &g);

} // namespace corb
