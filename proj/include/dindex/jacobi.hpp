#ifndef DINDEX_JACOBI_HPP
#define DINDEX_JACOBI_HPP

#include "dindex/field_matrix.hpp"
#include "dindex/sigma_poly.hpp"

#include <vector>

namespace dindex {

/// Dense row-major matrix of difference polynomials; absent entries are 0.
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  SymbolicMatrix(std::size_t rows, std::size_t cols, std::size_t coeff_nvars)
      : rows_(rows), cols_(cols), entries_(rows * cols, SigmaPolynomial(coeff_nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  SigmaPolynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const SigmaPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Copies `block` with its top-left corner at (row, col).
  void place(const SymbolicMatrix& block, std::size_t row, std::size_t col);

  friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SigmaPolynomial> entries_;
};

/// Entrywise transform by m.
SymbolicMatrix transform(const SymbolicMatrix& m, const DifferenceField& field, unsigned times);

/// [dF/dY^(q)] for q = 0..e, each r x n.
std::vector<SymbolicMatrix> jacobian_blocks(const SystemSpec& s);

/// J_k: kr x (k+e)n, block row b holds the transforms by b of the base
/// blocks starting at column block b. Requires k >= 1.
SymbolicMatrix build_Jk(const SystemSpec& s, unsigned k);
SymbolicMatrix build_Jk(const SystemSpec& s, const std::vector<SymbolicMatrix>& blocks, unsigned k);

/// J_{k,i}: kr x kn lower block-triangular; block (b, c) with b >= c is the
/// base block of order e-b+c transformed by i-e+1+b (zero when e-b+c < 0).
/// Throws IndexTooSmall when i < e-1.
SymbolicMatrix build_Jki(const SystemSpec& s, unsigned k, unsigned i);
SymbolicMatrix build_Jki(const SystemSpec& s, const std::vector<SymbolicMatrix>& blocks, unsigned k, unsigned i);

/// E_1..E_t, all p x q over one difference field.
struct BlockFamily {
  DifferenceField field;
  std::vector<FieldMatrix> blocks;

  std::size_t t() const { return blocks.size(); }
  std::size_t p() const { return blocks.empty() ? 0 : blocks.front().rows(); }
  std::size_t q() const { return blocks.empty() ? 0 : blocks.front().cols(); }
};

/// M_k: kp x (k+t-1)q, row block b = (E_1^(b) ... E_t^(b)) from column block b.
FieldMatrix build_Mk(const BlockFamily& family, unsigned k);

/// N_k: kp x kq, block (b, c) = E_{b-c+1}^(b) when 1 <= b-c+1 <= t.
FieldMatrix build_Nk(const BlockFamily& family, unsigned k);

}  // namespace dindex

#endif  // DINDEX_JACOBI_HPP
