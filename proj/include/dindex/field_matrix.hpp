#ifndef DINDEX_FIELD_MATRIX_HPP
#define DINDEX_FIELD_MATRIX_HPP

#include "dindex/dfield.hpp"

#include <string>
#include <vector>

namespace dindex {

/// Dense row-major matrix over a difference field.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), entries_(rows * cols, FieldElement(nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<FieldElement>& entries() const { return entries_; }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> entries_;
};

/// Values of a symbolic matrix at a specialization.
using EvaluatedMatrix = FieldMatrix;

/// Entrywise sigma^m.
FieldMatrix sigma_apply(const FieldMatrix& m, const DifferenceField& field, unsigned times);

/// Entry strings, row-major.
std::vector<std::vector<std::string>> entry_strings(const FieldMatrix& m, const DifferenceField& field);

}  // namespace dindex

#endif  // DINDEX_FIELD_MATRIX_HPP
