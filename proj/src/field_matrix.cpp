#include "dindex/field_matrix.hpp"

namespace dindex {

FieldMatrix sigma_apply(const FieldMatrix& m, const DifferenceField& field, unsigned times) {
  FieldMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = sigma_apply(m(i, j), field, times);
  }
  return out;
}

std::vector<std::vector<std::string>> entry_strings(const FieldMatrix& m, const DifferenceField& field) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = field.to_string(m(i, j));
  }
  return out;
}

}  // namespace dindex
