#include "dindex/jacobi.hpp"

#include "dindex/error.hpp"

namespace dindex {

void SymbolicMatrix::place(const SymbolicMatrix& block, std::size_t row, std::size_t col) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) (*this)(row + i, col + j) = block(i, j);
  }
}

SymbolicMatrix transform(const SymbolicMatrix& m, const DifferenceField& field, unsigned times) {
  SymbolicMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = transform(m(i, j), field, times);
  }
  return out;
}

std::vector<SymbolicMatrix> jacobian_blocks(const SystemSpec& s) {
  const std::size_t nk = s.field.nvars();
  std::vector<SymbolicMatrix> blocks;
  for (unsigned q = 0; q <= s.e; ++q) {
    SymbolicMatrix b(s.r(), s.n(), nk);
    for (std::size_t i = 0; i < s.r(); ++i) {
      for (std::size_t j = 0; j < s.n(); ++j) {
        b(i, j) = partial_derivative(s.equations[i], VarRef{static_cast<unsigned>(j), q});
      }
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

SymbolicMatrix build_Jk(const SystemSpec& s, unsigned k) {
  return build_Jk(s, jacobian_blocks(s), k);
}

SymbolicMatrix build_Jk(const SystemSpec& s, const std::vector<SymbolicMatrix>& blocks, unsigned k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "J_k requires k >= 1");
  const std::size_t r = s.r();
  const std::size_t n = s.n();
  SymbolicMatrix out(k * r, (k + s.e) * n, s.field.nvars());
  for (unsigned b = 0; b < k; ++b) {
    for (unsigned q = 0; q <= s.e; ++q) out.place(transform(blocks[q], s.field, b), b * r, (b + q) * n);
  }
  return out;
}

SymbolicMatrix build_Jki(const SystemSpec& s, unsigned k, unsigned i) {
  return build_Jki(s, jacobian_blocks(s), k, i);
}

SymbolicMatrix build_Jki(const SystemSpec& s, const std::vector<SymbolicMatrix>& blocks, unsigned k, unsigned i) {
  if (i + 1 < s.e) {
    throw Error(Errc::IndexTooSmall,
                "i = " + std::to_string(i) + " is below e-1 = " + std::to_string(s.e - 1));
  }
  const std::size_t r = s.r();
  const std::size_t n = s.n();
  SymbolicMatrix out(k * r, k * n, s.field.nvars());
  const unsigned base_shift = i + 1 - s.e;
  for (unsigned b = 0; b < k; ++b) {
    for (unsigned c = 0; c <= b; ++c) {
      const long q = static_cast<long>(s.e) - static_cast<long>(b) + static_cast<long>(c);
      if (q < 0) continue;
      out.place(transform(blocks[static_cast<std::size_t>(q)], s.field, base_shift + b), b * r, c * n);
    }
  }
  return out;
}

namespace {

std::vector<std::vector<FieldMatrix>> shifted_blocks(const BlockFamily& family, unsigned k) {
  std::vector<std::vector<FieldMatrix>> out;
  out.reserve(k);
  if (k > 0) out.push_back(family.blocks);
  for (unsigned b = 1; b < k; ++b) {
    std::vector<FieldMatrix> next;
    for (const auto& m : out.back()) next.push_back(sigma_apply(m, family.field, 1));
    out.push_back(std::move(next));
  }
  return out;
}

void place(FieldMatrix& dst, const FieldMatrix& block, std::size_t row, std::size_t col) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) dst(row + i, col + j) = block(i, j);
  }
}

}  // namespace

FieldMatrix build_Mk(const BlockFamily& family, unsigned k) {
  const std::size_t t = family.t();
  const std::size_t p = family.p();
  const std::size_t q = family.q();
  const std::size_t cols = t == 0 ? 0 : (k + t - 1) * q;
  FieldMatrix out(k * p, cols, family.field.nvars());
  const auto shifted = shifted_blocks(family, k);
  for (unsigned b = 0; b < k; ++b) {
    for (std::size_t j = 0; j < t; ++j) place(out, shifted[b][j], b * p, (b + j) * q);
  }
  return out;
}

FieldMatrix build_Nk(const BlockFamily& family, unsigned k) {
  const std::size_t t = family.t();
  const std::size_t p = family.p();
  const std::size_t q = family.q();
  FieldMatrix out(k * p, k * q, family.field.nvars());
  const auto shifted = shifted_blocks(family, k);
  for (unsigned b = 0; b < k; ++b) {
    for (unsigned c = 0; c <= b; ++c) {
      const std::size_t idx = b - c;  // E_{b-c+1}, 0-based
      if (idx < t) place(out, shifted[b][idx], b * p, c * q);
    }
  }
  return out;
}

}  // namespace dindex
