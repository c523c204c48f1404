#include "punip/linalg.hpp"

#include <algorithm>

#include "punip/error.hpp"
#include "punip/mpoly.hpp"

namespace punip {

bool AffineSolutionSpace::contains(const FpVector& x) const {
  if (!particular || x.size() != unknowns) return false;
  std::vector<int> d(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) d[i] = fp::sub(x[i], (*particular)[i], p);
  std::vector<int> acc(unknowns, 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int c = d[free_columns[k]];
    if (!c) continue;
    for (std::size_t i = 0; i < unknowns; ++i)
      if (basis[k][i]) acc[i] = (acc[i] + c * basis[k][i]) % p;
  }
  return acc == d;
}

FpVector AffineSolutionSpace::point(const std::vector<int>& coeffs) const {
  if (!particular) throw DomainError("inconsistent system has no points");
  if (coeffs.size() != basis.size()) throw DomainError("coefficient count does not match dimension");
  std::vector<int> acc(particular->begin(), particular->end());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int c = fp::reduce(coeffs[k], p);
    if (!c) continue;
    for (std::size_t i = 0; i < unknowns; ++i)
      if (basis[k][i]) acc[i] = (acc[i] + c * basis[k][i]) % p;
  }
  return FpVector(acc.begin(), acc.end());
}

FpSystem::FpSystem(int p, std::size_t unknowns) : p_(p), n_(unknowns), pivot_of_(unknowns, -1), scratch_(unknowns, 0) {}

void FpSystem::add_row(const std::vector<std::pair<std::uint32_t, int>>& entries, int rhs) {
  ++equations_;
  for (const auto& [c, v] : entries) {
    if (c >= n_) throw DomainError("column index out of range");
    scratch_[c] = (scratch_[c] + fp::reduce(v, p_)) % p_;
  }
  insert(scratch_, fp::reduce(rhs, p_));
}

void FpSystem::add_dense_row(const std::vector<int>& row, int rhs) {
  if (row.size() != n_) throw DomainError("row length does not match unknown count");
  ++equations_;
  for (std::size_t c = 0; c < n_; ++c) scratch_[c] = fp::reduce(row[c], p_);
  insert(scratch_, fp::reduce(rhs, p_));
}

void FpSystem::insert(std::vector<int>& dense, int rhs) {
  std::size_t lead = n_;
  for (std::size_t c = 0; c < n_; ++c) {
    int v = dense[c];
    if (!v) continue;
    int r = pivot_of_[c];
    if (r < 0) {
      lead = c;
      break;
    }
    const Row& row = rows_[static_cast<std::size_t>(r)];
    int f = p_ - v;
    for (std::size_t k = 0; k < row.cols.size(); ++k) dense[row.cols[k]] = (dense[row.cols[k]] + f * row.vals[k]) % p_;
    rhs = (rhs + f * row.rhs) % p_;
  }
  if (lead == n_) {
    if (rhs) inconsistent_ = true;
    return;
  }
  int inv = fp::inv(dense[lead], p_);
  Row row;
  for (std::size_t c = lead; c < n_; ++c) {
    if (!dense[c]) continue;
    row.cols.push_back(static_cast<std::uint32_t>(c));
    row.vals.push_back(static_cast<std::uint8_t>(dense[c] * inv % p_));
    dense[c] = 0;
  }
  row.rhs = static_cast<std::uint8_t>(rhs * inv % p_);
  pivot_of_[lead] = static_cast<int>(rows_.size());
  pivots_.push_back(static_cast<std::uint32_t>(lead));
  rows_.push_back(std::move(row));
}

AffineSolutionSpace FpSystem::solve() const {
  AffineSolutionSpace out;
  out.p = p_;
  out.unknowns = n_;
  out.equations = equations_;
  out.rank = pivots_.size();
  if (inconsistent_) return out;

  // Back-substitution into reduced row echelon form, highest pivot first.
  std::vector<Row> reduced(rows_.size());
  std::vector<std::uint32_t> order = pivots_;
  std::sort(order.begin(), order.end(), std::greater<>());
  std::vector<int> dense(n_, 0);
  for (auto col : order) {
    const Row& src = rows_[static_cast<std::size_t>(pivot_of_[col])];
    for (std::size_t k = 0; k < src.cols.size(); ++k) dense[src.cols[k]] = src.vals[k];
    int rhs = src.rhs;
    for (std::size_t c = col + 1; c < n_; ++c) {
      int v = dense[c];
      if (!v || pivot_of_[c] < 0) continue;
      const Row& piv = reduced[static_cast<std::size_t>(pivot_of_[c])];
      int f = p_ - v;
      for (std::size_t k = 0; k < piv.cols.size(); ++k) dense[piv.cols[k]] = (dense[piv.cols[k]] + f * piv.vals[k]) % p_;
      rhs = (rhs + f * piv.rhs) % p_;
    }
    Row& dst = reduced[static_cast<std::size_t>(pivot_of_[col])];
    for (std::size_t c = col; c < n_; ++c) {
      if (!dense[c]) continue;
      dst.cols.push_back(static_cast<std::uint32_t>(c));
      dst.vals.push_back(static_cast<std::uint8_t>(dense[c]));
      dense[c] = 0;
    }
    dst.rhs = static_cast<std::uint8_t>(rhs);
  }

  FpVector particular(n_, 0);
  std::vector<int> free_index(n_, -1);
  for (std::size_t c = 0; c < n_; ++c) {
    if (pivot_of_[c] >= 0) continue;
    free_index[c] = static_cast<int>(out.free_columns.size());
    out.free_columns.push_back(c);
  }
  out.basis.assign(out.free_columns.size(), FpVector(n_, 0));
  for (std::size_t k = 0; k < out.free_columns.size(); ++k) out.basis[k][out.free_columns[k]] = 1;
  for (auto col : pivots_) {
    const Row& row = reduced[static_cast<std::size_t>(pivot_of_[col])];
    particular[col] = row.rhs;
    for (std::size_t k = 1; k < row.cols.size(); ++k) {
      int fi = free_index[row.cols[k]];
      out.basis[static_cast<std::size_t>(fi)][col] = static_cast<std::uint8_t>(fp::neg(row.vals[k], p_));
    }
  }
  out.particular = std::move(particular);
  return out;
}

AffineSolutionSpace solve_fp_linear(int p, const std::vector<std::vector<int>>& matrix, const std::vector<int>& rhs,
                                    std::size_t unknowns) {
  if (!is_prime(p)) throw DomainError("modulus must be prime");
  if (!rhs.empty() && rhs.size() != matrix.size()) throw DomainError("right-hand side length does not match rows");
  FpSystem sys(p, unknowns);
  for (std::size_t r = 0; r < matrix.size(); ++r) sys.add_dense_row(matrix[r], rhs.empty() ? 0 : rhs[r]);
  return sys.solve();
}

}  // namespace punip
