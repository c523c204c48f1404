#ifndef PUNIP_LINALG_HPP
#define PUNIP_LINALG_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace punip {

using FpVector = std::vector<std::uint8_t>;

/// Solutions of an F_p-linear system: particular + span(basis), or empty.
struct AffineSolutionSpace {
  int p = 2;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  /// Free variables set to zero; nullopt when the system is inconsistent.
  std::optional<FpVector> particular;
  /// One vector per free column (that column 1, other free columns 0).
  std::vector<FpVector> basis;
  std::vector<std::size_t> free_columns;

  bool consistent() const noexcept { return particular.has_value(); }
  std::size_t dim() const noexcept { return basis.size(); }
  /// Exact membership of a full assignment.
  bool contains(const FpVector& x) const;
  /// particular + sum coeffs[k] * basis[k].
  FpVector point(const std::vector<int>& coeffs) const;
};

/// Sparse row-by-row elimination over F_p with deterministic pivots
/// (leftmost nonzero column of each incoming row after reduction).
class FpSystem {
 public:
  FpSystem(int p, std::size_t unknowns);

  /// Row given as (column, coefficient) pairs; repeated columns are summed.
  void add_row(const std::vector<std::pair<std::uint32_t, int>>& entries, int rhs = 0);
  void add_dense_row(const std::vector<int>& row, int rhs = 0);

  std::size_t unknowns() const noexcept { return n_; }
  std::size_t equations() const noexcept { return equations_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  bool inconsistent() const noexcept { return inconsistent_; }

  AffineSolutionSpace solve() const;

 private:
  struct Row {
    std::vector<std::uint32_t> cols;
    std::vector<std::uint8_t> vals;
    std::uint8_t rhs = 0;
  };

  void insert(std::vector<int>& dense, int rhs);

  int p_;
  std::size_t n_;
  std::size_t equations_ = 0;
  bool inconsistent_ = false;
  std::vector<Row> rows_;
  /// pivot_of_[col] = row index or -1.
  std::vector<int> pivot_of_;
  std::vector<std::uint32_t> pivots_;
  std::vector<int> scratch_;
};

/// Dense convenience wrapper.
AffineSolutionSpace solve_fp_linear(int p, const std::vector<std::vector<int>>& matrix, const std::vector<int>& rhs,
                                    std::size_t unknowns);

}  // namespace punip

#endif  // PUNIP_LINALG_HPP
