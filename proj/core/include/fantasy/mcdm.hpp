#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fantasy {

/// Dense row-major matrix used for decision matrices and pairwise
/// comparison matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Orientation { Benefit, Cost };

struct TopsisResult {
  /// Alternative indices, best first.
  std::vector<std::size_t> order;
  /// Closeness coefficient per alternative (indexed like the matrix rows).
  std::vector<double> closeness;
};

/// TOPSIS: vector-normalise each column, apply weights, measure Euclidean
/// distance to the ideal best and worst points, and rank by
/// closeness = d_worst / (d_best + d_worst). All-zero columns normalise to 0;
/// if both distances are 0 the closeness is 0.5. Ties go to the smaller label.
/// Throws ParameterError on negative weights, weights not summing to 1, or
/// mismatched sizes.
TopsisResult topsis_rank(const Matrix& decision, std::span<const Orientation> orientations,
                         std::span<const double> weights, std::span<const std::string> labels);

struct AhpWeights {
  std::vector<double> weights;
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  /// CI / RI with Saaty's random index; 0 for n <= 2.
  double consistency_ratio = 0.0;
};

/// Principal eigenvector of a positive reciprocal pairwise matrix by power
/// iteration (relative tolerance 1e-10, at most 10,000 steps), normalised to
/// sum to 1. Throws ParameterError if the matrix is not square, not positive,
/// or not reciprocal.
AhpWeights ahp_weights(const Matrix& pairwise);

/// Entropy weighting: p_ij = x_ij / sum_i x_ij, e_j = -sum p ln p / ln m,
/// w_j proportional to 1 - e_j. A column with zero sum carries no information
/// and is treated as e_j = 1. If every e_j is 1 the weights are uniform.
/// Throws ParameterError on negative entries.
std::vector<double> shannon_entropy_weights(const Matrix& decision);

/// Normalised element-wise mean of two weight vectors.
std::vector<double> synthesis_weights(std::span<const double> a, std::span<const double> b);

}  // namespace fantasy
