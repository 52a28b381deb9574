#include "fantasy/mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "fantasy/errors.hpp"

namespace fantasy {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ParameterError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

TopsisResult topsis_rank(const Matrix& x, std::span<const Orientation> orientations,
                         std::span<const double> weights, std::span<const std::string> labels) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  if (orientations.size() != n || weights.size() != n) {
    throw ParameterError("topsis: orientations and weights must match the criteria count");
  }
  if (labels.size() != m) throw ParameterError("topsis: one label per alternative required");
  double weight_sum = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw ParameterError(fmt::format("topsis: negative weight {}", w));
    weight_sum += w;
  }
  if (n > 0 && std::abs(weight_sum - 1.0) > 1e-9) {
    throw ParameterError(fmt::format("topsis: weights sum to {}, want 1", weight_sum));
  }

  Matrix v(m, n);
  std::vector<double> best(n), worst(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0;
    for (std::size_t i = 0; i < m; ++i) norm += x(i, j) * x(i, j);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i) v(i, j) = norm > 0 ? weights[j] * x(i, j) / norm : 0.0;
    double hi = m ? v(0, j) : 0.0;
    double lo = hi;
    for (std::size_t i = 1; i < m; ++i) {
      hi = std::max(hi, v(i, j));
      lo = std::min(lo, v(i, j));
    }
    const bool benefit = orientations[j] == Orientation::Benefit;
    best[j] = benefit ? hi : lo;
    worst[j] = benefit ? lo : hi;
  }

  TopsisResult result;
  result.closeness.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double d_best = 0;
    double d_worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
      d_best += (v(i, j) - best[j]) * (v(i, j) - best[j]);
      d_worst += (v(i, j) - worst[j]) * (v(i, j) - worst[j]);
    }
    d_best = std::sqrt(d_best);
    d_worst = std::sqrt(d_worst);
    result.closeness[i] = (d_best + d_worst) > 0 ? d_worst / (d_best + d_worst) : 0.5;
  }
  result.order.resize(m);
  std::iota(result.order.begin(), result.order.end(), std::size_t{0});
  std::sort(result.order.begin(), result.order.end(), [&](std::size_t a, std::size_t b) {
    if (result.closeness[a] != result.closeness[b]) return result.closeness[a] > result.closeness[b];
    return labels[a] < labels[b];
  });
  return result;
}

namespace {

// Saaty's random consistency index for n = 1..10.
constexpr double kRandomIndex[] = {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};

}  // namespace

AhpWeights ahp_weights(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw ParameterError("ahp: pairwise matrix must be square and non-empty");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(a(i, j) > 0) || !std::isfinite(a(i, j))) {
        throw ParameterError(fmt::format("ahp: entry ({},{}) is not positive", i, j));
      }
      if (std::abs(a(i, j) * a(j, i) - 1.0) > 1e-9) {
        throw ParameterError(fmt::format("ahp: entries ({},{}) and ({},{}) are not reciprocal", i, j, j, i));
      }
    }
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int iter = 0; iter < 10000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * w[j];
      next[i] = s;
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0;
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - w[i]));
      scale = std::max(scale, std::abs(next[i]));
    }
    w.swap(next);
    if (delta <= 1e-10 * scale) break;
  }

  AhpWeights out;
  double lambda = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * w[j];
    lambda += s / w[i];
  }
  out.lambda_max = lambda / static_cast<double>(n);
  out.consistency_index = n > 1 ? (out.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1) : 0.0;
  const double ri = n <= 10 ? kRandomIndex[n - 1] : kRandomIndex[9];
  out.consistency_ratio = ri > 0 ? out.consistency_index / ri : 0.0;
  out.weights = std::move(w);
  return out;
}

std::vector<double> shannon_entropy_weights(const Matrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  std::vector<double> diversity(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (x(i, j) < 0) throw ParameterError(fmt::format("entropy: negative entry at ({},{})", i, j));
      col += x(i, j);
    }
    if (col <= 0 || m < 2) continue;
    double h = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double p = x(i, j) / col;
      if (p > 0) h -= p * std::log(p);
    }
    const double e = h / std::log(static_cast<double>(m));
    // A constant column has e = 1 up to rounding.
    diversity[j] = 1.0 - e > 1e-12 ? 1.0 - e : 0.0;
  }
  const double total = std::accumulate(diversity.begin(), diversity.end(), 0.0);
  if (total <= 0) return std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  for (double& d : diversity) d /= total;
  return diversity;
}

std::vector<double> synthesis_weights(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("synthesis: weight vectors differ in length");
  std::vector<double> out(a.size());
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = 0.5 * (a[i] + b[i]);
    total += out[i];
  }
  if (total > 0) {
    for (double& w : out) w /= total;
  }
  return out;
}

}  // namespace fantasy
