#include "sensorpress/baselines.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sensorpress/errors.hpp"

namespace sensorpress {

namespace {

double lerp_at(const LtcSegment& seg, Index t) {
  if (seg.end_index == seg.start_index) return seg.start_value;
  const double span = static_cast<double>(seg.end_index - seg.start_index);
  return seg.start_value +
         (seg.end_value - seg.start_value) * static_cast<double>(t - seg.start_index) / span;
}

// True when every covered point lies within epsilon of the segment, measured
// with the decompressor's interpolation formula.
bool segment_within_bound(const LtcSegment& seg, const VectorXd& x, double epsilon) {
  for (Index t = seg.start_index; t <= seg.end_index; ++t) {
    if (std::abs(x[t] - lerp_at(seg, t)) > epsilon) return false;
  }
  return true;
}

}  // namespace

std::vector<LtcSegment> ltc_compress(const VectorXd& x, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("ltc_compress: epsilon must be >= 0");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("ltc_compress: need at least 2 samples");
  }

  std::vector<LtcSegment> segments;
  Index origin = 0;
  double origin_value = x[0];

  // Emits [origin, end] with the endpoint implied by `slope`, clamped into the
  // +-epsilon box around the data point; shrinks the segment in the rare case
  // interpolation rounding pushes an interior point out of bound.
  const auto emit = [&](Index end, double slope) {
    for (;;) {
      LtcSegment seg;
      seg.start_index = origin;
      seg.start_value = origin_value;
      seg.end_index = end;
      const double projected =
          origin_value + slope * static_cast<double>(end - origin);
      seg.end_value = std::clamp(projected, x[end] - epsilon, x[end] + epsilon);
      if (end - origin == 1 || segment_within_bound(seg, x, epsilon)) {
        segments.push_back(seg);
        origin = seg.end_index;
        origin_value = seg.end_value;
        return;
      }
      --end;
    }
  };

  double slope_lo = -std::numeric_limits<double>::infinity();
  double slope_hi = std::numeric_limits<double>::infinity();
  for (Index t = 1; t < x.size(); ++t) {
    const double dt = static_cast<double>(t - origin);
    const double lo = (x[t] - epsilon - origin_value) / dt;
    const double hi = (x[t] + epsilon - origin_value) / dt;
    const double new_lo = std::max(slope_lo, lo);
    const double new_hi = std::min(slope_hi, hi);
    if (new_lo <= new_hi) {
      slope_lo = new_lo;
      slope_hi = new_hi;
      continue;
    }
    emit(t - 1, 0.5 * (slope_lo + slope_hi));
    // Reopen the cone from the fresh origin toward the point that closed it.
    const double ndt = static_cast<double>(t - origin);
    slope_lo = (x[t] - epsilon - origin_value) / ndt;
    slope_hi = (x[t] + epsilon - origin_value) / ndt;
  }
  emit(x.size() - 1, 0.5 * (slope_lo + slope_hi));
  return segments;
}

VectorXd ltc_decompress(const std::vector<LtcSegment>& segments, Index length) {
  if (segments.empty()) {
    throw std::invalid_argument("ltc_decompress: no segments");
  }
  if (segments.front().start_index != 0 || segments.back().end_index != length - 1) {
    throw std::invalid_argument("ltc_decompress: segments do not cover 0..L-1");
  }
  VectorXd out(length);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const LtcSegment& seg = segments[s];
    if (seg.end_index <= seg.start_index) {
      throw std::invalid_argument("ltc_decompress: degenerate segment");
    }
    if (s > 0 && segments[s - 1].end_index != seg.start_index) {
      throw std::invalid_argument("ltc_decompress: segments are not contiguous");
    }
    for (Index t = seg.start_index; t <= seg.end_index; ++t) {
      out[t] = lerp_at(seg, t);
    }
  }
  return out;
}

std::size_t ltc_bits(const std::vector<LtcSegment>& segments) {
  // Shared endpoints: segments.size() + 1 knots, each an (u32 index, f32 value).
  return (segments.size() + 1) * 64;
}

VectorXd paa_compress(const VectorXd& x, Index frame) {
  if (frame <= 0 || frame > x.size()) {
    throw std::invalid_argument("paa_compress: frame must lie in 1..L");
  }
  const Index levels = (x.size() + frame - 1) / frame;
  VectorXd out(levels);
  for (Index f = 0; f < levels; ++f) {
    const Index begin = f * frame;
    const Index count = std::min(frame, x.size() - begin);
    out[f] = x.segment(begin, count).mean();
  }
  return out;
}

VectorXd paa_decompress(const VectorXd& levels, Index frame, Index length) {
  if (frame <= 0) {
    throw std::invalid_argument("paa_decompress: frame must be positive");
  }
  if (levels.size() != (length + frame - 1) / frame) {
    throw std::invalid_argument("paa_decompress: level count does not match length");
  }
  VectorXd out(length);
  for (Index t = 0; t < length; ++t) {
    out[t] = levels[t / frame];
  }
  return out;
}

PcaBasis pca_fit(const VectorList& training, Index components) {
  if (training.empty()) {
    throw std::invalid_argument("pca_fit: empty training set");
  }
  const Index l_dim = training.front().size();
  if (components <= 0 || components > l_dim) {
    throw std::invalid_argument("pca_fit: component count must lie in 1..L");
  }
  if (static_cast<Index>(training.size()) < components + 1) {
    throw std::invalid_argument("pca_fit: need at least K+1 training vectors");
  }

  VectorXd mean = VectorXd::Zero(l_dim);
  for (const VectorXd& x : training) {
    if (x.size() != l_dim) {
      throw std::invalid_argument("pca_fit: mixed vector lengths");
    }
    mean += x;
  }
  mean /= static_cast<double>(training.size());

  MatrixXd covariance = MatrixXd::Zero(l_dim, l_dim);
  for (const VectorXd& x : training) {
    const VectorXd c = x - mean;
    covariance.noalias() += c * c.transpose();
  }
  covariance /= static_cast<double>(training.size() - 1);

  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw DataError("pca_fit: eigendecomposition failed");
  }
  const VectorXd eigenvalues = solver.eigenvalues();  // ascending
  const double rank_floor = std::max(eigenvalues[l_dim - 1], 0.0) * 1e-12;
  Index rank = 0;
  for (Index i = 0; i < l_dim; ++i) {
    if (eigenvalues[i] > rank_floor) ++rank;
  }
  if (components > rank) {
    throw DataError("pca_fit: requested components exceed the data rank");
  }

  PcaBasis basis;
  basis.mean = mean;
  basis.components.resize(components, l_dim);
  for (Index k = 0; k < components; ++k) {
    basis.components.row(k) = solver.eigenvectors().col(l_dim - 1 - k).transpose();
  }
  return basis;
}

VectorXd pca_compress(const VectorXd& x, const PcaBasis& basis) {
  if (x.size() != basis.mean.size()) {
    throw std::invalid_argument("pca_compress: length mismatch");
  }
  return basis.components * (x - basis.mean);
}

VectorXd pca_decompress(const VectorXd& scores, const PcaBasis& basis) {
  if (scores.size() != basis.components.rows()) {
    throw std::invalid_argument("pca_decompress: score length mismatch");
  }
  return basis.mean + basis.components.transpose() * scores;
}

std::size_t TransformCode::popcount() const {
  std::size_t n = 0;
  for (bool bit : indicator) n += bit ? 1 : 0;
  return n;
}

MatrixXd dct_basis(Index length) {
  if (length <= 0) {
    throw std::invalid_argument("dct_basis: length must be positive");
  }
  MatrixXd basis(length, length);
  const double ld = static_cast<double>(length);
  for (Index k = 0; k < length; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / ld);
    for (Index n = 0; n < length; ++n) {
      basis(k, n) =
          scale * std::cos(std::numbers::pi * (static_cast<double>(n) + 0.5) *
                           static_cast<double>(k) / ld);
    }
  }
  return basis;
}

VectorXd dct_forward(const VectorXd& x, const MatrixXd& basis) {
  if (basis.rows() != x.size() || basis.cols() != x.size()) {
    throw std::invalid_argument("dct_forward: basis does not match the vector length");
  }
  return basis * x;
}

TransformCode dct_compress(const VectorXd& x, Index keep, const MatrixXd& basis) {
  if (keep <= 0 || keep > x.size()) {
    throw std::invalid_argument("dct_compress: keep count must lie in 1..L");
  }
  const VectorXd coeffs = dct_forward(x, basis);

  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(coeffs[a]);
    const double mb = std::abs(coeffs[b]);
    return ma != mb ? ma > mb : a < b;
  });

  TransformCode code;
  code.indicator.assign(static_cast<std::size_t>(x.size()), false);
  for (Index i = 0; i < keep; ++i) {
    code.indicator[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  }
  for (Index j = 0; j < x.size(); ++j) {
    if (code.indicator[static_cast<std::size_t>(j)]) {
      code.values.push_back(static_cast<float>(coeffs[j]));
    }
  }
  return code;
}

TransformCode dct_compress(const VectorXd& x, Index keep) {
  return dct_compress(x, keep, dct_basis(x.size()));
}

VectorXd dct_decompress(const TransformCode& code, const MatrixXd& basis) {
  if (!code.consistent()) {
    throw std::invalid_argument("dct_decompress: popcount does not match the value count");
  }
  const Index length = static_cast<Index>(code.indicator.size());
  if (basis.rows() != length || basis.cols() != length) {
    throw std::invalid_argument("dct_decompress: basis does not match the code length");
  }
  VectorXd spectrum = VectorXd::Zero(length);
  std::size_t next = 0;
  for (Index j = 0; j < length; ++j) {
    if (code.indicator[static_cast<std::size_t>(j)]) {
      spectrum[j] = static_cast<double>(code.values[next++]);
    }
  }
  return basis.transpose() * spectrum;
}

VectorXd dct_decompress(const TransformCode& code, Index length) {
  return dct_decompress(code, dct_basis(length));
}

std::size_t transform_bits(const TransformCode& code) {
  return 32 * code.values.size() + 8 * ((code.indicator.size() + 7) / 8);
}

}  // namespace sensorpress
