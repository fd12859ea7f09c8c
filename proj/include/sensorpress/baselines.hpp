#pragma once

#include <vector>

#include "sensorpress/types.hpp"

namespace sensorpress {

// ---- Lightweight temporal compression (piecewise-linear, error-bounded) ----

// One straight-line piece; consecutive segments share endpoints.
struct LtcSegment {
  Index start_index = 0;
  Index end_index = 0;
  double start_value = 0.0;
  double end_value = 0.0;
};

// Greedy single-pass swing filter: a segment grows while some line from its
// origin stays within +-epsilon of every covered point; when the feasible
// cone closes, the segment is emitted and the next one starts at its endpoint.
// Every emitted piece is verified against the decompressor's own
// interpolation arithmetic, so the pointwise bound holds exactly.
std::vector<LtcSegment> ltc_compress(const VectorXd& x, double epsilon);

VectorXd ltc_decompress(const std::vector<LtcSegment>& segments, Index length);

// Transmitted size: one (index, value) knot per segment boundary.
std::size_t ltc_bits(const std::vector<LtcSegment>& segments);

// ---- Piecewise aggregate approximation ----

// Frame-wise means; a non-divisible tail frame is shorter and averages only
// the available points.
VectorXd paa_compress(const VectorXd& x, Index frame);
VectorXd paa_decompress(const VectorXd& levels, Index frame, Index length);

// ---- Principal component analysis ----

struct PcaBasis {
  VectorXd mean;        // L
  MatrixXd components;  // K x L, orthonormal rows, leading eigenvectors first
};

PcaBasis pca_fit(const VectorList& training, Index components);
VectorXd pca_compress(const VectorXd& x, const PcaBasis& basis);
VectorXd pca_decompress(const VectorXd& scores, const PcaBasis& basis);

// ---- Discrete cosine transform, top-K coefficient selection ----

// Kept coefficients as 32-bit floats plus an index bitmask over L; the same
// popcount contract as the residual code.
struct TransformCode {
  std::vector<bool> indicator;
  std::vector<float> values;

  std::size_t popcount() const;
  bool consistent() const { return popcount() == values.size(); }
};

// Orthonormal type-II DCT basis (L x L); row k holds the k-th basis function.
MatrixXd dct_basis(Index length);

// All L coefficients of the orthonormal transform.
VectorXd dct_forward(const VectorXd& x, const MatrixXd& basis);

// Keeps the K largest-magnitude coefficients (ties resolve to the lower
// index). The basis overloads avoid rebuilding the L x L matrix per call.
TransformCode dct_compress(const VectorXd& x, Index keep, const MatrixXd& basis);
TransformCode dct_compress(const VectorXd& x, Index keep);
VectorXd dct_decompress(const TransformCode& code, const MatrixXd& basis);
VectorXd dct_decompress(const TransformCode& code, Index length);

std::size_t transform_bits(const TransformCode& code);

}  // namespace sensorpress
