#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "sensorpress/autoencoder.hpp"
#include "sensorpress/errors.hpp"
#include "sensorpress/sphering.hpp"
#include "sensorpress/types.hpp"

namespace sensorpress {

// Residual code: indicator over all L positions plus the residual values that
// exceeded the bound, in increasing index order, as 32-bit floats.
struct ResidualCode {
  std::vector<bool> indicator;
  std::vector<float> values;

  std::size_t popcount() const;
  bool consistent() const { return popcount() == values.size(); }
};

// The transmitted signal (y, residual code, m).
struct CompressedFrame {
  VectorXf y;
  ResidualCode residuals;  // indicator length is L
  float m = 0.0f;

  Index input_size() const { return static_cast<Index>(residuals.indicator.size()); }
  Index code_size() const { return y.size(); }
};

// Error bound in physical units; unbounded disables the residual stage.
class ErrorBoundConfig {
 public:
  static ErrorBoundConfig bounded(double epsilon);
  static ErrorBoundConfig unbounded() { return ErrorBoundConfig(); }

  bool is_bounded() const { return epsilon_.has_value(); }
  double epsilon() const { return *epsilon_; }

 private:
  ErrorBoundConfig() = default;
  std::optional<double> epsilon_;
};

ResidualCode residual_code(const VectorXf& r, double epsilon);
VectorXf residual_expand(const ResidualCode& code, Index length);

// The receiver's reconstruction of the data vector from the transmitted pair
// (y, m): decode, then invert the sphering map. Fixed-order scalar arithmetic;
// the compressor runs this exact routine to derive residuals, so both sides
// agree bit for bit.
template <class Scalar>
VecX<Scalar> reconstruct_from_code(const VecX<Scalar>& y, Scalar m,
                                   const AutoencoderParams<Scalar>& params) {
  return denormalize<Scalar>(decode(y, params), m, params.sigma);
}

// The full transmit-side data path over any scalar type: mean, sphering,
// encoding, and the residual against the receiver's own reconstruction. The
// path uses additions, subtractions, multiplications, divisions, comparisons
// and exp only.
template <class Scalar>
struct CompressionStages {
  Scalar mean{};
  VecX<Scalar> code;            // y
  VecX<Scalar> reconstruction;  // p, as the receiver will compute it
  VecX<Scalar> residual;        // x - p
};

template <class Scalar>
CompressionStages<Scalar> compression_stages(const VecX<Scalar>& x,
                                             const AutoencoderParams<Scalar>& params) {
  CompressionStages<Scalar> stages;
  stages.mean = vector_mean(x);
  VecX<Scalar> d;
  normalize_about(x, stages.mean, params.sigma, d);
  stages.code = encode(d, params);
  stages.reconstruction = reconstruct_from_code(stages.code, stages.mean, params);
  stages.residual.resize(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    stages.residual[i] = x[i] - stages.reconstruction[i];
  }
  return stages;
}

// Online compression: (y, residual code, m) such that the reconstruction at
// the receiver differs from x by at most epsilon per entry.
CompressedFrame compress(const VectorXf& x, const AutoencoderParams<float>& params,
                         const ErrorBoundConfig& cfg);

// Online decompression: reconstruct, then apply the residual correction.
VectorXf decompress(const CompressedFrame& frame, const AutoencoderParams<float>& params);

// Wire format (little-endian): magic "CFR1", u32 L, u32 K, f32 m, K x f32 y,
// ceil(L/8) indicator bytes (bit j of byte j/8, LSB first), then popcount
// f32 residual values in index order.
std::vector<std::uint8_t> serialize(const CompressedFrame& frame);
CompressedFrame deserialize(const std::vector<std::uint8_t>& bytes, Index length, Index code_size);

std::size_t serialized_size(Index length, Index code_size, std::size_t residual_count);
std::size_t serialized_size(const CompressedFrame& frame);

// Frames are self-delimiting, so files are plain concatenations.
void append_frame(std::ostream& out, const CompressedFrame& frame);
std::vector<CompressedFrame> read_frames(const std::string& path, Index length, Index code_size);

}  // namespace sensorpress
