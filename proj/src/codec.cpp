#include "sensorpress/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace sensorpress {

namespace {

// Smallest achievable |x - (p + v)| over a few neighbouring float candidates
// for the stored residual. Float subtraction is exact when x and p are within
// a factor of two of each other (the usual case for in-range sensor data), so
// this normally returns the plain difference untouched; the probe only matters
// when the subtraction itself rounded.
float best_stored_residual(float x, float p, float candidate, double epsilon) {
  const auto err = [&](float v) {
    return std::abs(static_cast<double>(x) - static_cast<double>(p + v));
  };
  float best = candidate;
  double best_err = err(candidate);
  for (int step = -2; step <= 2; ++step) {
    if (step == 0 || best_err == 0.0) continue;
    float probe = candidate;
    for (int i = 0; i < std::abs(step); ++i) {
      probe = std::nextafterf(probe, step > 0 ? std::numeric_limits<float>::infinity()
                                              : -std::numeric_limits<float>::infinity());
    }
    // Never store a value at or below the bound: the wire invariant says every
    // transmitted residual exceeds epsilon in magnitude.
    if (!(std::abs(static_cast<double>(probe)) > epsilon)) continue;
    const double e = err(probe);
    if (e < best_err) {
      best = probe;
      best_err = e;
    }
  }
  return best;
}

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  buf.push_back(static_cast<std::uint8_t>(v & 0xff));
  buf.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  buf.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  buf.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& buf, float v) {
  put_u32(buf, std::bit_cast<std::uint32_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

// Parses one frame starting at `pos`; advances pos past it.
CompressedFrame parse_frame(const std::uint8_t* data, std::size_t size, std::size_t& pos,
                            Index length, Index code_size) {
  if (size - pos < 16) {
    throw FrameFormatError(FrameFormatError::Kind::truncated, "frame header truncated");
  }
  if (std::memcmp(data + pos, "CFR1", 4) != 0) {
    throw FrameFormatError(FrameFormatError::Kind::bad_magic, "bad frame magic");
  }
  const Index l_dim = static_cast<Index>(get_u32(data + pos + 4));
  const Index k_dim = static_cast<Index>(get_u32(data + pos + 8));
  if (l_dim != length || k_dim != code_size) {
    throw FrameFormatError(FrameFormatError::Kind::dimension_mismatch,
                           "frame dimensions do not match the expected (L, K)");
  }

  CompressedFrame frame;
  frame.m = get_f32(data + pos + 12);
  std::size_t cursor = pos + 16;

  const std::size_t y_bytes = 4 * static_cast<std::size_t>(k_dim);
  const std::size_t ind_bytes = (static_cast<std::size_t>(l_dim) + 7) / 8;
  if (size - cursor < y_bytes + ind_bytes) {
    throw FrameFormatError(FrameFormatError::Kind::truncated, "frame body truncated");
  }
  frame.y.resize(k_dim);
  for (Index k = 0; k < k_dim; ++k) {
    frame.y[k] = get_f32(data + cursor);
    cursor += 4;
  }
  frame.residuals.indicator.resize(static_cast<std::size_t>(l_dim));
  std::size_t ones = 0;
  for (Index j = 0; j < l_dim; ++j) {
    const bool bit = (data[cursor + static_cast<std::size_t>(j) / 8] >> (j % 8)) & 1u;
    frame.residuals.indicator[static_cast<std::size_t>(j)] = bit;
    ones += bit ? 1 : 0;
  }
  cursor += ind_bytes;

  if (size - cursor < 4 * ones) {
    throw FrameFormatError(FrameFormatError::Kind::popcount_mismatch,
                           "residual values shorter than the indicator popcount");
  }
  frame.residuals.values.resize(ones);
  for (std::size_t i = 0; i < ones; ++i) {
    frame.residuals.values[i] = get_f32(data + cursor);
    cursor += 4;
  }
  pos = cursor;
  return frame;
}

}  // namespace

std::size_t ResidualCode::popcount() const {
  std::size_t n = 0;
  for (bool bit : indicator) n += bit ? 1 : 0;
  return n;
}

ErrorBoundConfig ErrorBoundConfig::bounded(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("error bound must be finite and non-negative");
  }
  ErrorBoundConfig cfg;
  cfg.epsilon_ = epsilon;
  return cfg;
}

ResidualCode residual_code(const VectorXf& r, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("residual_code: epsilon must be >= 0");
  }
  ResidualCode code;
  code.indicator.resize(static_cast<std::size_t>(r.size()));
  for (Index j = 0; j < r.size(); ++j) {
    if (std::abs(static_cast<double>(r[j])) > epsilon) {
      code.indicator[static_cast<std::size_t>(j)] = true;
      code.values.push_back(r[j]);
    }
  }
  return code;
}

VectorXf residual_expand(const ResidualCode& code, Index length) {
  if (static_cast<Index>(code.indicator.size()) != length) {
    throw FrameFormatError(FrameFormatError::Kind::dimension_mismatch,
                           "residual indicator length does not match L");
  }
  if (!code.consistent()) {
    throw FrameFormatError(FrameFormatError::Kind::popcount_mismatch,
                           "residual popcount does not match the value count");
  }
  VectorXf r = VectorXf::Zero(length);
  std::size_t next = 0;
  for (Index j = 0; j < length; ++j) {
    if (code.indicator[static_cast<std::size_t>(j)]) {
      r[j] = code.values[next++];
    }
  }
  return r;
}

CompressedFrame compress(const VectorXf& x, const AutoencoderParams<float>& params,
                         const ErrorBoundConfig& cfg) {
  if (x.size() != params.input_size()) {
    throw std::invalid_argument("compress: input length does not match parameters");
  }
  if (!x.allFinite()) {
    throw DataError("compress: input contains non-finite entries");
  }

  const CompressionStages<float> stages = compression_stages<float>(x, params);

  CompressedFrame frame;
  frame.y = stages.code;
  frame.m = stages.mean;
  if (!cfg.is_bounded()) {
    frame.residuals.indicator.assign(static_cast<std::size_t>(x.size()), false);
    return frame;
  }

  frame.residuals = residual_code(stages.residual, cfg.epsilon());

  // Enforcement pass: the stored value must bring the receiver's sum within
  // the bound. The residual was computed with the receiver's own arithmetic,
  // so this replaces a value only in scale-mismatch corners.
  std::size_t next = 0;
  for (Index j = 0; j < x.size(); ++j) {
    if (!frame.residuals.indicator[static_cast<std::size_t>(j)]) continue;
    float& stored = frame.residuals.values[next++];
    const float p = stages.reconstruction[j];
    const double achieved = std::abs(static_cast<double>(x[j]) - static_cast<double>(p + stored));
    if (achieved > cfg.epsilon()) {
      stored = best_stored_residual(x[j], p, stored, cfg.epsilon());
    }
  }
  return frame;
}

VectorXf decompress(const CompressedFrame& frame, const AutoencoderParams<float>& params) {
  if (frame.code_size() != params.hidden_size() || frame.input_size() != params.input_size()) {
    throw FrameFormatError(FrameFormatError::Kind::dimension_mismatch,
                           "frame dimensions do not match parameters");
  }
  const VectorXf p = reconstruct_from_code<float>(frame.y, frame.m, params);
  const VectorXf r = residual_expand(frame.residuals, frame.input_size());
  VectorXf x_hat(p.size());
  for (Index j = 0; j < p.size(); ++j) {
    x_hat[j] = p[j] + r[j];
  }
  return x_hat;
}

std::size_t serialized_size(Index length, Index code_size, std::size_t residual_count) {
  return 16 + 4 * static_cast<std::size_t>(code_size) + (static_cast<std::size_t>(length) + 7) / 8 +
         4 * residual_count;
}

std::size_t serialized_size(const CompressedFrame& frame) {
  return serialized_size(frame.input_size(), frame.code_size(), frame.residuals.values.size());
}

std::vector<std::uint8_t> serialize(const CompressedFrame& frame) {
  if (!frame.residuals.consistent()) {
    throw FrameFormatError(FrameFormatError::Kind::popcount_mismatch,
                           "cannot serialize an inconsistent residual code");
  }
  const Index l_dim = frame.input_size();
  std::vector<std::uint8_t> buf;
  buf.reserve(serialized_size(frame));
  for (char c : {'C', 'F', 'R', '1'}) buf.push_back(static_cast<std::uint8_t>(c));
  put_u32(buf, static_cast<std::uint32_t>(l_dim));
  put_u32(buf, static_cast<std::uint32_t>(frame.code_size()));
  put_f32(buf, frame.m);
  for (Index k = 0; k < frame.y.size(); ++k) put_f32(buf, frame.y[k]);

  const std::size_t ind_bytes = (static_cast<std::size_t>(l_dim) + 7) / 8;
  const std::size_t ind_start = buf.size();
  buf.resize(buf.size() + ind_bytes, 0);
  for (Index j = 0; j < l_dim; ++j) {
    if (frame.residuals.indicator[static_cast<std::size_t>(j)]) {
      buf[ind_start + static_cast<std::size_t>(j) / 8] |=
          static_cast<std::uint8_t>(1u << (j % 8));
    }
  }
  for (float v : frame.residuals.values) put_f32(buf, v);
  return buf;
}

CompressedFrame deserialize(const std::vector<std::uint8_t>& bytes, Index length, Index code_size) {
  std::size_t pos = 0;
  CompressedFrame frame = parse_frame(bytes.data(), bytes.size(), pos, length, code_size);
  if (pos != bytes.size()) {
    throw FrameFormatError(FrameFormatError::Kind::popcount_mismatch,
                           "trailing bytes after the residual values");
  }
  return frame;
}

void append_frame(std::ostream& out, const CompressedFrame& frame) {
  const std::vector<std::uint8_t> bytes = serialize(frame);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<CompressedFrame> read_frames(const std::string& path, Index length, Index code_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("read_frames: cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  std::vector<CompressedFrame> frames;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    frames.push_back(parse_frame(bytes.data(), bytes.size(), pos, length, code_size));
  }
  return frames;
}

}  // namespace sensorpress
