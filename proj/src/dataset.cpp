#include "sensorpress/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>

#include "sensorpress/errors.hpp"
#include "sensorpress/rng.hpp"

namespace sensorpress {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SensorMatrix make_empty(Index samples, Index sensors) {
  SensorMatrix m;
  m.values = MatrixXd::Zero(samples, sensors);
  m.observed = MaskXb::Constant(samples, sensors, false);
  m.column_means = VectorXd::Constant(sensors, kNaN);
  return m;
}

// One CSV field, trimmed of surrounding spaces.
std::string_view next_field(std::string_view& rest) {
  const std::size_t comma = rest.find(',');
  std::string_view field = rest.substr(0, comma);
  rest = (comma == std::string_view::npos) ? std::string_view{} : rest.substr(comma + 1);
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  return field;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw CsvParseError(line, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void recompute_column_means(SensorMatrix& m) {
  m.column_means.resize(m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    double sum = 0.0;
    Index n = 0;
    for (Index i = 0; i < m.rows(); ++i) {
      if (m.observed(i, j)) {
        sum += m.values(i, j);
        ++n;
      }
    }
    m.column_means[j] = (n > 0) ? sum / static_cast<double>(n) : kNaN;
  }
}

SensorMatrix ingest_csv(const std::string& path, Index sensors, Index samples) {
  if (sensors <= 0 || samples <= 0) {
    throw std::invalid_argument("ingest_csv: sensors and samples must be positive");
  }
  std::ifstream in(path);
  if (!in) {
    throw DataError("ingest_csv: cannot open '" + path + "'");
  }

  SensorMatrix m = make_empty(samples, sensors);
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    std::string_view rest(row);
    if (rest.empty() || rest == "\r") continue;

    const auto t_field = next_field(rest);
    const auto s_field = next_field(rest);
    const auto v_field = next_field(rest);
    if (t_field.empty() || s_field.empty() || v_field.empty()) {
      throw CsvParseError(line, "expected time_index,sensor_id,value");
    }
    const auto t = parse_number<long long>(t_field, line, "time_index");
    const auto s = parse_number<long long>(s_field, line, "sensor_id");
    const auto v = parse_number<double>(v_field, line, "value");

    if (t < 1 || t > samples) {
      throw CsvParseError(line, "time_index " + std::to_string(t) + " outside 1.." +
                                    std::to_string(samples));
    }
    if (s < 1 || s > sensors) {
      throw CsvParseError(line, "sensor_id " + std::to_string(s) + " outside 1.." +
                                    std::to_string(sensors));
    }
    m.values(t - 1, s - 1) = v;  // last write wins
    m.observed(t - 1, s - 1) = true;
  }
  recompute_column_means(m);
  return m;
}

SensorMatrix filter_outliers(const SensorMatrix& m, const DynamicRange& range) {
  if (!(range.phi1 >= 0.0) || !(range.phi1 < range.phi2)) {
    throw std::invalid_argument("filter_outliers: need 0 <= phi1 < phi2");
  }
  SensorMatrix out = m;
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < out.cols(); ++j) {
      if (!out.observed(i, j)) continue;
      const double mag = std::abs(out.values(i, j));
      if (mag <= range.phi1 || mag >= range.phi2) {
        out.observed(i, j) = false;
      }
    }
  }
  recompute_column_means(out);
  return out;
}

SensorMatrix impute_missing(const SensorMatrix& m, const VectorXd& frozen_means) {
  if (frozen_means.size() != m.cols()) {
    throw std::invalid_argument("impute_missing: means length does not match sensor count");
  }
  SensorMatrix out = m;
  for (Index i = 0; i < out.rows(); ++i) {
    double row_sum = 0.0;
    double mean_sum = 0.0;
    Index n_observed = 0;
    for (Index j = 0; j < out.cols(); ++j) {
      if (out.observed(i, j)) {
        row_sum += out.values(i, j);
        mean_sum += frozen_means[j];
        ++n_observed;
      }
    }
    if (n_observed == out.cols()) continue;
    if (n_observed == 0) {
      throw DataError("impute_missing: row " + std::to_string(i + 1) + " has no observed sensors");
    }
    if (mean_sum == 0.0) {
      throw DataError("impute_missing: observed column means sum to zero in row " +
                      std::to_string(i + 1));
    }
    const double ratio = row_sum / mean_sum;
    for (Index j = 0; j < out.cols(); ++j) {
      if (!out.observed(i, j)) {
        if (std::isnan(frozen_means[j])) {
          throw DataError("impute_missing: column " + std::to_string(j + 1) +
                          " has no observed values to derive a mean from");
        }
        out.values(i, j) = ratio * frozen_means[j];
        out.observed(i, j) = true;
      }
    }
  }
  recompute_column_means(out);
  return out;
}

SensorMatrix impute_missing(const SensorMatrix& m) { return impute_missing(m, m.column_means); }

VectorList make_vectors(const SensorMatrix& m, VectorMode mode, Index window) {
  if (!m.fully_observed()) {
    throw std::invalid_argument("make_vectors: matrix has missing entries, impute first");
  }
  VectorList vectors;
  if (mode == VectorMode::spatial) {
    vectors.reserve(static_cast<std::size_t>(m.rows()));
    for (Index t = 0; t < m.rows(); ++t) {
      vectors.push_back(m.values.row(t).transpose());
    }
    return vectors;
  }
  if (window <= 0) {
    throw std::invalid_argument("make_vectors: temporal mode needs a positive window");
  }
  if (window > m.rows()) {
    throw std::invalid_argument("make_vectors: window " + std::to_string(window) +
                                " exceeds available samples " + std::to_string(m.rows()));
  }
  const Index windows_per_sensor = m.rows() / window;
  vectors.reserve(static_cast<std::size_t>(windows_per_sensor * m.cols()));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index w = 0; w < windows_per_sensor; ++w) {
      vectors.push_back(m.values.block(w * window, j, window, 1));
    }
  }
  return vectors;
}

std::vector<FoldSplit> kfold_split(std::size_t count, std::size_t k, std::uint64_t seed) {
  if (k < 2) {
    throw std::invalid_argument("kfold_split: k must be at least 2");
  }
  if (k > count) {
    throw std::invalid_argument("kfold_split: k exceeds the number of vectors");
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < count; ++i) {
    folds[i % k].push_back(order[i]);
  }

  std::vector<FoldSplit> splits(k);
  for (std::size_t f = 0; f < k; ++f) {
    splits[f].test = folds[f];
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      splits[f].train.insert(splits[f].train.end(), folds[g].begin(), folds[g].end());
    }
  }
  return splits;
}

double SyntheticSpec::base_value(Index t, Index j) const {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(std::max<Index>(sensors, 1));
  const double td = static_cast<double>(t);
  return offset +
         amp_primary * std::sin(2.0 * std::numbers::pi * td / period_primary + phase) +
         amp_secondary * std::sin(2.0 * std::numbers::pi * td / period_secondary + 2.0 * phase);
}

SensorMatrix generate_synthetic(const SyntheticSpec& spec) {
  if (spec.sensors <= 0 || spec.samples <= 0) {
    throw std::invalid_argument("generate_synthetic: dimensions must be positive");
  }
  if (spec.noise_std < 0.0 || spec.missing_rate < 0.0 || spec.missing_rate >= 1.0) {
    throw std::invalid_argument("generate_synthetic: bad noise or missing rate");
  }
  SensorMatrix m = make_empty(spec.samples, spec.sensors);
  Rng rng(spec.seed);
  for (Index t = 0; t < spec.samples; ++t) {
    for (Index j = 0; j < spec.sensors; ++j) {
      double v = spec.base_value(t, j);
      if (spec.noise_std > 0.0) v += spec.noise_std * rng.gaussian();
      const bool present = spec.missing_rate == 0.0 || rng.uniform() >= spec.missing_rate;
      m.values(t, j) = present ? v : 0.0;
      m.observed(t, j) = present;
    }
  }
  recompute_column_means(m);
  return m;
}

}  // namespace sensorpress
