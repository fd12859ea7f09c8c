#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sensorpress/types.hpp"

namespace sensorpress {

// Hardware sensing range: any reading with |v| <= phi1 or |v| >= phi2 is an
// outlier (defective sensor, transmission glitch) and gets masked out.
struct DynamicRange {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// Aligned readings: rows are time instants, columns are sensors. Cells that
// were never observed (or got filtered) carry observed=false; column_means are
// maintained over observed cells only and are NaN for empty columns.
struct SensorMatrix {
  MatrixXd values;
  MaskXb observed;
  VectorXd column_means;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
  bool fully_observed() const { return observed.all(); }
};

// Recomputes column_means in place from the observed cells.
void recompute_column_means(SensorMatrix& m);

// Reads header-less `time_index,sensor_id,value` rows (1-based indices) into
// an M x N matrix. Duplicate cells resolve last-wins.
SensorMatrix ingest_csv(const std::string& path, Index sensors, Index samples);

// Masks out readings outside the open magnitude interval (phi1, phi2) and
// refreshes the column means. Idempotent.
SensorMatrix filter_outliers(const SensorMatrix& m, const DynamicRange& range);

// Fills every missing cell x_ij with (sum of observed row entries / sum of
// their column means) * mu_j, using exactly the supplied frozen means. The
// mask becomes all-true.
SensorMatrix impute_missing(const SensorMatrix& m, const VectorXd& frozen_means);

// Same, using the matrix's own column means.
SensorMatrix impute_missing(const SensorMatrix& m);

enum class VectorMode { temporal, spatial };

// Temporal mode: non-overlapping per-sensor windows of the given length,
// emitted sensor-major. Spatial mode: one vector per time instant across all
// sensors (window ignored). Requires a fully observed matrix.
VectorList make_vectors(const SensorMatrix& m, VectorMode mode, Index window = 0);

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Deterministic k-fold partition of [0, count): shuffled with the seed, then
// dealt round-robin so fold sizes differ by at most one.
std::vector<FoldSplit> kfold_split(std::size_t count, std::size_t k, std::uint64_t seed);

// Synthetic sensor field: per-sensor sum of two sinusoids with phase offsets
// (a stand-in for diurnal cycles) plus i.i.d. Gaussian noise, with an optional
// fraction of cells dropped as missing.
struct SyntheticSpec {
  Index sensors = 23;
  Index samples = 1440;
  double offset = 25.0;
  double amp_primary = 8.0;
  double amp_secondary = 3.0;
  double period_primary = 720.0;
  double period_secondary = 240.0;
  double noise_std = 0.3;
  double missing_rate = 0.0;
  std::uint64_t seed = 1;

  // Noiseless phenomenon value for sensor j at time t (0-based).
  double base_value(Index t, Index j) const;
};

SensorMatrix generate_synthetic(const SyntheticSpec& spec);

}  // namespace sensorpress
