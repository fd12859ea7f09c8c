#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sensorpress/sphering.hpp"
#include "sensorpress/types.hpp"

namespace sensorpress {

// Logistic activation. exp saturates cleanly to inf/0 at the ends of the
// exponent range, so F itself saturates to 0/1 without overflow.
template <class Scalar>
Scalar sigmoid(Scalar v) {
  using std::exp;
  return Scalar(1) / (Scalar(1) + exp(-v));
}

// The learned dictionary: encoder and decoder affine maps plus the sphering
// scale they were trained against. Scalar is double while training and float
// on the deployed (wire-exact) path.
template <class Scalar>
struct AutoencoderParams {
  MatX<Scalar> w_enc;  // K x L
  VecX<Scalar> b_enc;  // K
  MatX<Scalar> w_dec;  // L x K
  VecX<Scalar> b_dec;  // L
  Scalar sigma = Scalar(0);

  Index input_size() const { return w_enc.cols(); }
  Index hidden_size() const { return w_enc.rows(); }

  bool dimensions_consistent() const {
    return w_enc.rows() == b_enc.size() && w_dec.rows() == b_dec.size() &&
           w_enc.cols() == w_dec.rows() && w_dec.cols() == w_enc.rows();
  }

  template <class Other>
  AutoencoderParams<Other> cast() const {
    AutoencoderParams<Other> out;
    out.w_enc = w_enc.template cast<Other>();
    out.b_enc = b_enc.template cast<Other>();
    out.w_dec = w_dec.template cast<Other>();
    out.b_dec = b_dec.template cast<Other>();
    out.sigma = static_cast<Other>(sigma);
    return out;
  }
};

// y = F(W_enc d + b_enc). Plain row-by-row dot products accumulating in index
// order; the deployed codec requires a fixed operation sequence, so no BLAS
// kernels here (these vectors are tiny anyway).
template <class Scalar>
VecX<Scalar> encode(const VecX<Scalar>& d, const AutoencoderParams<Scalar>& params) {
  if (d.size() != params.input_size()) {
    throw std::invalid_argument("encode: input length does not match parameters");
  }
  const Index k_dim = params.hidden_size();
  VecX<Scalar> y(k_dim);
  for (Index k = 0; k < k_dim; ++k) {
    Scalar acc = params.b_enc[k];
    for (Index i = 0; i < d.size(); ++i) acc += params.w_enc(k, i) * d[i];
    y[k] = sigmoid(acc);
  }
  return y;
}

// d_hat = F(W_dec y + b_dec); mirror of encode.
template <class Scalar>
VecX<Scalar> decode(const VecX<Scalar>& y, const AutoencoderParams<Scalar>& params) {
  if (y.size() != params.hidden_size()) {
    throw std::invalid_argument("decode: code length does not match parameters");
  }
  const Index l_dim = params.w_dec.rows();
  VecX<Scalar> d_hat(l_dim);
  for (Index j = 0; j < l_dim; ++j) {
    Scalar acc = params.b_dec[j];
    for (Index k = 0; k < y.size(); ++k) acc += params.w_dec(j, k) * y[k];
    d_hat[j] = sigmoid(acc);
  }
  return d_hat;
}

enum class AeVariant { ae, wae, sae };

struct Hyperparams {
  AeVariant variant = AeVariant::ae;
  Index hidden = 0;
  double alpha = 0.0;  // weight decay
  double beta = 0.0;   // sparsity weight
  double rho = 0.05;   // target activation
  int max_iters = 400;
  std::uint64_t seed = 1;

  // AE has no regularizers and WAE has no sparsity term; reject configs that
  // pretend otherwise instead of silently ignoring fields.
  void validate() const;

  double effective_alpha() const { return variant == AeVariant::ae ? 0.0 : alpha; }
  double effective_beta() const { return variant == AeVariant::sae ? beta : 0.0; }
};

const char* variant_name(AeVariant v);

struct TrainingTrace {
  std::vector<double> cost;        // objective on the training batch, per iteration
  std::vector<double> rmse_train;  // per-entry RMSE in normalized units
  std::vector<double> rmse_test;
};

// Cost of the selected variant over a batch of normalized vectors (columns of
// a precomputed matrix or a vector list).
double cost(const AutoencoderParams<double>& params, const VectorList& batch,
            const Hyperparams& hp);

// Analytic gradient with the same packing as the parameters; includes the KL
// term's dependence on the encoder through the mean activations.
struct ParamGradient {
  MatrixXd w_enc;
  VectorXd b_enc;
  MatrixXd w_dec;
  VectorXd b_dec;
};
ParamGradient gradient(const AutoencoderParams<double>& params, const VectorList& batch,
                       const Hyperparams& hp);

// Knobs the training contract pins by default; tests that need the full
// learning curve can switch the early stop off.
struct TrainControls {
  double rel_tolerance = 1e-7;
  int tolerance_window = 5;
  bool record_trace = true;
};

struct TrainResult {
  AutoencoderParams<double> params;
  TrainingTrace trace;
};

// Full-batch quasi-Newton minimization of the selected cost. Deterministic for
// a fixed seed: initialization, evaluation order, and the optimizer are all
// single-threaded with pinned arithmetic.
TrainResult train(const VectorList& training, const VectorList& validation, const Hyperparams& hp,
                  const TrainControls& controls = {});

// Seeded symmetric-uniform initialization, biases zero.
AutoencoderParams<double> initialize_params(Index input_size, Index hidden, std::uint64_t seed);

struct HyperGrid {
  AeVariant variant = AeVariant::sae;
  Index hidden = 0;
  std::vector<double> alpha{0.0};
  std::vector<double> beta{0.0};
  std::vector<double> rho{0.05};
  int max_iters = 400;
  std::uint64_t seed = 1;
};

struct GridPoint {
  Hyperparams config;
  double cv_rmse = 0.0;  // mean validation RMSE in physical units
};

struct GridSearchResult {
  Hyperparams best;
  std::vector<GridPoint> evaluated;  // in declaration order of the product
};

// Evaluates the Cartesian product of the grids under k-fold cross-validation
// on raw (physical-unit) vectors; sigma is fitted per fold on the training
// part. Ties break toward smaller alpha, then smaller beta, then declaration
// order.
GridSearchResult grid_search(const VectorList& raw_vectors, std::size_t folds,
                             const HyperGrid& grid);

// Mean reconstruction RMSE of raw vectors through normalize -> encode ->
// decode -> denormalize with the given parameters (no residual stage).
double reconstruction_rmse(const AutoencoderParams<double>& params, const VectorList& raw_vectors);

// Parameter file: magic "AEC1", u32 L, u32 K, f32 sigma, then W_enc (row-major
// K x L f32), b_enc, W_dec (row-major L x K f32), b_dec; little-endian.
void save_params(const std::string& path, const AutoencoderParams<double>& params);
AutoencoderParams<float> load_params(const std::string& path);

}  // namespace sensorpress
