#include "sensorpress/autoencoder.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "sensorpress/dataset.hpp"
#include "sensorpress/errors.hpp"
#include "sensorpress/lbfgs.hpp"
#include "sensorpress/rng.hpp"

namespace sensorpress {

namespace {

constexpr double kRhoClamp = 1e-8;

MatrixXd to_batch_matrix(const VectorList& batch) {
  if (batch.empty()) {
    throw std::invalid_argument("autoencoder: empty batch");
  }
  const Index l_dim = batch.front().size();
  MatrixXd m(l_dim, static_cast<Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].size() != l_dim) {
      throw std::invalid_argument("autoencoder: batch vectors have mixed lengths");
    }
    m.col(static_cast<Index>(i)) = batch[i];
  }
  return m;
}

MatrixXd sigmoid_matrix(const MatrixXd& z) {
  return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

// Shared forward/backward pass. Returns the cost; fills the gradient when
// grad_out is non-null so training gets both from one forward pass.
double evaluate(const AutoencoderParams<double>& params, const MatrixXd& batch,
                const Hyperparams& hp, ParamGradient* grad_out) {
  const double batch_size = static_cast<double>(batch.cols());
  const double alpha = hp.effective_alpha();
  const double beta = hp.effective_beta();

  MatrixXd z = params.w_enc * batch;
  z.colwise() += params.b_enc;
  const MatrixXd y = sigmoid_matrix(z);
  z = params.w_dec * y;
  z.colwise() += params.b_dec;
  const MatrixXd d_hat = sigmoid_matrix(z);

  const MatrixXd diff = d_hat - batch;
  double total = 0.5 * diff.squaredNorm() / batch_size;
  if (alpha > 0.0) {
    total += 0.5 * alpha * (params.w_enc.squaredNorm() + params.w_dec.squaredNorm());
  }

  VectorXd rho_hat;
  if (beta > 0.0) {
    rho_hat = y.rowwise().mean().cwiseMax(kRhoClamp).cwiseMin(1.0 - kRhoClamp);
    const double rho = hp.rho;
    for (Index k = 0; k < rho_hat.size(); ++k) {
      total += beta * (rho * std::log(rho / rho_hat[k]) +
                       (1.0 - rho) * std::log((1.0 - rho) / (1.0 - rho_hat[k])));
    }
  }

  if (grad_out != nullptr) {
    const MatrixXd delta_out =
        (diff.array() * d_hat.array() * (1.0 - d_hat.array())).matrix() / batch_size;
    grad_out->w_dec = delta_out * y.transpose();
    grad_out->b_dec = delta_out.rowwise().sum();

    MatrixXd back = params.w_dec.transpose() * delta_out;
    if (beta > 0.0) {
      const VectorXd kl_grad =
          (beta / batch_size) *
          (-hp.rho / rho_hat.array() + (1.0 - hp.rho) / (1.0 - rho_hat.array())).matrix();
      back.colwise() += kl_grad;
    }
    const MatrixXd delta_hidden = (back.array() * y.array() * (1.0 - y.array())).matrix();
    grad_out->w_enc = delta_hidden * batch.transpose();
    grad_out->b_enc = delta_hidden.rowwise().sum();

    if (alpha > 0.0) {
      grad_out->w_enc += alpha * params.w_enc;
      grad_out->w_dec += alpha * params.w_dec;
    }
  }
  return total;
}

double batch_rmse(const AutoencoderParams<double>& params, const MatrixXd& batch) {
  if (batch.cols() == 0) return std::numeric_limits<double>::quiet_NaN();
  MatrixXd z = params.w_enc * batch;
  z.colwise() += params.b_enc;
  const MatrixXd y = sigmoid_matrix(z);
  z = params.w_dec * y;
  z.colwise() += params.b_dec;
  const MatrixXd d_hat = sigmoid_matrix(z);
  return std::sqrt((d_hat - batch).squaredNorm() / static_cast<double>(batch.size()));
}

Index theta_size(Index l_dim, Index k_dim) { return 2 * k_dim * l_dim + k_dim + l_dim; }

void pack_theta(const AutoencoderParams<double>& params, VectorXd& theta) {
  const Index l_dim = params.input_size();
  const Index k_dim = params.hidden_size();
  theta.resize(theta_size(l_dim, k_dim));
  Index offset = 0;
  theta.segment(offset, k_dim * l_dim) = Eigen::Map<const VectorXd>(params.w_enc.data(), k_dim * l_dim);
  offset += k_dim * l_dim;
  theta.segment(offset, k_dim) = params.b_enc;
  offset += k_dim;
  theta.segment(offset, l_dim * k_dim) = Eigen::Map<const VectorXd>(params.w_dec.data(), l_dim * k_dim);
  offset += l_dim * k_dim;
  theta.segment(offset, l_dim) = params.b_dec;
}

void unpack_theta(const VectorXd& theta, Index l_dim, Index k_dim,
                  AutoencoderParams<double>& params) {
  Index offset = 0;
  params.w_enc = Eigen::Map<const MatrixXd>(theta.data() + offset, k_dim, l_dim);
  offset += k_dim * l_dim;
  params.b_enc = theta.segment(offset, k_dim);
  offset += k_dim;
  params.w_dec = Eigen::Map<const MatrixXd>(theta.data() + offset, l_dim, k_dim);
  offset += l_dim * k_dim;
  params.b_dec = theta.segment(offset, l_dim);
}

void pack_gradient(const ParamGradient& grad, VectorXd& out) {
  const Index k_dim = grad.w_enc.rows();
  const Index l_dim = grad.w_enc.cols();
  out.resize(theta_size(l_dim, k_dim));
  Index offset = 0;
  out.segment(offset, k_dim * l_dim) = Eigen::Map<const VectorXd>(grad.w_enc.data(), k_dim * l_dim);
  offset += k_dim * l_dim;
  out.segment(offset, k_dim) = grad.b_enc;
  offset += k_dim;
  out.segment(offset, l_dim * k_dim) = Eigen::Map<const VectorXd>(grad.w_dec.data(), l_dim * k_dim);
  offset += l_dim * k_dim;
  out.segment(offset, l_dim) = grad.b_dec;
}

// ---- parameter file helpers (little-endian, explicit) ----

void put_u32(std::string& buf, std::uint32_t v) {
  buf.push_back(static_cast<char>(v & 0xff));
  buf.push_back(static_cast<char>((v >> 8) & 0xff));
  buf.push_back(static_cast<char>((v >> 16) & 0xff));
  buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32(std::string& buf, float v) { put_u32(buf, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(const std::string& buf, std::size_t& pos) {
  const auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])); };
  const std::uint32_t v = b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24);
  pos += 4;
  return v;
}

float get_f32(const std::string& buf, std::size_t& pos) {
  return std::bit_cast<float>(get_u32(buf, pos));
}

}  // namespace

void Hyperparams::validate() const {
  if (hidden <= 0) throw std::invalid_argument("hyperparams: hidden size must be positive");
  if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("hyperparams: alpha/beta must be >= 0");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("hyperparams: rho must lie in (0,1)");
  if (max_iters < 1) throw std::invalid_argument("hyperparams: max_iters must be positive");
  if (variant == AeVariant::ae && (alpha != 0.0 || beta != 0.0)) {
    throw std::invalid_argument("hyperparams: the basic AE has no alpha/beta terms");
  }
  if (variant == AeVariant::wae && beta != 0.0) {
    throw std::invalid_argument("hyperparams: WAE has no sparsity term");
  }
}

const char* variant_name(AeVariant v) {
  switch (v) {
    case AeVariant::ae: return "ae";
    case AeVariant::wae: return "wae";
    case AeVariant::sae: return "sae";
  }
  return "?";
}

double cost(const AutoencoderParams<double>& params, const VectorList& batch,
            const Hyperparams& hp) {
  const MatrixXd m = to_batch_matrix(batch);
  if (m.rows() != params.input_size()) {
    throw std::invalid_argument("cost: batch dimension does not match parameters");
  }
  return evaluate(params, m, hp, nullptr);
}

ParamGradient gradient(const AutoencoderParams<double>& params, const VectorList& batch,
                       const Hyperparams& hp) {
  const MatrixXd m = to_batch_matrix(batch);
  if (m.rows() != params.input_size()) {
    throw std::invalid_argument("gradient: batch dimension does not match parameters");
  }
  ParamGradient grad;
  evaluate(params, m, hp, &grad);
  return grad;
}

AutoencoderParams<double> initialize_params(Index input_size, Index hidden, std::uint64_t seed) {
  AutoencoderParams<double> params;
  params.w_enc.resize(hidden, input_size);
  params.w_dec.resize(input_size, hidden);
  params.b_enc = VectorXd::Zero(hidden);
  params.b_dec = VectorXd::Zero(input_size);

  const double radius = std::sqrt(6.0 / static_cast<double>(input_size + hidden));
  Rng rng(seed);
  // Column-major fill order, encoder first; part of the determinism contract.
  for (Index j = 0; j < params.w_enc.cols(); ++j)
    for (Index i = 0; i < params.w_enc.rows(); ++i)
      params.w_enc(i, j) = rng.uniform(-radius, radius);
  for (Index j = 0; j < params.w_dec.cols(); ++j)
    for (Index i = 0; i < params.w_dec.rows(); ++i)
      params.w_dec(i, j) = rng.uniform(-radius, radius);
  return params;
}

TrainResult train(const VectorList& training, const VectorList& validation, const Hyperparams& hp,
                  const TrainControls& controls) {
  hp.validate();
  const MatrixXd train_batch = to_batch_matrix(training);
  const Index l_dim = train_batch.rows();
  if (hp.hidden >= l_dim) {
    throw std::invalid_argument("train: hidden size must be smaller than the input size");
  }
  MatrixXd val_batch;
  if (!validation.empty()) val_batch = to_batch_matrix(validation);

  AutoencoderParams<double> params = initialize_params(l_dim, hp.hidden, hp.seed);
  VectorXd theta;
  pack_theta(params, theta);

  AutoencoderParams<double> scratch;
  ParamGradient grad;
  VectorXd packed_grad;
  const Objective objective = [&](const VectorXd& x, VectorXd& g) {
    unpack_theta(x, l_dim, hp.hidden, scratch);
    const double fx = evaluate(scratch, train_batch, hp, &grad);
    pack_gradient(grad, packed_grad);
    g = packed_grad;
    return fx;
  };

  TrainResult result;
  IterationObserver observer;
  if (controls.record_trace) {
    observer = [&](int, const VectorXd& x, double fx) {
      unpack_theta(x, l_dim, hp.hidden, scratch);
      result.trace.cost.push_back(fx);
      result.trace.rmse_train.push_back(batch_rmse(scratch, train_batch));
      result.trace.rmse_test.push_back(batch_rmse(scratch, val_batch));
    };
  }

  LbfgsOptions options;
  options.max_iterations = hp.max_iters;
  options.rel_tolerance = controls.rel_tolerance;
  options.tolerance_window = controls.tolerance_window;
  const LbfgsResult opt = lbfgs_minimize(objective, theta, options, observer);

  unpack_theta(opt.x, l_dim, hp.hidden, result.params);
  return result;
}

double reconstruction_rmse(const AutoencoderParams<double>& params,
                           const VectorList& raw_vectors) {
  if (raw_vectors.empty()) {
    throw std::invalid_argument("reconstruction_rmse: empty vector list");
  }
  if (!(params.sigma > 0.0)) {
    throw std::invalid_argument("reconstruction_rmse: parameters carry no sphering scale");
  }
  double total_sq = 0.0;
  std::size_t total_entries = 0;
  for (const VectorXd& x : raw_vectors) {
    double mean = 0.0;
    const VectorXd d = normalize<double>(x, params.sigma, mean);
    const VectorXd p = denormalize<double>(decode(encode(d, params), params), mean, params.sigma);
    total_sq += (x - p).squaredNorm();
    total_entries += static_cast<std::size_t>(x.size());
  }
  return std::sqrt(total_sq / static_cast<double>(total_entries));
}

GridSearchResult grid_search(const VectorList& raw_vectors, std::size_t folds,
                             const HyperGrid& grid) {
  // Regularizer grids collapse for variants that do not use them.
  std::vector<double> alphas = grid.variant == AeVariant::ae ? std::vector<double>{0.0} : grid.alpha;
  std::vector<double> betas = grid.variant == AeVariant::sae ? grid.beta : std::vector<double>{0.0};
  std::vector<double> rhos = grid.variant == AeVariant::sae ? grid.rho : std::vector<double>{0.05};
  if (alphas.empty() || betas.empty() || rhos.empty()) {
    throw std::invalid_argument("grid_search: grids must be non-empty");
  }

  const std::vector<FoldSplit> splits = kfold_split(raw_vectors.size(), folds, grid.seed);

  GridSearchResult result;
  for (double alpha : alphas) {
    for (double beta : betas) {
      for (double rho : rhos) {
        Hyperparams hp;
        hp.variant = grid.variant;
        hp.hidden = grid.hidden;
        hp.alpha = alpha;
        hp.beta = beta;
        hp.rho = rho;
        hp.max_iters = grid.max_iters;
        hp.seed = grid.seed;
        hp.validate();

        double rmse_sum = 0.0;
        for (std::size_t f = 0; f < splits.size(); ++f) {
          VectorList train_raw;
          VectorList val_raw;
          for (std::size_t idx : splits[f].train) train_raw.push_back(raw_vectors[idx]);
          for (std::size_t idx : splits[f].test) val_raw.push_back(raw_vectors[idx]);

          const SpheringScale scale = fit_sigma(train_raw);
          VectorList train_norm(train_raw.size());
          for (std::size_t i = 0; i < train_raw.size(); ++i) {
            double mean = 0.0;
            train_norm[i] = normalize<double>(train_raw[i], scale.sigma, mean);
          }

          Hyperparams fold_hp = hp;
          fold_hp.seed = grid.seed + f;
          TrainControls controls;
          controls.record_trace = false;
          TrainResult trained = train(train_norm, {}, fold_hp, controls);
          trained.params.sigma = scale.sigma;
          rmse_sum += reconstruction_rmse(trained.params, val_raw);
        }
        result.evaluated.push_back({hp, rmse_sum / static_cast<double>(splits.size())});
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.evaluated.size(); ++i) {
    const GridPoint& cand = result.evaluated[i];
    const GridPoint& cur = result.evaluated[best];
    if (cand.cv_rmse < cur.cv_rmse ||
        (cand.cv_rmse == cur.cv_rmse &&
         (cand.config.alpha < cur.config.alpha ||
          (cand.config.alpha == cur.config.alpha && cand.config.beta < cur.config.beta)))) {
      best = i;
    }
  }
  result.best = result.evaluated[best].config;
  return result;
}

void save_params(const std::string& path, const AutoencoderParams<double>& params) {
  if (!params.dimensions_consistent()) {
    throw std::invalid_argument("save_params: inconsistent parameter dimensions");
  }
  const Index l_dim = params.input_size();
  const Index k_dim = params.hidden_size();

  std::string buf;
  buf.reserve(16 + 4 * static_cast<std::size_t>(2 * l_dim * k_dim + l_dim + k_dim));
  buf += "AEC1";
  put_u32(buf, static_cast<std::uint32_t>(l_dim));
  put_u32(buf, static_cast<std::uint32_t>(k_dim));
  put_f32(buf, static_cast<float>(params.sigma));
  for (Index k = 0; k < k_dim; ++k)
    for (Index i = 0; i < l_dim; ++i) put_f32(buf, static_cast<float>(params.w_enc(k, i)));
  for (Index k = 0; k < k_dim; ++k) put_f32(buf, static_cast<float>(params.b_enc[k]));
  for (Index i = 0; i < l_dim; ++i)
    for (Index k = 0; k < k_dim; ++k) put_f32(buf, static_cast<float>(params.w_dec(i, k)));
  for (Index i = 0; i < l_dim; ++i) put_f32(buf, static_cast<float>(params.b_dec[i]));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("save_params: cannot open '" + path + "' for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError("save_params: write failed for '" + path + "'");
}

AutoencoderParams<float> load_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load_params: cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 16 || buf.compare(0, 4, "AEC1") != 0) {
    throw DataError("load_params: '" + path + "' is not a parameter file");
  }
  std::size_t pos = 4;
  const Index l_dim = static_cast<Index>(get_u32(buf, pos));
  const Index k_dim = static_cast<Index>(get_u32(buf, pos));
  const float sigma = get_f32(buf, pos);
  const std::size_t expected =
      16 + 4 * static_cast<std::size_t>(2 * l_dim * k_dim + l_dim + k_dim);
  if (l_dim <= 0 || k_dim <= 0 || buf.size() != expected) {
    throw DataError("load_params: '" + path + "' is truncated or malformed");
  }
  if (!(sigma > 0.0f) || !std::isfinite(sigma)) {
    throw DataError("load_params: sigma must be positive and finite");
  }

  AutoencoderParams<float> params;
  params.sigma = sigma;
  params.w_enc.resize(k_dim, l_dim);
  params.b_enc.resize(k_dim);
  params.w_dec.resize(l_dim, k_dim);
  params.b_dec.resize(l_dim);
  for (Index k = 0; k < k_dim; ++k)
    for (Index i = 0; i < l_dim; ++i) params.w_enc(k, i) = get_f32(buf, pos);
  for (Index k = 0; k < k_dim; ++k) params.b_enc[k] = get_f32(buf, pos);
  for (Index i = 0; i < l_dim; ++i)
    for (Index k = 0; k < k_dim; ++k) params.w_dec(i, k) = get_f32(buf, pos);
  for (Index i = 0; i < l_dim; ++i) params.b_dec[i] = get_f32(buf, pos);
  return params;
}

}  // namespace sensorpress
