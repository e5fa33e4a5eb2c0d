#include "vfstl/vfs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "vfstl/common/seed.hpp"

namespace vfstl::vfs {

namespace {

DenseLayer make_layer(int rows, int cols) {
  DenseLayer l;
  l.rows = rows;
  l.cols = cols;
  l.weights.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
  l.bias.assign(static_cast<std::size_t>(rows), 0.0);
  return l;
}

void affine(const DenseLayer& l, std::span<const double> x, std::vector<double>& y) {
  y.assign(l.bias.begin(), l.bias.end());
  for (int r = 0; r < l.rows; ++r) {
    const double* w = l.weights.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(l.cols);
    double acc = 0.0;
    for (int c = 0; c < l.cols; ++c) acc += w[c] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] += acc;
  }
}

void relu(std::vector<double>& v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
}

}  // namespace

Sample make_sample(const Transition& t, int k) {
  Sample s;
  s.input = t.z.z;
  s.input.resize(static_cast<std::size_t>(2 * k), 0.0);
  s.input[static_cast<std::size_t>(k + t.skill)] = 1.0;
  s.target = t.next.z;
  return s;
}

DynamicsModel::DynamicsModel(int k, int hidden_width, std::uint64_t seed) : k_(k), hidden_(hidden_width) {
  if (k < 1 || hidden_width < 1) throw std::invalid_argument("dynamics model needs k >= 1 and hidden width >= 1");
  layers_ = {make_layer(hidden_width, 2 * k), make_layer(hidden_width, hidden_width), make_layer(k, hidden_width)};
  std::mt19937_64 rng(seed);
  for (auto& l : layers_) {
    std::normal_distribution<double> init(0.0, std::sqrt(2.0 / l.cols));
    for (double& w : l.weights) w = init(rng);
  }
}

DynamicsModel DynamicsModel::zeros(int k, int hidden_width) {
  DynamicsModel m(k, hidden_width, 0);
  for (auto& l : m.layers_) std::fill(l.weights.begin(), l.weights.end(), 0.0);
  return m;
}

std::vector<double> DynamicsModel::forward(std::span<const double> input) const {
  if (input.size() != static_cast<std::size_t>(2 * k_)) throw std::invalid_argument("dynamics input has wrong size");
  std::vector<double> a(input.begin(), input.end());
  std::vector<double> b;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    affine(layers_[i], a, b);
    if (i + 1 < layers_.size()) relu(b);
    std::swap(a, b);
  }
  return a;
}

VfsPoint DynamicsModel::predict(const VfsPoint& z, int skill) const {
  if (skill < 0 || skill >= k_) throw std::invalid_argument("skill id " + std::to_string(skill) + " out of range");
  if (z.size() != static_cast<std::size_t>(k_)) throw std::invalid_argument("VFS point has wrong dimension");
  std::vector<double> input = z.z;
  input.resize(static_cast<std::size_t>(2 * k_), 0.0);
  input[static_cast<std::size_t>(k_ + skill)] = 1.0;
  VfsPoint out{forward(input)};
  for (double& v : out.z) v = std::clamp(v, 0.0, 1.0);
  return out;
}

double DynamicsModel::loss_and_gradient(std::span<const Sample> batch, std::vector<LayerGradient>* grad) const {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const std::size_t n_layers = layers_.size();
  if (grad) {
    grad->resize(n_layers);
    for (std::size_t i = 0; i < n_layers; ++i) {
      (*grad)[i].weights.assign(layers_[i].weights.size(), 0.0);
      (*grad)[i].bias.assign(layers_[i].bias.size(), 0.0);
    }
  }
  const double scale = 1.0 / (static_cast<double>(batch.size()) * k_);
  double total = 0.0;
  std::vector<std::vector<double>> acts(n_layers + 1);
  std::vector<double> delta, prev_delta;
  for (const Sample& s : batch) {
    acts[0] = s.input;
    for (std::size_t i = 0; i < n_layers; ++i) {
      affine(layers_[i], acts[i], acts[i + 1]);
      if (i + 1 < n_layers) relu(acts[i + 1]);
    }
    const auto& y = acts[n_layers];
    delta.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double e = y[j] - s.target[j];
      total += e * e;
      delta[j] = 2.0 * e * scale;
    }
    if (!grad) continue;
    for (std::size_t li = n_layers; li-- > 0;) {
      const DenseLayer& l = layers_[li];
      LayerGradient& g = (*grad)[li];
      const auto& x = acts[li];
      for (int r = 0; r < l.rows; ++r) {
        const double d = delta[static_cast<std::size_t>(r)];
        if (d == 0.0) continue;
        g.bias[static_cast<std::size_t>(r)] += d;
        double* gw = g.weights.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(l.cols);
        for (int c = 0; c < l.cols; ++c) gw[c] += d * x[static_cast<std::size_t>(c)];
      }
      if (li == 0) break;
      prev_delta.assign(static_cast<std::size_t>(l.cols), 0.0);
      for (int r = 0; r < l.rows; ++r) {
        const double d = delta[static_cast<std::size_t>(r)];
        if (d == 0.0) continue;
        const double* w = l.weights.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(l.cols);
        for (int c = 0; c < l.cols; ++c) prev_delta[static_cast<std::size_t>(c)] += d * w[c];
      }
      // ReLU derivative: the stored activation is positive exactly where the unit was active.
      for (int c = 0; c < l.cols; ++c) {
        if (!(x[static_cast<std::size_t>(c)] > 0.0)) prev_delta[static_cast<std::size_t>(c)] = 0.0;
      }
      std::swap(delta, prev_delta);
    }
  }
  return total * scale;
}

namespace {

struct AdamState {
  std::vector<LayerGradient> m;
  std::vector<LayerGradient> v;
  long step = 0;
};

void adam_update(std::vector<double>& param, const std::vector<double>& g, std::vector<double>& m,
                 std::vector<double>& v, const TrainOptions& o, double bc1, double bc2) {
  for (std::size_t i = 0; i < param.size(); ++i) {
    m[i] = o.beta1 * m[i] + (1.0 - o.beta1) * g[i];
    v[i] = o.beta2 * v[i] + (1.0 - o.beta2) * g[i] * g[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    param[i] -= o.learning_rate * mhat / (std::sqrt(vhat) + o.epsilon);
  }
}

}  // namespace

TrainResult train_dynamics(const TransitionDataset& data, const TrainOptions& options) {
  if (data.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  if (options.batch_size < 1 || options.epochs < 0) throw std::invalid_argument("invalid training options");
  const int k = static_cast<int>(data.front().z.size());

  std::mt19937_64 rng(derive_seed(options.seed, streams::kTraining));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::size_t n_holdout = static_cast<std::size_t>(std::llround(options.holdout_fraction * static_cast<double>(data.size())));
  if (n_holdout >= data.size()) n_holdout = 0;

  std::vector<Sample> holdout, train;
  std::vector<Transition> holdout_records;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Transition& t = data[order[i]];
    if (i < n_holdout) {
      holdout.push_back(make_sample(t, k));
      holdout_records.push_back(t);
    } else {
      train.push_back(make_sample(t, k));
    }
  }

  TrainResult result;
  result.model = DynamicsModel(k, options.hidden_width, mix64(options.seed));
  result.train_size = train.size();
  result.holdout_size = holdout.size();
  result.initial_train_loss = result.model.loss(train);

  AdamState adam;
  adam.m.resize(result.model.layers().size());
  adam.v.resize(result.model.layers().size());
  for (std::size_t i = 0; i < adam.m.size(); ++i) {
    const auto& l = result.model.layers()[i];
    adam.m[i] = {std::vector<double>(l.weights.size(), 0.0), std::vector<double>(l.bias.size(), 0.0)};
    adam.v[i] = adam.m[i];
  }

  std::vector<LayerGradient> grad;
  const std::size_t bs = static_cast<std::size_t>(options.batch_size);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(train.begin(), train.end(), rng);
    for (std::size_t start = 0; start < train.size(); start += bs) {
      const std::size_t len = std::min(bs, train.size() - start);
      double l = result.model.loss_and_gradient(std::span<const Sample>(train).subspan(start, len), &grad);
      if (!std::isfinite(l)) {
        throw TrainingDivergedError("training diverged: non-finite loss at epoch " + std::to_string(epoch) +
                                    ", batch starting at " + std::to_string(start) +
                                    "; try a smaller learning rate (current " + std::to_string(options.learning_rate) + ")");
      }
      ++adam.step;
      const double bc1 = 1.0 - std::pow(options.beta1, static_cast<double>(adam.step));
      const double bc2 = 1.0 - std::pow(options.beta2, static_cast<double>(adam.step));
      auto& layers = result.model.layers();
      for (std::size_t li = 0; li < layers.size(); ++li) {
        adam_update(layers[li].weights, grad[li].weights, adam.m[li].weights, adam.v[li].weights, options, bc1, bc2);
        adam_update(layers[li].bias, grad[li].bias, adam.m[li].bias, adam.v[li].bias, options, bc1, bc2);
      }
    }
  }

  result.final_train_loss = result.model.loss(train);
  if (!std::isfinite(result.final_train_loss)) throw TrainingDivergedError("training diverged: final loss is not finite");
  if (!holdout.empty()) {
    result.holdout_loss = result.model.loss(holdout);
    result.holdout_component_mse = component_mse(result.model, holdout_records);
  }
  return result;
}

std::vector<double> component_mse(const VfsDynamics& model, std::span<const Transition> data) {
  std::vector<double> mse(static_cast<std::size_t>(model.skill_count()), 0.0);
  if (data.empty()) return mse;
  for (const auto& t : data) {
    VfsPoint p = model.predict(t.z, t.skill);
    for (std::size_t i = 0; i < mse.size(); ++i) {
      const double e = p[i] - t.next[i];
      mse[i] += e * e;
    }
  }
  for (double& m : mse) m /= static_cast<double>(data.size());
  return mse;
}

nlohmann::json to_json(const DynamicsModel& model) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : model.layers()) {
    layers.push_back({{"rows", l.rows}, {"cols", l.cols}, {"weights", l.weights}, {"bias", l.bias}});
  }
  return {{"k", model.skill_count()}, {"hidden_width", model.hidden_width()}, {"layers", layers}};
}

DynamicsModel dynamics_model_from_json(const nlohmann::json& j) {
  const int k = j.at("k").get<int>();
  const int h = j.at("hidden_width").get<int>();
  DynamicsModel m = DynamicsModel::zeros(k, h);
  const auto& layers = j.at("layers");
  if (layers.size() != m.layers().size()) throw std::invalid_argument("model document must have 3 layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    DenseLayer& l = m.layers()[i];
    if (layers[i].at("rows").get<int>() != l.rows || layers[i].at("cols").get<int>() != l.cols) {
      throw std::invalid_argument("model layer " + std::to_string(i) + " has unexpected shape");
    }
    auto w = layers[i].at("weights").get<std::vector<double>>();
    auto b = layers[i].at("bias").get<std::vector<double>>();
    if (w.size() != l.weights.size() || b.size() != l.bias.size()) {
      throw std::invalid_argument("model layer " + std::to_string(i) + " has wrong parameter count");
    }
    for (double v : w) {
      if (!std::isfinite(v)) throw std::invalid_argument("model contains non-finite weights");
    }
    l.weights = std::move(w);
    l.bias = std::move(b);
  }
  return m;
}

}  // namespace vfstl::vfs
