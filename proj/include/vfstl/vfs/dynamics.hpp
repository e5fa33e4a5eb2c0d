#pragma once

#include <cstdint>
#include <json.hpp>
#include <span>
#include <stdexcept>
#include <vector>

#include "vfstl/vfs/dataset.hpp"
#include "vfstl/vfs/embedding.hpp"

namespace vfstl::vfs {

/// Forward model over value-function space: the point reached after
/// running `skill` for one macro-step.
class VfsDynamics {
 public:
  virtual ~VfsDynamics() = default;
  virtual int skill_count() const = 0;
  virtual VfsPoint predict(const VfsPoint& z, int skill) const = 0;
};

/// Fully connected layer, weights row-major [rows x cols] (out x in).
struct DenseLayer {
  int rows = 0;
  int cols = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct LayerGradient {
  std::vector<double> weights;
  std::vector<double> bias;
};

/// One regression sample: input [z ; one-hot(skill)] and target next z.
struct Sample {
  std::vector<double> input;
  std::vector<double> target;
};

Sample make_sample(const Transition& t, int k);

/// MLP  2k -> h -> h -> k  with ReLU on the hidden layers and a linear
/// output. predict() clamps to [0, 1]; training sees the raw output.
class DynamicsModel : public VfsDynamics {
 public:
  DynamicsModel() = default;
  /// He-normal weights, zero biases.
  DynamicsModel(int k, int hidden_width, std::uint64_t seed);
  /// All-zero weights and biases.
  static DynamicsModel zeros(int k, int hidden_width);

  int skill_count() const override { return k_; }
  int hidden_width() const { return hidden_; }
  VfsPoint predict(const VfsPoint& z, int skill) const override;

  std::vector<double> forward(std::span<const double> input) const;

  /// Mean squared error over every component of the batch and its gradient.
  double loss_and_gradient(std::span<const Sample> batch, std::vector<LayerGradient>* grad) const;
  double loss(std::span<const Sample> batch) const { return loss_and_gradient(batch, nullptr); }

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  friend bool operator==(const DynamicsModel& a, const DynamicsModel& b) {
    return a.k_ == b.k_ && a.hidden_ == b.hidden_ && a.layers_ == b.layers_;
  }

 private:
  int k_ = 0;
  int hidden_ = 0;
  std::vector<DenseLayer> layers_;
};

inline VfsPoint predict_next(const DynamicsModel& model, const VfsPoint& z, int skill) {
  return model.predict(z, skill);
}

class TrainingDivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainOptions {
  int hidden_width = 64;
  int epochs = 60;
  double learning_rate = 1e-3;
  int batch_size = 32;
  double holdout_fraction = 0.1;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainResult {
  DynamicsModel model;
  double initial_train_loss = 0.0;
  double final_train_loss = 0.0;
  double holdout_loss = 0.0;
  /// Holdout mean squared error of each output component.
  std::vector<double> holdout_component_mse;
  std::size_t train_size = 0;
  std::size_t holdout_size = 0;
};

/// Seeded shuffle, holdout split, then minibatch Adam on the MSE loss.
TrainResult train_dynamics(const TransitionDataset& data, const TrainOptions& options);

/// Per-component mean squared error of clamped predictions.
std::vector<double> component_mse(const VfsDynamics& model, std::span<const Transition> data);

/// {k, hidden_width, layers:[{rows, cols, weights, bias}]}
nlohmann::json to_json(const DynamicsModel& model);
DynamicsModel dynamics_model_from_json(const nlohmann::json& j);

}  // namespace vfstl::vfs
