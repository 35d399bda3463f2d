#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "benefit/ecology.hpp"

namespace benefit {

enum class Activation { Tanh, Identity, Sigmoid };

std::string_view activation_label(Activation a) noexcept;
Activation activation_from_label(std::string_view label);

// Fully connected layer. `weights` is row-major, outputs x inputs.
struct DenseLayer {
  int inputs = 1;
  int outputs = 1;
  std::vector<double> weights;
  std::vector<double> bias;
  Activation activation = Activation::Identity;
  bool operator==(const DenseLayer&) const = default;
};

// Scalar-in, scalar-out MLP for one natural factor. The input is min-max
// normalised with `input_min`/`input_max` before the first layer.
struct MlpModel {
  std::string factor;
  double input_min = 0.0;
  double input_max = 1.0;
  std::vector<DenseLayer> layers;

  // Throws ConfigError on incompatible shapes or a bad normalisation range.
  void validate() const;
  std::size_t parameter_count() const;
  bool operator==(const MlpModel&) const = default;
};

struct YieldVector {
  double temperature = 0.0;
  double salinity = 0.0;
  double flow = 0.0;
  double irradiation = 0.0;
  double nutrient = 0.0;
  bool operator==(const YieldVector&) const = default;
};

// All components normalised to [0, 1].
struct ShapeParams {
  double blade_width = 0.0;
  double blade_length = 0.0;
  double blade_density = 0.0;
  double stipe_length = 0.0;
  bool operator==(const ShapeParams&) const = default;
};

// Stipe length mixes two yields: w * irradiation + (1 - w) * nutrient.
struct ShapeMapping {
  double irradiation_weight = 0.5;
  bool operator==(const ShapeMapping&) const = default;
};

struct ResponseCurveDataset {
  std::string factor;
  std::string unit;
  std::vector<std::pair<double, double>> samples;  // (factor value, yield)

  // Throws ValidationError: >= 8 samples, strictly increasing x, y in [0, 1].
  void validate() const;
};

// Network output before the final clamp; x is in physical units.
double mlp_raw(const MlpModel& model, double x);

// Clamped to [0, 1]. Throws std::invalid_argument for non-finite x.
double mlp_forward(const MlpModel& model, double x);

// Parameters flattened layer by layer: weights (row-major) then bias.
std::vector<double> flatten_parameters(const MlpModel& model);
void assign_parameters(MlpModel& model, std::span<const double> params);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // same order as flatten_parameters
};

// Mean squared error of mlp_raw over the dataset, and its analytic gradient.
LossGradient mse_gradient(const MlpModel& model, const ResponseCurveDataset& data);

struct FitOptions {
  int hidden = 8;
  int epochs = 20000;
  double lr = 0.5;
  std::uint64_t seed = 7;
};

struct FitResult {
  MlpModel model;
  double mse = 0.0;
};

// Full-batch gradient descent for a 1-hidden-layer Tanh MLP with a Sigmoid
// output. Bit-identical for identical (dataset, options).
// Throws FitError naming the epoch if the loss becomes non-finite.
FitResult fit_mlp(const ResponseCurveDataset& data, const FitOptions& options);

// Fits one dataset per slot; slots are independent, so this runs them in
// parallel. Results come back in input order.
std::vector<FitResult> fit_all(std::span<const ResponseCurveDataset> datasets, const FitOptions& options);

ShapeParams shape_from_yields(const YieldVector& y, const ShapeMapping& mapping = {});

// One model per natural factor, indexed by Factor.
struct FactorModels {
  std::array<std::optional<MlpModel>, kFactorCount> models;

  const MlpModel& at(Factor f) const;  // throws ConfigError when missing
  void set(MlpModel model);            // slot chosen by model.factor
};

YieldVector yields_from_factors(const FactorModels& models, const NaturalFactors& f);

// JSON: see docs/schemas.md ("benefit.mlp/1", "benefit.curve/1").
nlohmann::json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::json& j);
ResponseCurveDataset dataset_from_json(const nlohmann::json& j);

MlpModel load_model(const std::string& path);
void save_model(const MlpModel& model, const std::string& path);
ResponseCurveDataset load_dataset(const std::string& path);

// Loads <dir>/<factor_label>.json for every factor.
FactorModels load_factor_models(const std::string& dir);

}  // namespace benefit
