#include "benefit/genmodel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <stdexcept>

#include "benefit/errors.hpp"
#include "benefit/rng.hpp"

namespace benefit {

namespace {

constexpr const char* kModelSchema = "benefit.mlp/1";
constexpr const char* kCurveSchema = "benefit.curve/1";

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::Identity:
      return z;
  }
  return z;
}

// Derivative expressed through the activation's output.
double activate_slope(Activation a, double out) {
  switch (a) {
    case Activation::Tanh:
      return 1.0 - out * out;
    case Activation::Sigmoid:
      return out * (1.0 - out);
    case Activation::Identity:
      return 1.0;
  }
  return 1.0;
}

double normalise(const MlpModel& m, double x) { return (x - m.input_min) / (m.input_max - m.input_min); }

// Activations of every layer, including the normalised input as layer 0.
std::vector<std::vector<double>> forward_trace(const MlpModel& m, double x) {
  std::vector<std::vector<double>> acts;
  acts.reserve(m.layers.size() + 1);
  acts.push_back({normalise(m, x)});
  for (const auto& layer : m.layers) {
    const auto& in = acts.back();
    std::vector<double> out(static_cast<std::size_t>(layer.outputs));
    for (int r = 0; r < layer.outputs; ++r) {
      double z = layer.bias[r];
      const double* row = layer.weights.data() + static_cast<std::size_t>(r) * layer.inputs;
      for (int c = 0; c < layer.inputs; ++c) z += row[c] * in[c];
      out[r] = activate(layer.activation, z);
    }
    acts.push_back(std::move(out));
  }
  return acts;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

}  // namespace

std::string_view activation_label(Activation a) noexcept {
  switch (a) {
    case Activation::Tanh:
      return "tanh";
    case Activation::Sigmoid:
      return "sigmoid";
    case Activation::Identity:
      return "identity";
  }
  return "identity";
}

Activation activation_from_label(std::string_view label) {
  if (label == "tanh") return Activation::Tanh;
  if (label == "sigmoid") return Activation::Sigmoid;
  if (label == "identity") return Activation::Identity;
  throw ValidationError("unknown activation '" + std::string(label) + "'");
}

void MlpModel::validate() const {
  if (!(input_min < input_max)) throw ConfigError("mlp '" + factor + "': input_norm.min must be < max");
  if (layers.empty()) throw ConfigError("mlp '" + factor + "': no layers");
  int width = 1;
  for (const auto& l : layers) {
    if (l.inputs != width || l.outputs < 1) throw ConfigError("mlp '" + factor + "': layer shape mismatch");
    if (l.weights.size() != static_cast<std::size_t>(l.inputs) * l.outputs ||
        l.bias.size() != static_cast<std::size_t>(l.outputs)) {
      throw ConfigError("mlp '" + factor + "': parameter count mismatch");
    }
    width = l.outputs;
  }
  if (width != 1) throw ConfigError("mlp '" + factor + "': final layer must have one output");
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

void ResponseCurveDataset::validate() const {
  if (samples.size() < 8) throw ValidationError("dataset '" + factor + "': need at least 8 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, y] = samples[i];
    if (!std::isfinite(x) || !(y >= 0.0 && y <= 1.0)) {
      throw ValidationError("dataset '" + factor + "': sample " + std::to_string(i) + " out of range");
    }
    if (i > 0 && !(samples[i - 1].first < x)) {
      throw ValidationError("dataset '" + factor + "': factor values must be strictly increasing");
    }
  }
}

double mlp_raw(const MlpModel& model, double x) { return forward_trace(model, x).back()[0]; }

double mlp_forward(const MlpModel& model, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("mlp '" + model.factor + "': non-finite input");
  return std::clamp(mlp_raw(model, x), 0.0, 1.0);
}

std::vector<double> flatten_parameters(const MlpModel& model) {
  std::vector<double> p;
  p.reserve(model.parameter_count());
  for (const auto& l : model.layers) {
    p.insert(p.end(), l.weights.begin(), l.weights.end());
    p.insert(p.end(), l.bias.begin(), l.bias.end());
  }
  return p;
}

void assign_parameters(MlpModel& model, std::span<const double> params) {
  if (params.size() != model.parameter_count()) throw std::invalid_argument("parameter count mismatch");
  auto it = params.begin();
  for (auto& l : model.layers) {
    std::copy_n(it, l.weights.size(), l.weights.begin());
    it += static_cast<std::ptrdiff_t>(l.weights.size());
    std::copy_n(it, l.bias.size(), l.bias.begin());
    it += static_cast<std::ptrdiff_t>(l.bias.size());
  }
}

LossGradient mse_gradient(const MlpModel& model, const ResponseCurveDataset& data) {
  LossGradient out;
  out.gradient.assign(model.parameter_count(), 0.0);

  // Offsets of each layer's block in the flattened parameter vector.
  std::vector<std::size_t> offset(model.layers.size());
  std::size_t pos = 0;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    offset[l] = pos;
    pos += model.layers[l].weights.size() + model.layers[l].bias.size();
  }

  const double n = static_cast<double>(data.samples.size());
  for (const auto& [x, target] : data.samples) {
    const auto acts = forward_trace(model, x);
    const double err = acts.back()[0] - target;
    out.loss += err * err / n;

    std::vector<double> upstream = {2.0 * err / n};
    for (std::size_t l = model.layers.size(); l-- > 0;) {
      const auto& layer = model.layers[l];
      const auto& in = acts[l];
      const auto& act = acts[l + 1];
      std::vector<double> delta(static_cast<std::size_t>(layer.outputs));
      for (int r = 0; r < layer.outputs; ++r) delta[r] = upstream[r] * activate_slope(layer.activation, act[r]);

      double* gw = out.gradient.data() + offset[l];
      double* gb = gw + layer.weights.size();
      std::vector<double> next(static_cast<std::size_t>(layer.inputs), 0.0);
      for (int r = 0; r < layer.outputs; ++r) {
        gb[r] += delta[r];
        for (int c = 0; c < layer.inputs; ++c) {
          const std::size_t k = static_cast<std::size_t>(r) * layer.inputs + c;
          gw[k] += delta[r] * in[c];
          next[c] += layer.weights[k] * delta[r];
        }
      }
      upstream = std::move(next);
    }
  }
  return out;
}

FitResult fit_mlp(const ResponseCurveDataset& data, const FitOptions& options) {
  data.validate();
  if (options.hidden < 1 || options.epochs < 1 || !(options.lr > 0.0)) {
    throw std::invalid_argument("fit: hidden >= 1, epochs >= 1 and lr > 0 required");
  }

  MlpModel model;
  model.factor = data.factor;
  model.input_min = data.samples.front().first;
  model.input_max = data.samples.back().first;

  // Init draw order: hidden weights, hidden biases, output weights.
  Rng rng(derive_seed(options.seed, Stream::FitInit, 0));
  DenseLayer hidden{1, options.hidden, {}, {}, Activation::Tanh};
  for (int i = 0; i < options.hidden; ++i) hidden.weights.push_back(rng.uniform(-4.0, 4.0));
  for (int i = 0; i < options.hidden; ++i) hidden.bias.push_back(rng.uniform(-2.0, 2.0));
  DenseLayer output{options.hidden, 1, {}, {0.0}, Activation::Sigmoid};
  const double scale = 1.0 / std::sqrt(static_cast<double>(options.hidden));
  for (int i = 0; i < options.hidden; ++i) output.weights.push_back(rng.uniform(-scale, scale));
  model.layers = {std::move(hidden), std::move(output)};

  auto params = flatten_parameters(model);
  double loss = 0.0;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    const auto lg = mse_gradient(model, data);
    if (!std::isfinite(lg.loss)) throw FitError(data.factor, epoch);
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= options.lr * lg.gradient[i];
    assign_parameters(model, params);
    loss = lg.loss;
  }
  loss = mse_gradient(model, data).loss;
  if (!std::isfinite(loss)) throw FitError(data.factor, options.epochs);
  return {std::move(model), loss};
}

std::vector<FitResult> fit_all(std::span<const ResponseCurveDataset> datasets, const FitOptions& options) {
  const auto n = static_cast<std::ptrdiff_t>(datasets.size());
  std::vector<FitResult> results(datasets.size());
  std::vector<std::exception_ptr> errors(datasets.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      results[i] = fit_mlp(datasets[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

ShapeParams shape_from_yields(const YieldVector& y, const ShapeMapping& mapping) {
  const auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };
  const double w = unit(mapping.irradiation_weight);
  ShapeParams s;
  s.blade_width = unit(y.salinity);
  s.blade_length = unit(y.flow);
  s.blade_density = unit(y.temperature);
  s.stipe_length = unit(w * unit(y.irradiation) + (1.0 - w) * unit(y.nutrient));
  return s;
}

const MlpModel& FactorModels::at(Factor f) const {
  const auto& slot = models[static_cast<std::size_t>(f)];
  if (!slot) throw ConfigError("no model loaded for factor '" + std::string(factor_label(f)) + "'");
  return *slot;
}

void FactorModels::set(MlpModel model) {
  const Factor f = factor_from_label(model.factor);
  models[static_cast<std::size_t>(f)] = std::move(model);
}

YieldVector yields_from_factors(const FactorModels& models, const NaturalFactors& f) {
  YieldVector y;
  y.temperature = mlp_forward(models.at(Factor::WaterTemperature), f[Factor::WaterTemperature]);
  y.salinity = mlp_forward(models.at(Factor::Salinity), f[Factor::Salinity]);
  y.flow = mlp_forward(models.at(Factor::FlowVelocity), f[Factor::FlowVelocity]);
  y.irradiation = mlp_forward(models.at(Factor::Irradiation), f[Factor::Irradiation]);
  y.nutrient = mlp_forward(models.at(Factor::NutrientConcentration), f[Factor::NutrientConcentration]);
  return y;
}

nlohmann::json model_to_json(const MlpModel& model) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : model.layers) {
    layers.push_back({{"inputs", l.inputs},
                      {"outputs", l.outputs},
                      {"activation", activation_label(l.activation)},
                      {"weights", l.weights},
                      {"bias", l.bias}});
  }
  return {{"schema", kModelSchema},
          {"factor", model.factor},
          {"input_norm", {{"min", model.input_min}, {"max", model.input_max}}},
          {"layers", std::move(layers)}};
}

MlpModel model_from_json(const nlohmann::json& j) {
  MlpModel m;
  try {
    if (j.at("schema").get<std::string>() != kModelSchema) throw ConfigError("unsupported model schema");
    m.factor = j.at("factor").get<std::string>();
    m.input_min = j.at("input_norm").at("min").get<double>();
    m.input_max = j.at("input_norm").at("max").get<double>();
    for (const auto& jl : j.at("layers")) {
      DenseLayer l;
      l.inputs = jl.at("inputs").get<int>();
      l.outputs = jl.at("outputs").get<int>();
      l.activation = activation_from_label(jl.at("activation").get<std::string>());
      l.weights = jl.at("weights").get<std::vector<double>>();
      l.bias = jl.at("bias").get<std::vector<double>>();
      m.layers.push_back(std::move(l));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model json: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("model json: ") + e.what());
  }
  m.validate();
  return m;
}

ResponseCurveDataset dataset_from_json(const nlohmann::json& j) {
  ResponseCurveDataset d;
  try {
    if (j.at("schema").get<std::string>() != kCurveSchema) throw ValidationError("unsupported curve schema");
    d.factor = j.at("factor").get<std::string>();
    d.unit = j.value("unit", "");
    for (const auto& s : j.at("samples")) d.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("curve json: ") + e.what());
  }
  d.validate();
  return d;
}

MlpModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

void save_model(const MlpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << model_to_json(model).dump(2) << '\n';
}

ResponseCurveDataset load_dataset(const std::string& path) { return dataset_from_json(read_json_file(path)); }

FactorModels load_factor_models(const std::string& dir) {
  FactorModels fm;
  for (Factor f : kAllFactors) {
    MlpModel m = load_model(dir + "/" + std::string(factor_label(f)) + ".json");
    if (m.factor != factor_label(f)) throw ConfigError("model file for '" + std::string(factor_label(f)) + "' is labelled '" + m.factor + "'");
    fm.set(std::move(m));
  }
  return fm;
}

}  // namespace benefit
