#include "certify/mlp.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "certify/errors.hpp"

namespace certify {

namespace {

using nlohmann::json;

MLPWeights from_json(const json& j) {
  MLPWeights w;
  if (!j.contains("input_dim") || !j.contains("layers"))
    throw LoadError("weight file missing 'input_dim' or 'layers'");
  w.input_dim = j.at("input_dim").get<int>();
  if (w.input_dim < 1) throw LoadError("input_dim must be >= 1");
  const std::string act = j.value("activation", "tanh");
  if (act == "tanh")
    w.activation = Activation::Tanh;
  else if (act == "identity")
    w.activation = Activation::Identity;
  else
    throw LoadError("unknown activation '" + act + "'");

  int prev = w.input_dim;
  int index = 0;
  for (const auto& lj : j.at("layers")) {
    MLPWeights::Layer layer;
    const auto& Wj = lj.at("W");
    const auto& bj = lj.at("b");
    const int rows = static_cast<int>(Wj.size());
    if (rows == 0) throw LoadError("layer " + std::to_string(index) + ": empty weight matrix");
    const int cols = static_cast<int>(Wj.at(0).size());
    layer.W.resize(rows, cols);
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(Wj.at(r).size()) != cols)
        throw LoadError("layer " + std::to_string(index) + ": ragged weight matrix");
      for (int c = 0; c < cols; ++c) layer.W(r, c) = Wj.at(r).at(c).get<double>();
    }
    layer.b.resize(rows);
    if (static_cast<int>(bj.size()) != rows)
      throw LoadError("layer " + std::to_string(index) + ": bias length does not match rows");
    for (int r = 0; r < rows; ++r) layer.b(r) = bj.at(r).get<double>();

    if (cols != prev)
      throw LoadError("layer " + std::to_string(index) + ": expected " + std::to_string(prev) +
                      " input columns, got " + std::to_string(cols));
    if (!layer.W.allFinite() || !layer.b.allFinite())
      throw LoadError("layer " + std::to_string(index) + ": non-finite entry");
    prev = rows;
    w.layers.push_back(std::move(layer));
    ++index;
  }
  if (w.layers.empty()) throw LoadError("weight file has no layers");
  if (w.layers.back().b.size() != 1) throw LoadError("output dimension must be 1");
  return w;
}

double activate(Activation a, double x) { return a == Activation::Tanh ? std::tanh(x) : x; }
double activate_deriv(Activation a, double y /* activated value */, double x) {
  (void)x;
  return a == Activation::Tanh ? 1.0 - y * y : 1.0;
}

Eigen::VectorXd pack_input(const Vec2& p, Params mu, int dim, bool with_time, double t = 0.0) {
  Eigen::VectorXd z(dim);
  int k = 0;
  if (with_time) z(k++) = t;
  z(k++) = p.x();
  z(k++) = p.y();
  for (double m : mu) {
    if (k >= dim) throw std::invalid_argument("too many parameters for network input");
    z(k++) = m;
  }
  if (k != dim) throw std::invalid_argument("network input dimension mismatch");
  return z;
}

}  // namespace

MLPWeights mlp_parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("weight file is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

MLPWeights mlp_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open weight file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return mlp_parse(ss.str());
}

double mlp_eval(const MLPWeights& w, const Eigen::VectorXd& z) {
  if (z.size() != w.input_dim) throw std::invalid_argument("mlp_eval: input dimension mismatch");
  Eigen::VectorXd h = z;
  for (std::size_t l = 0; l < w.layers.size(); ++l) {
    h = (w.layers[l].W * h + w.layers[l].b).eval();
    if (l + 1 < w.layers.size())
      for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = activate(w.activation, h(i));
  }
  return h(0);
}

Eigen::VectorXd mlp_input_grad(const MLPWeights& w, const Eigen::VectorXd& z) {
  if (z.size() != w.input_dim) throw std::invalid_argument("mlp_input_grad: input dimension mismatch");
  // forward pass storing activated outputs per hidden layer
  std::vector<Eigen::VectorXd> activated;
  Eigen::VectorXd h = z;
  for (std::size_t l = 0; l + 1 < w.layers.size(); ++l) {
    h = (w.layers[l].W * h + w.layers[l].b).eval();
    for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = activate(w.activation, h(i));
    activated.push_back(h);
  }
  // reverse pass
  Eigen::VectorXd bar = w.layers.back().W.transpose() * Eigen::VectorXd::Ones(1);
  for (std::size_t l = w.layers.size() - 1; l-- > 0;) {
    const Eigen::VectorXd& y = activated[l];
    for (Eigen::Index i = 0; i < bar.size(); ++i) bar(i) *= activate_deriv(w.activation, y(i), 0.0);
    bar = (w.layers[l].W.transpose() * bar).eval();
  }
  return bar;
}

MlpField::MlpField(MLPWeights w) : w_(std::move(w)) {}

double MlpField::value(const Vec2& p, Params mu) const {
  return mlp_eval(w_, pack_input(p, mu, w_.input_dim, false));
}

Vec2 MlpField::gradient(const Vec2& p, Params mu) const {
  const Eigen::VectorXd g = mlp_input_grad(w_, pack_input(p, mu, w_.input_dim, false));
  return {g(0), g(1)};
}

MlpSpaceTimeField::MlpSpaceTimeField(MLPWeights w) : w_(std::move(w)) {}

double MlpSpaceTimeField::value(double t, const Vec2& p, Params mu) const {
  return mlp_eval(w_, pack_input(p, mu, w_.input_dim, true, t));
}

Vec2 MlpSpaceTimeField::gradient(double t, const Vec2& p, Params mu) const {
  const Eigen::VectorXd g = mlp_input_grad(w_, pack_input(p, mu, w_.input_dim, true, t));
  return {g(1), g(2)};
}

double MlpSpaceTimeField::time_derivative(double t, const Vec2& p, Params mu) const {
  return mlp_input_grad(w_, pack_input(p, mu, w_.input_dim, true, t))(0);
}

}  // namespace certify
