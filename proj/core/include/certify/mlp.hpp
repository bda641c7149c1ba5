#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "certify/field.hpp"

namespace certify {

enum class Activation { Tanh, Identity };

/// Feed-forward network weights; activation after every layer but the last.
struct MLPWeights {
  struct Layer {
    Eigen::MatrixXd W;
    Eigen::VectorXd b;
  };
  int input_dim = 0;
  Activation activation = Activation::Tanh;
  std::vector<Layer> layers;
};

/// Load and validate weights from the plain-JSON weight file format:
/// {"input_dim": d, "activation": "tanh", "layers": [{"W": [[...]], "b": [...]}, ...]}
MLPWeights mlp_load(const std::string& path);
MLPWeights mlp_parse(const std::string& json_text);

double mlp_eval(const MLPWeights& w, const Eigen::VectorXd& z);

/// Exact reverse-mode gradient of the scalar output w.r.t. every input.
Eigen::VectorXd mlp_input_grad(const MLPWeights& w, const Eigen::VectorXd& z);

/// Field adapter: network input is (x, y, mu...).
class MlpField : public Field {
 public:
  explicit MlpField(MLPWeights w);
  double value(const Vec2& p, Params mu) const override;
  Vec2 gradient(const Vec2& p, Params mu) const override;

 private:
  MLPWeights w_;
};

/// Space-time adapter: network input is (t, x, y, mu...).
class MlpSpaceTimeField : public SpaceTimeField {
 public:
  explicit MlpSpaceTimeField(MLPWeights w);
  double value(double t, const Vec2& p, Params mu) const override;
  Vec2 gradient(double t, const Vec2& p, Params mu) const override;
  double time_derivative(double t, const Vec2& p, Params mu) const override;

 private:
  MLPWeights w_;
};

}  // namespace certify
