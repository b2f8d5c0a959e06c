#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace n2v {

struct LogRegOptions {
  double l2 = 1e-4;                // penalty (l2/2)*||w||^2 on weights, not on the bias
  double tolerance = 1e-6;         // stop when the gradient norm falls below this
  std::size_t max_iterations = 10000;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  double decision(const Eigen::Ref<const Eigen::RowVectorXd>& x) const { return x.dot(weights) + bias; }
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& x) const;
};

struct LossAndGradient {
  double loss = 0.0;
  Eigen::VectorXd grad_weights;
  double grad_bias = 0.0;
};

// Mean log-loss plus (l2/2)*||w||^2, with its gradient. Labels are 0/1.
LossAndGradient logistic_loss_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2,
                                       const Eigen::VectorXd& w, double b);

// Minimizes the objective above with damped Newton steps until the gradient
// norm drops below options.tolerance or the iteration cap is hit.
LogisticModel fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const LogRegOptions& options = {});

// One binary model per label; a label with no positive training example has no
// model and scores 0.
struct OvrClassifier {
  std::vector<std::optional<LogisticModel>> models;

  std::size_t num_labels() const { return models.size(); }
  // rows = examples, columns = labels (probabilities).
  Eigen::MatrixXd scores(const Eigen::MatrixXd& x) const;
};

OvrClassifier train_logreg_ovr(const Eigen::MatrixXd& x, const std::vector<std::vector<std::uint32_t>>& labels,
                               std::size_t num_labels, const LogRegOptions& options = {},
                               std::vector<std::string>* warnings = nullptr);

}  // namespace n2v
