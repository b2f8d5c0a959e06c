#include "node2vec/logreg.hpp"

#include <cmath>
#include <stdexcept>

namespace n2v {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2, const Eigen::VectorXd& w, double b) {
  const Eigen::VectorXd z = (x * w).array() + b;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z[i]) - y[i] * z[i];
  return loss / static_cast<double>(z.size()) + 0.5 * l2 * w.squaredNorm();
}

}  // namespace

Eigen::VectorXd LogisticModel::predict_proba(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd z = (x * weights).array() + bias;
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = sigmoid(z[i]);
  return z;
}

LossAndGradient logistic_loss_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2,
                                       const Eigen::VectorXd& w, double b) {
  const double n = static_cast<double>(x.rows());
  const Eigen::VectorXd z = (x * w).array() + b;
  Eigen::VectorXd residual(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) residual[i] = sigmoid(z[i]) - y[i];
  LossAndGradient out;
  out.loss = objective(x, y, l2, w, b);
  out.grad_weights = x.transpose() * residual / n + l2 * w;
  out.grad_bias = residual.sum() / n;
  return out;
}

LogisticModel fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const LogRegOptions& options) {
  if (x.rows() == 0) throw std::invalid_argument("logistic regression needs at least one example");
  if (x.rows() != y.size()) throw std::invalid_argument("feature/label row mismatch");
  const Eigen::Index d = x.cols();
  const double n = static_cast<double>(x.rows());

  LogisticModel model;
  model.weights = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);  // weights then bias
  double current = objective(x, y, options.l2, model.weights, 0.0);

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd w = theta.head(d);
    const double b = theta[d];
    const auto lg = logistic_loss_gradient(x, y, options.l2, w, b);
    Eigen::VectorXd grad(d + 1);
    grad << lg.grad_weights, lg.grad_bias;
    model.iterations = it;
    if (grad.norm() <= options.tolerance) {
      model.converged = true;
      break;
    }

    // Hessian of the objective: [X 1]^T S [X 1] / n + diag(l2, .., l2, 0)
    const Eigen::VectorXd z = (x * w).array() + b;
    Eigen::VectorXd s(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double p = sigmoid(z[i]);
      s[i] = p * (1.0 - p);
    }
    Eigen::MatrixXd hess(d + 1, d + 1);
    const Eigen::MatrixXd sx = s.asDiagonal() * x;
    hess.topLeftCorner(d, d) = x.transpose() * sx / n;
    hess.topLeftCorner(d, d).diagonal().array() += options.l2;
    const Eigen::VectorXd cross = sx.colwise().sum().transpose() / n;
    hess.topRightCorner(d, 1) = cross;
    hess.bottomLeftCorner(1, d) = cross.transpose();
    hess(d, d) = s.sum() / n;
    // tiny ridge keeps the solve defined when the data are separable or degenerate
    hess.diagonal().array() += 1e-10;

    Eigen::VectorXd direction = -hess.ldlt().solve(grad);
    if (!direction.allFinite() || direction.dot(grad) >= 0.0) direction = -grad;

    // Armijo backtracking
    double step = 1.0;
    const double slope = direction.dot(grad);
    double next = current;
    Eigen::VectorXd candidate;
    for (int k = 0; k < 60; ++k) {
      candidate = theta + step * direction;
      next = objective(x, y, options.l2, candidate.head(d), candidate[d]);
      if (next <= current + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(next <= current)) {
      // no progress possible at double precision
      model.converged = true;
      break;
    }
    theta = candidate;
    current = next;
    model.iterations = it + 1;
  }
  model.weights = theta.head(d);
  model.bias = theta[d];
  return model;
}

Eigen::MatrixXd OvrClassifier::scores(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), static_cast<Eigen::Index>(models.size()));
  for (std::size_t l = 0; l < models.size(); ++l) {
    if (models[l]) out.col(static_cast<Eigen::Index>(l)) = models[l]->predict_proba(x);
  }
  return out;
}

OvrClassifier train_logreg_ovr(const Eigen::MatrixXd& x, const std::vector<std::vector<std::uint32_t>>& labels,
                               std::size_t num_labels, const LogRegOptions& options,
                               std::vector<std::string>* warnings) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("one label set per feature row required");
  }
  OvrClassifier clf;
  clf.models.resize(num_labels);
  for (std::size_t l = 0; l < num_labels; ++l) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.rows());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (auto lab : labels[i]) {
        if (lab >= num_labels) throw std::invalid_argument("label id out of range");
        if (lab == l) y[static_cast<Eigen::Index>(i)] = 1.0;
      }
    }
    if (y.sum() == 0.0) {
      if (warnings) warnings->push_back("label " + std::to_string(l) + " absent from training split; scored 0");
      continue;
    }
    clf.models[l] = fit_logistic(x, y, options);
  }
  return clf;
}

}  // namespace n2v
