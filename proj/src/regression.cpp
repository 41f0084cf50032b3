#include "elimination/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace elim {

double RegressionModel::coefficient(const std::string& name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) throw std::out_of_range("no feature named " + name);
  return coefficients.at(1 + static_cast<std::size_t>(it - feature_names.begin()));
}

RegressionModel fit_ols(const std::vector<std::vector<double>>& rows, std::span<const double> response,
                        std::vector<std::string> feature_names) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(feature_names.size());
  if (static_cast<std::size_t>(n) != response.size()) throw RegressionError("row count differs from response count");
  if (n <= k + 1) {
    throw RegressionError("need more than " + std::to_string(k + 1) + " rows, got " + std::to_string(n));
  }

  Eigen::MatrixXd x(n, k);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != k) throw RegressionError("ragged feature row");
    for (Eigen::Index j = 0; j < k; ++j) x(i, j) = rows[i][j];
    y(i) = response[i];
  }

  // Centering removes the intercept column; scaling to unit norm makes the
  // rank test independent of feature units.
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  Eigen::VectorXd scale(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    scale(j) = xc.col(j).norm();
    const double magnitude = std::max(1.0, x.col(j).cwiseAbs().maxCoeff());
    if (scale(j) <= 1e-12 * magnitude * std::sqrt(static_cast<double>(n))) {
      throw RegressionError("feature '" + feature_names[j] + "' is constant");
    }
    xc.col(j) /= scale(j);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) {
    std::string names;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index j = qr.rank(); j < k; ++j) {
      if (!names.empty()) names += ", ";
      names += feature_names[perm(j)];
    }
    throw RegressionError("collinear feature columns: " + names);
  }

  const Eigen::VectorXd beta_scaled = qr.solve(yc);
  const Eigen::VectorXd beta = beta_scaled.cwiseQuotient(scale);
  const double intercept = y_mean - x_mean.dot(beta);

  const Eigen::VectorXd residual = yc - xc * beta_scaled;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = yc.squaredNorm();

  RegressionModel model;
  model.feature_names = std::move(feature_names);
  model.observations = static_cast<std::size_t>(n);
  model.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 0.0;
  model.coefficients.push_back(intercept);
  for (Eigen::Index j = 0; j < k; ++j) model.coefficients.push_back(beta(j));

  // Var(beta) = sigma^2 (X'X)^-1 on the full design with an intercept column.
  const double dof = static_cast<double>(n - k - 1);
  const double sigma2 = ss_res / dof;
  Eigen::MatrixXd design(n, k + 1);
  design.col(0).setOnes();
  design.rightCols(k) = x;
  const Eigen::MatrixXd gram_inv =
      (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(k + 1, k + 1));
  for (Eigen::Index j = 0; j <= k; ++j) model.standard_errors.push_back(std::sqrt(sigma2 * gram_inv(j, j)));
  return model;
}

}  // namespace elim
