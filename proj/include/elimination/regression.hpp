#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace elim {

class RegressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegressionModel {
  std::vector<std::string> feature_names;
  std::vector<double> coefficients;     // intercept first, then one per feature
  std::vector<double> standard_errors;  // same layout
  double r_squared = 0.0;
  std::size_t observations = 0;
  /// Constant columns removed before fitting (only by callers that opt in).
  std::vector<std::string> dropped_features;

  double intercept() const { return coefficients.at(0); }
  double coefficient(const std::string& name) const;
};

/// Ordinary least squares with an intercept. `rows[i]` holds the feature
/// values of observation i. R^2 = 1 - SSres/SStot, reported as 0 when the
/// response has no variance.
///
/// Throws RegressionError when there are too few rows, a feature column is
/// constant, or the columns are collinear (the message names them).
RegressionModel fit_ols(const std::vector<std::vector<double>>& rows, std::span<const double> response,
                        std::vector<std::string> feature_names);

}  // namespace elim
