/*
 * Copyright 2026 kobo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KOBO_GP_HPP
#define KOBO_GP_HPP

#include <kobo/observations.hpp>

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace kobo {

/// Hyperparameters of the unit-variance squared-exponential GP
/// k(a, b) = exp(-||a - b||^2 / lengthscale). Output standardization stands
/// in for an amplitude hyperparameter.
struct KernelParams {
    double lengthscale = 1.0; // in normalized-input units, > 0
    double jitter = 1e-6;     // added to the Gram diagonal, > 0
    double priorMean = 0.0;   // in standardized-output units
};

/// Predictive mean and standard deviation, in standardized-output units.
struct PredictiveMoments {
    double mean = 0.0;
    double stddev = 0.0;
};

/// k(a, b); symmetric, in (0, 1].
double kernelEval(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const KernelParams& params);

/// Noise-free exact GP conditioned on (inputs, targets) through a jittered
/// Cholesky factor. Immutable after fit; predictions are pure reads and safe
/// to issue concurrently.
class GpModel {
public:
    /// Fits on arbitrary targets (standardized outputs, or g-space values).
    /// On Cholesky failure the jitter escalates tenfold up to 1e-2 before a
    /// FitError carrying the attempted ladder is thrown. params().jitter
    /// reports the level that succeeded.
    static GpModel fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                       const KernelParams& params);

    /// Fits on a data set's standardized outputs.
    static GpModel fit(const ObservationSet& data, const KernelParams& params);

    /// mean = m + k*' w; var = max(0, k** - ||L^-1 k*||^2).
    PredictiveMoments predict(const Eigen::VectorXd& x) const;

    /// Log marginal likelihood of the training targets under the fitted
    /// factorization (the achieved jitter, not necessarily the requested one).
    double logMarginalLikelihood() const;

    const KernelParams& params() const { return m_Params; }
    const Eigen::MatrixXd& inputs() const { return m_Inputs; }
    const Eigen::VectorXd& targets() const { return m_Targets; }
    const Eigen::MatrixXd& cholLower() const { return m_CholLower; }
    const Eigen::VectorXd& weights() const { return m_Weights; }

private:
    GpModel() = default;

    KernelParams m_Params;
    Eigen::MatrixXd m_Inputs;
    Eigen::VectorXd m_Targets;
    Eigen::MatrixXd m_CholLower;
    Eigen::VectorXd m_Weights;
};

/// -1/2 (y-m)' (K+jI)^-1 (y-m) - sum_i log L_ii - n/2 log 2pi, via Cholesky.
double logMarginalLikelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                             const KernelParams& params);
double logMarginalLikelihood(const ObservationSet& data, const KernelParams& params);

/// Grid entry maximizing the log marginal likelihood; ties break toward the
/// smaller lengthscale. Grid entries whose fits fail outright are skipped;
/// if all fail a SelectionError is thrown.
KernelParams selectLengthscale(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                               std::span<const double> grid, const KernelParams& base);
KernelParams selectLengthscale(const ObservationSet& data, std::span<const double> grid);

/// 25 log-spaced lengthscales spanning [0.01, 10].
std::vector<double> defaultLengthscaleGrid();

} // namespace kobo

#endif // KOBO_GP_HPP
