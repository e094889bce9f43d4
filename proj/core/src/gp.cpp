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

#include <kobo/gp.hpp>

#include <kobo/errors.hpp>

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace kobo {
namespace {

constexpr double HALF_LOG_2PI = 0.91893853320467274178;
constexpr double MAX_JITTER = 1e-2;

void validateParams(const KernelParams& params) {
    if (!(params.lengthscale > 0.0)) {
        throw ContractViolation("kernel lengthscale must be positive");
    }
    if (!(params.jitter > 0.0)) {
        throw ContractViolation("jitter must be positive");
    }
}

Eigen::MatrixXd gramMatrix(const Eigen::MatrixXd& inputs, double lengthscale) {
    Eigen::Index n = inputs.rows();
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        gram(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            double sq = (inputs.row(i) - inputs.row(j)).squaredNorm();
            double k = std::exp(-sq / lengthscale);
            gram(i, j) = k;
            gram(j, i) = k;
        }
    }
    return gram;
}

std::vector<double> jitterLadder(double start) {
    std::vector<double> ladder{start};
    for (double j = start * 10.0; j <= MAX_JITTER * (1.0 + 1e-12); j *= 10.0) {
        ladder.push_back(j);
    }
    return ladder;
}

// Returns the lower factor of gram + jitter*I, or empty on failure.
Eigen::MatrixXd tryCholesky(const Eigen::MatrixXd& gram, double jitter) {
    Eigen::MatrixXd jittered = gram;
    jittered.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(jittered);
    if (llt.info() != Eigen::Success) {
        return {};
    }
    Eigen::MatrixXd lower = llt.matrixL();
    if (!(lower.diagonal().array() > 0.0).all()) { // also rejects NaN pivots
        return {};
    }
    return lower;
}
}

double kernelEval(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const KernelParams& params) {
    validateParams(params);
    if (a.size() != b.size()) {
        throw ContractViolation("kernel arguments must have equal dimension");
    }
    return std::exp(-(a - b).squaredNorm() / params.lengthscale);
}

GpModel GpModel::fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                     const KernelParams& params) {
    validateParams(params);
    if (inputs.rows() < 1) {
        throw ContractViolation("fit requires at least one observation");
    }
    if (inputs.rows() != targets.size()) {
        throw ContractViolation("inputs and targets must have equal length");
    }

    Eigen::MatrixXd gram = gramMatrix(inputs, params.lengthscale);
    std::vector<double> ladder = jitterLadder(params.jitter);
    for (double jitter : ladder) {
        Eigen::MatrixXd lower = tryCholesky(gram, jitter);
        if (lower.size() == 0) {
            continue;
        }
        GpModel model;
        model.m_Params = params;
        model.m_Params.jitter = jitter;
        model.m_Inputs = inputs;
        model.m_Targets = targets;
        model.m_CholLower = std::move(lower);
        Eigen::VectorXd residual = targets.array() - params.priorMean;
        model.m_Weights = model.m_CholLower.triangularView<Eigen::Lower>().solve(residual);
        model.m_CholLower.triangularView<Eigen::Lower>().transpose().solveInPlace(model.m_Weights);
        return model;
    }

    std::ostringstream what;
    what << "Cholesky factorization failed for jitter levels";
    for (double jitter : ladder) {
        what << ' ' << jitter;
    }
    throw FitError(what.str(), ladder);
}

GpModel GpModel::fit(const ObservationSet& data, const KernelParams& params) {
    return fit(data.inputs(), data.outputsStd(), params);
}

PredictiveMoments GpModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != m_Inputs.cols()) {
        throw ContractViolation("query dimension does not match training inputs");
    }
    Eigen::Index n = m_Inputs.rows();
    Eigen::VectorXd kstar(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        kstar(i) = std::exp(-(m_Inputs.row(i).transpose() - x).squaredNorm() / m_Params.lengthscale);
    }
    PredictiveMoments moments;
    moments.mean = m_Params.priorMean + kstar.dot(m_Weights);
    Eigen::VectorXd v = m_CholLower.triangularView<Eigen::Lower>().solve(kstar);
    double variance = std::max(0.0, 1.0 - v.squaredNorm());
    moments.stddev = std::sqrt(variance);
    return moments;
}

double GpModel::logMarginalLikelihood() const {
    double n = static_cast<double>(m_Targets.size());
    Eigen::VectorXd residual = m_Targets.array() - m_Params.priorMean;
    return -0.5 * residual.dot(m_Weights) - m_CholLower.diagonal().array().log().sum() -
           n * HALF_LOG_2PI;
}

double logMarginalLikelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                             const KernelParams& params) {
    return GpModel::fit(inputs, targets, params).logMarginalLikelihood();
}

double logMarginalLikelihood(const ObservationSet& data, const KernelParams& params) {
    return logMarginalLikelihood(data.inputs(), data.outputsStd(), params);
}

KernelParams selectLengthscale(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                               std::span<const double> grid, const KernelParams& base) {
    if (grid.empty()) {
        throw ContractViolation("lengthscale grid must be nonempty");
    }
    bool found = false;
    double bestLengthscale = 0.0;
    double bestLml = 0.0;
    for (double lengthscale : grid) {
        if (!(lengthscale > 0.0)) {
            throw ContractViolation("lengthscale grid entries must be positive");
        }
        KernelParams candidate = base;
        candidate.lengthscale = lengthscale;
        double lml = 0.0;
        try {
            lml = logMarginalLikelihood(inputs, targets, candidate);
        } catch (const FitError&) {
            continue;
        }
        if (!found || lml > bestLml || (lml == bestLml && lengthscale < bestLengthscale)) {
            found = true;
            bestLml = lml;
            bestLengthscale = lengthscale;
        }
    }
    if (!found) {
        throw SelectionError("every lengthscale in the grid failed to factorize");
    }
    KernelParams selected = base;
    selected.lengthscale = bestLengthscale;
    return selected;
}

KernelParams selectLengthscale(const ObservationSet& data, std::span<const double> grid) {
    return selectLengthscale(data.inputs(), data.outputsStd(), grid, KernelParams{});
}

std::vector<double> defaultLengthscaleGrid() {
    constexpr int COUNT = 25;
    const double logLo = std::log(0.01);
    const double logHi = std::log(10.0);
    std::vector<double> grid(COUNT);
    for (int i = 0; i < COUNT; ++i) {
        grid[static_cast<std::size_t>(i)] =
            std::exp(logLo + (logHi - logLo) * static_cast<double>(i) / (COUNT - 1));
    }
    return grid;
}

} // namespace kobo
