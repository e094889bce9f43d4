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

#ifndef KOBO_ACQUISITION_HPP
#define KOBO_ACQUISITION_HPP

#include <kobo/gp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace kobo {

/// EI, UCB, EI* and MES* are maximized; CBM and ERM are minimized.
enum class AcquisitionKind {
    EI,
    UCB,
    EI_STAR,
    MES_STAR,
    CBM,
    ERM,
};

enum class Direction {
    MAXIMIZE,
    MINIMIZE,
};

Direction acquisitionDirection(AcquisitionKind kind);
std::string acquisitionName(AcquisitionKind kind);
AcquisitionKind parseAcquisition(const std::string& name);

/// Everything an acquisition evaluation needs beyond predictive moments.
/// All values live in standardized-output units.
struct AcquisitionContext {
    std::optional<double> fStarStd; // absent for EI/UCB
    std::optional<double> incumbent; // xi, for EI
    double beta = 0.0;
    double delta = 0.1;
    int iteration = 1;
};

/// E[max(0, f - xi)] in closed form; >= 0.
double acqEi(const PredictiveMoments& m, const AcquisitionContext& ctx);

/// mu + sqrt(beta) sigma.
double acqUcb(const PredictiveMoments& m, const AcquisitionContext& ctx);

/// EI with the known optimum as the incumbent: sigma phi(z) + (mu - f*) Phi(z),
/// z = (mu - f*)/sigma.
double acqEiStar(const PredictiveMoments& m, const AcquisitionContext& ctx);

/// gamma phi(gamma) / (2 Phi(gamma)) - log Phi(gamma), gamma = (f* - mu)/sigma.
/// At sigma = 0: 0 when mu <= f*, error otherwise (empty truncation).
double acqMesStar(const PredictiveMoments& m, const AcquisitionContext& ctx);

/// Confidence bound minimization: |mu - f*| + sqrt(beta) sigma.
double acqCbm(const PredictiveMoments& m, const AcquisitionContext& ctx);

/// Expected regret minimization: sigma phi(z) + (f* - mu) Phi(z) with
/// z = (f* - mu)/sigma; the expected value of the regret f* - f.
double acqErm(const PredictiveMoments& m, const AcquisitionContext& ctx);

double evaluateAcquisition(AcquisitionKind kind, const PredictiveMoments& m,
                           const AcquisitionContext& ctx);

/// beta_t = max(1e-6, 2 f*_std + 300 log^3(t / delta)), natural logs. The
/// floor keeps sqrt(beta) real when standardized f* drives the formula
/// negative.
double betaSchedule(int t, double fStarStd, double delta);

constexpr double BETA_FLOOR = 1e-6;

struct OptimizerBudget {
    int nSamples = 0;
    int nRefine = 5;
};

/// n_samples = 200 d, 5 refined candidates.
OptimizerBudget defaultOptimizerBudget(int dim);

struct AcquisitionOptimum {
    Eigen::VectorXd x; // in [0,1]^d
    double value = 0.0;
};

/// Deterministic multi-start search over the unit hypercube: n_samples
/// uniform draws, the best n_refine survivors polished by coordinate-wise
/// pattern descent down to step 1e-4. Never returns a point worse (per
/// direction) than the best raw sample; ties resolve by (value, then
/// lexicographic point) so the result is independent of evaluation order.
AcquisitionOptimum optimizeAcquisition(const std::function<double(const Eigen::VectorXd&)>& evaluate,
                                       Direction direction, int dim, const OptimizerBudget& budget,
                                       std::uint64_t seed);

} // namespace kobo

#endif // KOBO_ACQUISITION_HPP
