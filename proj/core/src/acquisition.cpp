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

#include <kobo/acquisition.hpp>

#include <kobo/errors.hpp>
#include <kobo/math.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kobo {
namespace {

constexpr double REFINE_STEP_INITIAL = 0.25;
constexpr double REFINE_STEP_MIN = 1e-4;
constexpr int REFINE_SWEEP_CAP = 200;

double requireFStar(const AcquisitionContext& ctx, const char* who) {
    if (!ctx.fStarStd) {
        throw ConfigError(std::string(who) + " requires the known optimum f*");
    }
    return *ctx.fStarStd;
}

// E[max(0, delta + sigma Z)] for Z ~ N(0,1); shared by EI, EI* and ERM.
double expectedPositivePart(double delta, double sigma) {
    if (sigma < 0.0) {
        throw ContractViolation("predictive standard deviation must be nonnegative");
    }
    if (sigma == 0.0) {
        return std::max(0.0, delta);
    }
    double z = delta / sigma;
    return std::max(0.0, sigma * stdNormalPdf(z) + delta * stdNormalCdf(z));
}

// Lexicographic comparison used to break value ties deterministically.
bool lexLess(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) {
            return a(i) < b(i);
        }
    }
    return false;
}
}

Direction acquisitionDirection(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::CBM:
    case AcquisitionKind::ERM:
        return Direction::MINIMIZE;
    default:
        return Direction::MAXIMIZE;
    }
}

std::string acquisitionName(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::EI:
        return "ei";
    case AcquisitionKind::UCB:
        return "ucb";
    case AcquisitionKind::EI_STAR:
        return "eistar";
    case AcquisitionKind::MES_STAR:
        return "messtar";
    case AcquisitionKind::CBM:
        return "cbm";
    case AcquisitionKind::ERM:
        return "erm";
    }
    throw ContractViolation("unknown acquisition kind");
}

AcquisitionKind parseAcquisition(const std::string& name) {
    if (name == "ei") {
        return AcquisitionKind::EI;
    }
    if (name == "ucb") {
        return AcquisitionKind::UCB;
    }
    if (name == "eistar") {
        return AcquisitionKind::EI_STAR;
    }
    if (name == "messtar") {
        return AcquisitionKind::MES_STAR;
    }
    if (name == "cbm") {
        return AcquisitionKind::CBM;
    }
    if (name == "erm") {
        return AcquisitionKind::ERM;
    }
    throw ConfigError("unknown acquisition '" + name +
                      "'; valid: ei, ucb, eistar, messtar, cbm, erm");
}

double acqEi(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    if (!ctx.incumbent) {
        throw ConfigError("EI requires an incumbent");
    }
    return expectedPositivePart(m.mean - *ctx.incumbent, m.stddev);
}

double acqUcb(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    if (ctx.beta < 0.0) {
        throw ContractViolation("beta must be nonnegative");
    }
    return m.mean + std::sqrt(ctx.beta) * m.stddev;
}

double acqEiStar(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    double fStar = requireFStar(ctx, "EI*");
    return expectedPositivePart(m.mean - fStar, m.stddev);
}

double acqMesStar(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    double fStar = requireFStar(ctx, "MES*");
    if (m.stddev < 0.0) {
        throw ContractViolation("predictive standard deviation must be nonnegative");
    }
    if (m.stddev == 0.0) {
        if (m.mean > fStar) {
            throw ContractViolation("MES* undefined at sigma = 0 with mu above f*");
        }
        return 0.0;
    }
    double gamma = (fStar - m.mean) / m.stddev;
    double hazard = stdNormalHazardLower(gamma);
    return 0.5 * gamma * hazard - stdNormalLogCdf(gamma);
}

double acqCbm(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    double fStar = requireFStar(ctx, "CBM");
    if (ctx.beta < 0.0) {
        throw ContractViolation("beta must be nonnegative");
    }
    return std::abs(m.mean - fStar) + std::sqrt(ctx.beta) * m.stddev;
}

double acqErm(const PredictiveMoments& m, const AcquisitionContext& ctx) {
    double fStar = requireFStar(ctx, "ERM");
    return expectedPositivePart(fStar - m.mean, m.stddev);
}

double evaluateAcquisition(AcquisitionKind kind, const PredictiveMoments& m,
                           const AcquisitionContext& ctx) {
    switch (kind) {
    case AcquisitionKind::EI:
        return acqEi(m, ctx);
    case AcquisitionKind::UCB:
        return acqUcb(m, ctx);
    case AcquisitionKind::EI_STAR:
        return acqEiStar(m, ctx);
    case AcquisitionKind::MES_STAR:
        return acqMesStar(m, ctx);
    case AcquisitionKind::CBM:
        return acqCbm(m, ctx);
    case AcquisitionKind::ERM:
        return acqErm(m, ctx);
    }
    throw ContractViolation("unknown acquisition kind");
}

double betaSchedule(int t, double fStarStd, double delta) {
    if (t < 1) {
        throw ContractViolation("beta schedule requires t >= 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ContractViolation("delta must lie in (0, 1)");
    }
    double logTerm = std::log(static_cast<double>(t) / delta);
    return std::max(BETA_FLOOR, 2.0 * fStarStd + 300.0 * logTerm * logTerm * logTerm);
}

OptimizerBudget defaultOptimizerBudget(int dim) {
    return OptimizerBudget{200 * std::max(1, dim), 5};
}

AcquisitionOptimum optimizeAcquisition(const std::function<double(const Eigen::VectorXd&)>& evaluate,
                                       Direction direction, int dim, const OptimizerBudget& budget,
                                       std::uint64_t seed) {
    if (dim < 1) {
        throw ContractViolation("optimizer dimension must be positive");
    }
    if (budget.nSamples < 1 || budget.nRefine < 1) {
        throw ContractViolation("optimizer budget must be positive");
    }

    auto better = [direction](double candidate, double incumbent) {
        return direction == Direction::MAXIMIZE ? candidate > incumbent : candidate < incumbent;
    };
    auto betterOrTieLex = [&](double value, const Eigen::VectorXd& x, double bestValue,
                              const Eigen::VectorXd& bestX) {
        return better(value, bestValue) || (value == bestValue && lexLess(x, bestX));
    };

    Rng rng(seed);
    std::vector<AcquisitionOptimum> samples;
    samples.reserve(static_cast<std::size_t>(budget.nSamples));
    for (int s = 0; s < budget.nSamples; ++s) {
        Eigen::VectorXd x(dim);
        for (int j = 0; j < dim; ++j) {
            x(j) = rng.uniform01();
        }
        samples.push_back({x, evaluate(x)});
    }

    int keep = std::min<int>(budget.nRefine, budget.nSamples);
    std::partial_sort(samples.begin(), samples.begin() + keep, samples.end(),
                      [&](const AcquisitionOptimum& a, const AcquisitionOptimum& b) {
                          return betterOrTieLex(a.value, a.x, b.value, b.x);
                      });

    AcquisitionOptimum best = samples.front();
    for (int c = 0; c < keep; ++c) {
        Eigen::VectorXd x = samples[static_cast<std::size_t>(c)].x;
        double value = samples[static_cast<std::size_t>(c)].value;
        double step = REFINE_STEP_INITIAL;
        int sweeps = 0;
        while (step >= REFINE_STEP_MIN && sweeps < REFINE_SWEEP_CAP) {
            ++sweeps;
            bool improved = false;
            for (int j = 0; j < dim; ++j) {
                for (double sign : {+1.0, -1.0}) {
                    double coord = std::clamp(x(j) + sign * step, 0.0, 1.0);
                    if (coord == x(j)) {
                        continue;
                    }
                    Eigen::VectorXd probe = x;
                    probe(j) = coord;
                    double probeValue = evaluate(probe);
                    if (better(probeValue, value)) {
                        x = probe;
                        value = probeValue;
                        improved = true;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
            }
        }
        if (betterOrTieLex(value, x, best.value, best.x)) {
            best = {x, value};
        }
    }
    return best;
}

} // namespace kobo
