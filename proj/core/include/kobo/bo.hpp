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

#ifndef KOBO_BO_HPP
#define KOBO_BO_HPP

#include <kobo/acquisition.hpp>
#include <kobo/gp.hpp>
#include <kobo/observations.hpp>
#include <kobo/tgp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kobo {

enum class SurrogateKind {
    GP,
    TGP,
};

SurrogateKind parseSurrogate(const std::string& name);
std::string surrogateName(SurrogateKind kind);

/// An acquisition/surrogate pairing, e.g. "erm-tgp" or "ei-gp".
struct MethodSpec {
    AcquisitionKind acquisition = AcquisitionKind::ERM;
    SurrogateKind surrogate = SurrogateKind::TGP;

    std::string name() const;
    static MethodSpec parse(const std::string& name);
};

/// All registered method names (acquisition x surrogate).
std::vector<std::string> methodRegistry();

enum class Phase {
    WARMSTART,
    INFORMED,
};

std::string phaseName(Phase phase);

struct BoConfig {
    std::function<double(const Eigen::VectorXd&)> objective; // original units
    Eigen::VectorXd lowerBounds;
    Eigen::VectorXd upperBounds;
    double fStarDeclared = 0.0; // original units; may differ from the truth
    AcquisitionKind acquisition = AcquisitionKind::ERM;
    SurrogateKind surrogate = SurrogateKind::TGP;
    int maxIterations = 40; // T, BO steps after the initial design
    int nInit = 0;          // 0 selects the 3d default
    std::uint64_t seed = 0;
    double delta = 0.1;
    PriorMeanMode m0Mode = PriorMeanMode::SQRT_TWO_FSTAR;
    double stopEpsilon = -1.0; // < 0 selects 1e-8 max(1, |f*|)
    /// Reference optimum for the regret column; defaults to fStarDeclared.
    /// Set to the true optimum in misspecification studies.
    std::optional<double> fStarTrue;
};

struct TraceRecord {
    int iteration = 0; // evaluation index, 1-based, initial design included
    Eigen::VectorXd x; // original units
    double y = 0.0;
    double bestSoFar = 0.0;
    double regret = 0.0;
    Phase phase = Phase::WARMSTART;
    double acqValue = 0.0; // NaN for initial-design records
};

/// Instrumentation counters; a GP+EI run must report zero g-space fits.
struct RunStats {
    int gpFits = 0;
    int tgpFits = 0;
    int reachChecks = 0;
    int warmstartSteps = 0;
    int informedSteps = 0;
};

struct RunTrace {
    std::vector<TraceRecord> records;
    RunStats stats;
    bool stoppedOnOptimum = false;
};

struct RunState {
    ObservationSet data;
    Phase phase = Phase::WARMSTART;
    int t = 0; // completed BO iterations
    RunTrace trace;
    std::uint64_t seed = 0;
};

/// Latin-hypercube design in original units: every dimension's nInit strata
/// contain exactly one point. Deterministic per seed.
std::vector<Eigen::VectorXd> initialDesign(const Eigen::VectorXd& lower,
                                           const Eigen::VectorXd& upper, int nInit,
                                           std::uint64_t seed);

/// True iff the UCB mu + sqrt(beta) sigma can reach fStarStd somewhere on
/// the unit cube (multi-start search, plus the training inputs themselves).
bool reachCheck(const GpModel& gp, double fStarStd, double beta, const OptimizerBudget& budget,
                std::uint64_t seed);

/// Evaluates the initial design (stopping early if it hits f*).
RunState initRun(const BoConfig& config);

/// One BO iteration: select by the phase's acquisition, evaluate, append,
/// and flip warmstart -> informed the first time the reach check passes.
void step(RunState& state, const BoConfig& config);

/// Full loop: initial design, then steps until the budget is exhausted or
/// f* is reached within the stop tolerance.
RunTrace run(const BoConfig& config);

} // namespace kobo

#endif // KOBO_BO_HPP
