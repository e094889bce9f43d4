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

#include <kobo/bo.hpp>

#include <kobo/errors.hpp>
#include <kobo/math.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kobo {
namespace {

constexpr std::uint64_t SEED_PURPOSE_DESIGN = 1;
constexpr std::uint64_t SEED_PURPOSE_SELECT = 2;
constexpr std::uint64_t SEED_PURPOSE_REACH = 3;

bool acquisitionUsesFStar(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::EI:
    case AcquisitionKind::UCB:
        return false;
    default:
        return true;
    }
}

// Methods that neither consume f* in selection nor use the transformed
// surrogate run as plain single-phase BO with no reach check.
bool usesWarmstartMachinery(const BoConfig& config) {
    return acquisitionUsesFStar(config.acquisition) || config.surrogate == SurrogateKind::TGP;
}

double resolveStopEpsilon(const BoConfig& config) {
    if (config.stopEpsilon >= 0.0) {
        return config.stopEpsilon;
    }
    return 1e-8 * std::max(1.0, std::abs(config.fStarDeclared));
}

bool reachedOptimum(const BoConfig& config, const ObservationSet& data) {
    return config.fStarDeclared - data.maxOutputRaw() <= resolveStopEpsilon(config);
}

void validate(const BoConfig& config) {
    if (!config.objective) {
        throw ConfigError("run requires an objective");
    }
    if (config.lowerBounds.size() == 0 || config.lowerBounds.size() != config.upperBounds.size()) {
        throw ConfigError("run requires matching domain bounds");
    }
    if (config.maxIterations < 0) {
        throw ConfigError("iteration budget must be nonnegative");
    }
    if (config.nInit != 0 && config.nInit < 2) {
        throw ConfigError("initial design needs at least two points");
    }
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
    }
}

int resolveNInit(const BoConfig& config) {
    return config.nInit > 0 ? config.nInit : 3 * static_cast<int>(config.lowerBounds.size());
}

void record(RunState& state, const BoConfig& config, const Eigen::VectorXd& xRaw, double y,
            Phase phase, double acqValue) {
    state.data.add(xRaw, y);
    double reference = config.fStarTrue.value_or(config.fStarDeclared);
    TraceRecord rec;
    rec.iteration = static_cast<int>(state.trace.records.size()) + 1;
    rec.x = xRaw;
    rec.y = y;
    rec.bestSoFar = state.data.maxOutputRaw();
    rec.regret = reference - rec.bestSoFar;
    rec.phase = phase;
    rec.acqValue = acqValue;
    state.trace.records.push_back(std::move(rec));
}
}

SurrogateKind parseSurrogate(const std::string& name) {
    if (name == "gp") {
        return SurrogateKind::GP;
    }
    if (name == "tgp") {
        return SurrogateKind::TGP;
    }
    throw ConfigError("unknown surrogate '" + name + "'; valid: gp, tgp");
}

std::string surrogateName(SurrogateKind kind) {
    return kind == SurrogateKind::GP ? "gp" : "tgp";
}

std::string MethodSpec::name() const {
    return acquisitionName(acquisition) + "-" + surrogateName(surrogate);
}

MethodSpec MethodSpec::parse(const std::string& name) {
    auto dash = name.rfind('-');
    if (dash == std::string::npos) {
        throw ConfigError("method '" + name + "' must look like <acquisition>-<surrogate>");
    }
    MethodSpec spec;
    spec.acquisition = parseAcquisition(name.substr(0, dash));
    spec.surrogate = parseSurrogate(name.substr(dash + 1));
    return spec;
}

std::vector<std::string> methodRegistry() {
    std::vector<std::string> names;
    for (AcquisitionKind acq : {AcquisitionKind::EI, AcquisitionKind::UCB, AcquisitionKind::EI_STAR,
                                AcquisitionKind::MES_STAR, AcquisitionKind::CBM,
                                AcquisitionKind::ERM}) {
        for (SurrogateKind surrogate : {SurrogateKind::GP, SurrogateKind::TGP}) {
            names.push_back(MethodSpec{acq, surrogate}.name());
        }
    }
    return names;
}

std::string phaseName(Phase phase) {
    return phase == Phase::WARMSTART ? "warmstart" : "informed";
}

std::vector<Eigen::VectorXd> initialDesign(const Eigen::VectorXd& lower,
                                           const Eigen::VectorXd& upper, int nInit,
                                           std::uint64_t seed) {
    if (nInit < 2) {
        throw ContractViolation("initial design needs at least two points");
    }
    int dim = static_cast<int>(lower.size());
    Rng rng(seed);
    std::vector<Eigen::VectorXd> design(static_cast<std::size_t>(nInit),
                                        Eigen::VectorXd(dim));
    for (int j = 0; j < dim; ++j) {
        std::vector<int> strata(static_cast<std::size_t>(nInit));
        std::iota(strata.begin(), strata.end(), 0);
        for (std::size_t i = strata.size() - 1; i > 0; --i) {
            std::swap(strata[i], strata[rng.below(i + 1)]);
        }
        for (int i = 0; i < nInit; ++i) {
            double unit = (strata[static_cast<std::size_t>(i)] + rng.uniform01()) / nInit;
            design[static_cast<std::size_t>(i)](j) = lower(j) + (upper(j) - lower(j)) * unit;
        }
    }
    return design;
}

bool reachCheck(const GpModel& gp, double fStarStd, double beta, const OptimizerBudget& budget,
                std::uint64_t seed) {
    double sqrtBeta = std::sqrt(beta);
    auto ucb = [&](const Eigen::VectorXd& x) {
        PredictiveMoments m = gp.predict(x);
        return m.mean + sqrtBeta * m.stddev;
    };
    int dim = static_cast<int>(gp.inputs().cols());
    double best = optimizeAcquisition(ucb, Direction::MAXIMIZE, dim, budget, seed).value;
    // The training inputs are known good candidates the sampler may miss.
    for (Eigen::Index i = 0; i < gp.inputs().rows(); ++i) {
        best = std::max(best, ucb(gp.inputs().row(i).transpose()));
    }
    return best >= fStarStd;
}

RunState initRun(const BoConfig& config) {
    validate(config);
    RunState state{ObservationSet{config.lowerBounds, config.upperBounds}, Phase::WARMSTART, 0,
                   RunTrace{}, config.seed};
    int nInit = resolveNInit(config);
    std::uint64_t designSeed = deriveSeed(config.seed, SEED_PURPOSE_DESIGN, 0);
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (const Eigen::VectorXd& x : initialDesign(config.lowerBounds, config.upperBounds, nInit,
                                                  designSeed)) {
        record(state, config, x, config.objective(x), Phase::WARMSTART, nan);
        if (reachedOptimum(config, state.data)) {
            state.trace.stoppedOnOptimum = true;
            break;
        }
    }
    return state;
}

void step(RunState& state, const BoConfig& config) {
    if (state.data.size() == 0) {
        throw ContractViolation("step requires at least one observation");
    }
    int t = state.t + 1;
    int dim = state.data.dim();
    OptimizerBudget budget = defaultOptimizerBudget(dim);
    std::vector<double> grid = defaultLengthscaleGrid();

    double fStarStd = state.data.standardizer().toStandardized(config.fStarDeclared);
    double beta = betaSchedule(t, fStarStd, config.delta);

    bool twoPhase = usesWarmstartMachinery(config);
    std::optional<GpModel> vanillaGp;
    auto fitVanilla = [&]() {
        KernelParams params = selectLengthscale(state.data, grid);
        vanillaGp = GpModel::fit(state.data, params);
        ++state.trace.stats.gpFits;
    };

    if (twoPhase && state.phase == Phase::WARMSTART) {
        fitVanilla();
        ++state.trace.stats.reachChecks;
        std::uint64_t reachSeed = deriveSeed(config.seed, SEED_PURPOSE_REACH,
                                             static_cast<std::uint64_t>(t));
        if (reachCheck(*vanillaGp, fStarStd, beta, budget, reachSeed)) {
            state.phase = Phase::INFORMED;
        }
    }

    bool informed = twoPhase && state.phase == Phase::INFORMED;
    AcquisitionKind acquisition = informed ? config.acquisition : AcquisitionKind::EI;
    if (!twoPhase) {
        acquisition = config.acquisition; // single-phase baseline
    }

    AcquisitionContext ctx;
    ctx.beta = beta;
    ctx.delta = config.delta;
    ctx.iteration = t;
    ctx.incumbent = state.data.maxOutputStd();
    if (acquisitionUsesFStar(acquisition)) {
        ctx.fStarStd = fStarStd;
    }

    std::function<double(const Eigen::VectorXd&)> score;
    if (informed && config.surrogate == SurrogateKind::TGP) {
        if (state.data.maxOutputRaw() > config.fStarDeclared) {
            throw KnownOptimumViolated(
                "misspecified optimum: an observation exceeds the declared f*; "
                "declare a larger f* or rerun with the gp surrogate");
        }
        // Lengthscale is re-selected against the g-values each refit.
        double m0 = config.m0Mode == PriorMeanMode::ZERO
                        ? 0.0
                        : std::sqrt(2.0 * std::max(0.0, fStarStd));
        Eigen::VectorXd gValues(static_cast<Eigen::Index>(state.data.size()));
        for (Eigen::Index i = 0; i < gValues.size(); ++i) {
            gValues(i) = toGSpace(state.data.outputsStd()(i), fStarStd);
        }
        KernelParams base;
        base.priorMean = m0;
        KernelParams params = selectLengthscale(state.data.inputs(), gValues, grid, base);
        TgpModel tgp = TgpModel::fit(state.data, config.fStarDeclared, params, config.m0Mode);
        ++state.trace.stats.tgpFits;
        score = [tgp = std::move(tgp), acquisition, ctx](const Eigen::VectorXd& x) {
            TgpPosterior posterior = tgp.predict(x);
            return evaluateAcquisition(acquisition,
                                       PredictiveMoments{posterior.muF, posterior.sigmaF}, ctx);
        };
    } else {
        if (!vanillaGp) {
            fitVanilla();
        }
        score = [gp = std::move(*vanillaGp), acquisition, ctx](const Eigen::VectorXd& x) {
            return evaluateAcquisition(acquisition, gp.predict(x), ctx);
        };
    }

    std::uint64_t selectSeed = deriveSeed(config.seed, SEED_PURPOSE_SELECT,
                                          static_cast<std::uint64_t>(t));
    AcquisitionOptimum chosen = optimizeAcquisition(score, acquisitionDirection(acquisition), dim,
                                                    budget, selectSeed);

    Eigen::VectorXd xRaw = state.data.denormalize(chosen.x);
    double y = config.objective(xRaw);
    Phase recordedPhase = informed ? Phase::INFORMED : Phase::WARMSTART;
    record(state, config, xRaw, y, recordedPhase, chosen.value);
    if (informed) {
        ++state.trace.stats.informedSteps;
    } else {
        ++state.trace.stats.warmstartSteps;
    }
    state.t = t;
}

RunTrace run(const BoConfig& config) {
    RunState state = initRun(config);
    while (state.t < config.maxIterations) {
        if (reachedOptimum(config, state.data)) {
            state.trace.stoppedOnOptimum = true;
            break;
        }
        step(state, config);
    }
    if (!state.trace.stoppedOnOptimum && reachedOptimum(config, state.data)) {
        state.trace.stoppedOnOptimum = true;
    }
    return std::move(state.trace);
}

} // namespace kobo
