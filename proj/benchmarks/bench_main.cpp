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
#include <kobo/bo.hpp>
#include <kobo/gp.hpp>
#include <kobo/math.hpp>
#include <kobo/problems.hpp>
#include <kobo/tgp.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace kobo;

Eigen::MatrixXd randomInputs(Rng& rng, int n, int dim) {
    Eigen::MatrixXd inputs(n, dim);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < dim; ++j) {
            inputs(i, j) = rng.uniform01();
        }
    }
    return inputs;
}

Eigen::VectorXd randomTargets(Rng& rng, int n) {
    Eigen::VectorXd targets(n);
    for (int i = 0; i < n; ++i) {
        targets(i) = 2.0 * rng.uniform01() - 1.0;
    }
    return targets;
}

void BM_GpFit(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Rng rng(1);
    Eigen::MatrixXd inputs = randomInputs(rng, n, 5);
    Eigen::VectorXd targets = randomTargets(rng, n);
    KernelParams params;
    params.lengthscale = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(GpModel::fit(inputs, targets, params));
    }
}
BENCHMARK(BM_GpFit)->Arg(16)->Arg(64)->Arg(128);

void BM_GpPredict(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Rng rng(2);
    Eigen::MatrixXd inputs = randomInputs(rng, n, 5);
    KernelParams params;
    params.lengthscale = 0.3;
    GpModel model = GpModel::fit(inputs, randomTargets(rng, n), params);
    Eigen::VectorXd x = randomInputs(rng, 1, 5).row(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.predict(x));
    }
}
BENCHMARK(BM_GpPredict)->Arg(16)->Arg(64)->Arg(128);

void BM_ErmEvaluation(benchmark::State& state) {
    AcquisitionContext ctx;
    ctx.fStarStd = 1.3;
    double mu = 0.2;
    for (auto _ : state) {
        mu += 1e-9; // defeat constant folding
        benchmark::DoNotOptimize(acqErm({mu, 0.8}, ctx));
    }
}
BENCHMARK(BM_ErmEvaluation);

void BM_AcquisitionSearch(benchmark::State& state) {
    int dim = static_cast<int>(state.range(0));
    Rng rng(3);
    Eigen::MatrixXd inputs = randomInputs(rng, 30, dim);
    KernelParams params;
    params.lengthscale = 0.3;
    GpModel model = GpModel::fit(inputs, randomTargets(rng, 30), params);
    AcquisitionContext ctx;
    ctx.fStarStd = 2.0;
    auto score = [&](const Eigen::VectorXd& x) { return acqErm(model.predict(x), ctx); };
    OptimizerBudget budget = defaultOptimizerBudget(dim);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            optimizeAcquisition(score, Direction::MINIMIZE, dim, budget, ++seed));
    }
}
BENCHMARK(BM_AcquisitionSearch)->Arg(2)->Arg(5);

void BM_BoIteration(benchmark::State& state) {
    BenchmarkProblem problem = branin();
    for (auto _ : state) {
        state.PauseTiming();
        BoConfig config;
        config.objective = problem.evaluate;
        config.lowerBounds = problem.lower;
        config.upperBounds = problem.upper;
        config.fStarDeclared = problem.fTrueStar;
        config.maxIterations = 1;
        config.nInit = 12;
        config.seed = 17;
        RunState run = initRun(config);
        state.ResumeTiming();
        step(run, config);
        benchmark::DoNotOptimize(run.t);
    }
}
BENCHMARK(BM_BoIteration);
}

BENCHMARK_MAIN();
