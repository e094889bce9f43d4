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

#ifndef KOBO_EXPERIMENT_HPP
#define KOBO_EXPERIMENT_HPP

#include <kobo/bo.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kobo {

/// Experiment grid: repetitions x methods x declared-f* values on one
/// problem. Each run r uses seed baseSeed + r, reused across cells so every
/// method sees the same initial designs.
struct ExperimentConfig {
    std::string problem;
    std::vector<MethodSpec> methods;
    int iterations = 40; // T
    int nInit = 0;       // 0 selects 3d
    int repetitions = 1; // R
    std::uint64_t baseSeed = 0;
    std::vector<double> fStarDeclared; // empty selects the true optimum
    double delta = 0.1;
    PriorMeanMode m0Mode = PriorMeanMode::SQRT_TWO_FSTAR;
    std::string outDir = "runs";
    bool writeJsonl = false;
    double stopEpsilon = -1.0;
};

/// Builds a config from run-style flags, merging an optional --config file.
/// Precedence: flag > KOBO_OUT_DIR (output dir only) > config-file key >
/// built-in default. Unknown flags, keys, or registry names raise
/// ConfigError with the valid choices listed.
ExperimentConfig parseExperimentConfig(const std::vector<std::string>& args);

/// One (method, declared f*) cell and its completed run traces.
struct CellResult {
    std::string problem;
    MethodSpec method;
    double fStarDeclared = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<RunTrace> traces;
};

struct ExperimentReport {
    std::vector<CellResult> cells;
    std::vector<std::string> traceFiles;
    std::string summaryFile;
    std::vector<std::string> failures; // one diagnostic per failed run
};

/// Runs the whole grid, writes one trace CSV per cell (plus JSONL when
/// enabled) and a summary CSV. Failed runs are recorded and skipped; the
/// rest of the grid still executes. Deterministic given the config.
ExperimentReport runExperiment(const ExperimentConfig& config);

/// Per-run simple-regret sequences of one cell, the unit summarize works on.
struct CellSeries {
    std::string problem;
    std::string method;
    std::string fStarToken; // %.9g rendering of the declared f*
    std::vector<std::vector<double>> regret; // one sequence per run
};

struct SummaryRow {
    std::string problem;
    std::string method;
    std::string fStarToken;
    std::string iter; // "1".."L" or "final"
    double mean = 0.0;
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

/// Per cell and iteration: mean, median and interquartile range of simple
/// regret (linear-interpolation quartiles), plus one final-regret row.
/// Early-stopped runs carry their last regret forward. Cells are emitted in
/// sorted (problem, method, f*) order, independent of input order.
std::vector<SummaryRow> summarize(std::vector<CellSeries> cells);

/// Linear-interpolation quantile (the summarize rule), exposed for tests.
double interpolatedQuantile(std::vector<double> values, double q);

std::string traceFileName(const std::string& problem, const std::string& method,
                          const std::string& fStarToken);
std::string formatFStarToken(double fStar);

void writeTraceCsv(const std::string& path, const CellResult& cell);
void writeTraceJsonl(const std::string& path, const CellResult& cell);
void writeSummaryCsv(const std::string& path, const std::vector<SummaryRow>& rows);

/// Reads back one cell's trace CSV as regret series (plus raw columns for
/// consistency checks).
struct ParsedTraceRun {
    int run = 0;
    std::uint64_t seed = 0;
    std::vector<double> y;
    std::vector<double> best;
    std::vector<double> regret;
};
std::vector<ParsedTraceRun> readTraceCsv(const std::string& path);

/// Re-aggregates every trace_*.csv under dir into a summary CSV; returns the
/// summary path. Cell identity is parsed from the file names.
std::string summarizeDirectory(const std::string& dir);

} // namespace kobo

#endif // KOBO_EXPERIMENT_HPP
