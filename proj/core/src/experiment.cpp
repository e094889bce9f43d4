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

#include <kobo/experiment.hpp>

#include <kobo/errors.hpp>
#include <kobo/problems.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kobo {
namespace {

namespace fs = std::filesystem;

std::string formatDouble(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parseDoubleOrThrow(const std::string& text, const std::string& what) {
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError("expected a number for " + what + ", got '" + text + "'");
    }
    return value;
}

long parseIntOrThrow(const std::string& text, const std::string& what) {
    char* end = nullptr;
    long value = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError("expected an integer for " + what + ", got '" + text + "'");
    }
    return value;
}

std::vector<std::string> splitCommas(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream stream(text);
    while (std::getline(stream, current, ',')) {
        if (!current.empty()) {
            parts.push_back(current);
        }
    }
    return parts;
}

PriorMeanMode parseM0Mode(const std::string& text) {
    if (text == "zero") {
        return PriorMeanMode::ZERO;
    }
    if (text == "sqrt2fstar") {
        return PriorMeanMode::SQRT_TWO_FSTAR;
    }
    throw ConfigError("unknown m0 mode '" + text + "'; valid: zero, sqrt2fstar");
}

bool parseBool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("expected a boolean for " + what + ", got '" + text + "'");
}

void applyKey(ExperimentConfig& config, const std::string& key, const std::string& value,
              const std::string& where) {
    if (key == "problem") {
        config.problem = value;
    } else if (key == "methods" || key == "method") {
        config.methods.clear();
        for (const std::string& name : splitCommas(value)) {
            config.methods.push_back(MethodSpec::parse(name));
        }
    } else if (key == "iters") {
        config.iterations = static_cast<int>(parseIntOrThrow(value, where));
    } else if (key == "n_init") {
        config.nInit = static_cast<int>(parseIntOrThrow(value, where));
    } else if (key == "reps") {
        config.repetitions = static_cast<int>(parseIntOrThrow(value, where));
    } else if (key == "seed") {
        config.baseSeed = static_cast<std::uint64_t>(parseIntOrThrow(value, where));
    } else if (key == "fstar_declared") {
        config.fStarDeclared.clear();
        for (const std::string& token : splitCommas(value)) {
            config.fStarDeclared.push_back(parseDoubleOrThrow(token, where));
        }
    } else if (key == "delta") {
        config.delta = parseDoubleOrThrow(value, where);
    } else if (key == "m0_mode") {
        config.m0Mode = parseM0Mode(value);
    } else if (key == "outdir") {
        config.outDir = value;
    } else if (key == "jsonl") {
        config.writeJsonl = parseBool(value, where);
    } else if (key == "stop_epsilon") {
        config.stopEpsilon = parseDoubleOrThrow(value, where);
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

void applyConfigFile(ExperimentConfig& config, const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    int lineNumber = 0;
    while (std::getline(file, line)) {
        ++lineNumber;
        std::string where = path + ":" + std::to_string(lineNumber);
        auto firstNonSpace = line.find_first_not_of(" \t\r");
        if (firstNonSpace == std::string::npos || line[firstNonSpace] == '#') {
            continue;
        }
        auto equals = line.find('=');
        if (equals == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, equals));
        std::string value = trim(line.substr(equals + 1));
        if (key.empty()) {
            throw ConfigError(where + ": empty key");
        }
        applyKey(config, key, value, where);
    }
}

void validate(const ExperimentConfig& config) {
    if (config.problem.empty()) {
        throw ConfigError("an experiment needs --problem");
    }
    if (config.methods.empty()) {
        throw ConfigError("an experiment needs at least one --method");
    }
    if (config.repetitions < 1) {
        throw ConfigError("repetitions must be >= 1");
    }
    if (config.iterations < 0) {
        throw ConfigError("iterations must be >= 0");
    }
    makeProblem(config.problem); // surfaces unknown-problem usage errors now
}

std::vector<double> regretColumn(const RunTrace& trace) {
    std::vector<double> regret;
    regret.reserve(trace.records.size());
    for (const TraceRecord& rec : trace.records) {
        regret.push_back(rec.regret);
    }
    return regret;
}

std::string csvHeader(int dim) {
    std::string header = "run,seed,iter,phase";
    for (int j = 0; j < dim; ++j) {
        header += ",x" + std::to_string(j);
    }
    header += ",y,best,regret";
    return header;
}

std::vector<std::string> splitCsvRow(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}
}

ExperimentConfig parseExperimentConfig(const std::vector<std::string>& args) {
    ExperimentConfig config;

    // First pass only locates --config; file values sit below every flag.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ConfigError("--config needs a file path");
            }
            applyConfigFile(config, args[i + 1]);
        }
    }

    if (const char* envOut = std::getenv("KOBO_OUT_DIR"); envOut != nullptr && *envOut != '\0') {
        config.outDir = envOut;
    }

    bool methodFlagSeen = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& flag = args[i];
        auto nextValue = [&]() -> const std::string& {
            if (i + 1 >= args.size()) {
                throw ConfigError(flag + " needs a value");
            }
            return args[++i];
        };
        if (flag == "--config") {
            nextValue(); // already applied
        } else if (flag == "--problem") {
            applyKey(config, "problem", nextValue(), flag);
        } else if (flag == "--method") {
            // Repeatable; flags replace any config-file methods as a group.
            if (!methodFlagSeen) {
                config.methods.clear();
                methodFlagSeen = true;
            }
            for (const std::string& name : splitCommas(nextValue())) {
                config.methods.push_back(MethodSpec::parse(name));
            }
        } else if (flag == "--iters") {
            applyKey(config, "iters", nextValue(), flag);
        } else if (flag == "--n-init") {
            applyKey(config, "n_init", nextValue(), flag);
        } else if (flag == "--reps") {
            applyKey(config, "reps", nextValue(), flag);
        } else if (flag == "--seed") {
            applyKey(config, "seed", nextValue(), flag);
        } else if (flag == "--fstar-declared") {
            applyKey(config, "fstar_declared", nextValue(), flag);
        } else if (flag == "--delta") {
            applyKey(config, "delta", nextValue(), flag);
        } else if (flag == "--m0-mode") {
            applyKey(config, "m0_mode", nextValue(), flag);
        } else if (flag == "--outdir") {
            applyKey(config, "outdir", nextValue(), flag);
        } else if (flag == "--jsonl") {
            config.writeJsonl = true;
        } else if (flag == "--stop-epsilon") {
            applyKey(config, "stop_epsilon", nextValue(), flag);
        } else {
            throw ConfigError("unknown flag '" + flag + "'");
        }
    }

    validate(config);
    return config;
}

std::string formatFStarToken(double fStar) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.9g", fStar);
    return buffer;
}

std::string traceFileName(const std::string& problem, const std::string& method,
                          const std::string& fStarToken) {
    return "trace_" + problem + "__" + method + "__fstar=" + fStarToken + ".csv";
}

void writeTraceCsv(const std::string& path, const CellResult& cell) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write trace file '" + path + "'");
    }
    int dim = cell.traces.empty() || cell.traces.front().records.empty()
                  ? 0
                  : static_cast<int>(cell.traces.front().records.front().x.size());
    file << csvHeader(dim) << '\n';
    for (std::size_t r = 0; r < cell.traces.size(); ++r) {
        for (const TraceRecord& rec : cell.traces[r].records) {
            file << r << ',' << cell.seeds[r] << ',' << rec.iteration << ','
                 << phaseName(rec.phase);
            for (Eigen::Index j = 0; j < rec.x.size(); ++j) {
                file << ',' << formatDouble(rec.x(j));
            }
            file << ',' << formatDouble(rec.y) << ',' << formatDouble(rec.bestSoFar) << ','
                 << formatDouble(rec.regret) << '\n';
        }
    }
}

void writeTraceJsonl(const std::string& path, const CellResult& cell) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write trace file '" + path + "'");
    }
    for (std::size_t r = 0; r < cell.traces.size(); ++r) {
        for (const TraceRecord& rec : cell.traces[r].records) {
            nlohmann::ordered_json row;
            row["run"] = r;
            row["seed"] = cell.seeds[r];
            row["iter"] = rec.iteration;
            row["phase"] = phaseName(rec.phase);
            row["x"] = std::vector<double>(rec.x.data(), rec.x.data() + rec.x.size());
            row["y"] = rec.y;
            row["best"] = rec.bestSoFar;
            row["regret"] = rec.regret;
            file << row.dump() << '\n';
        }
    }
}

std::vector<ParsedTraceRun> readTraceCsv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot read trace file '" + path + "'");
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw ConfigError("trace file '" + path + "' is empty");
    }
    std::vector<std::string> header = splitCsvRow(line);
    if (header.size() < 7 || header[0] != "run") {
        throw ConfigError("trace file '" + path + "' has an unexpected header");
    }
    std::size_t yColumn = header.size() - 3;
    std::vector<ParsedTraceRun> runs;
    int lineNumber = 1;
    while (std::getline(file, line)) {
        ++lineNumber;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields = splitCsvRow(line);
        std::string where = path + ":" + std::to_string(lineNumber);
        if (fields.size() != header.size()) {
            throw ConfigError(where + ": wrong field count");
        }
        int runIndex = static_cast<int>(parseIntOrThrow(fields[0], where));
        if (runs.empty() || runs.back().run != runIndex) {
            ParsedTraceRun next;
            next.run = runIndex;
            next.seed = static_cast<std::uint64_t>(parseIntOrThrow(fields[1], where));
            runs.push_back(std::move(next));
        }
        runs.back().y.push_back(parseDoubleOrThrow(fields[yColumn], where));
        runs.back().best.push_back(parseDoubleOrThrow(fields[yColumn + 1], where));
        runs.back().regret.push_back(parseDoubleOrThrow(fields[yColumn + 2], where));
    }
    return runs;
}

double interpolatedQuantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw ContractViolation("quantile of an empty set");
    }
    std::sort(values.begin(), values.end());
    double position = q * static_cast<double>(values.size() - 1);
    std::size_t lower = static_cast<std::size_t>(position);
    double fraction = position - static_cast<double>(lower);
    if (lower + 1 >= values.size()) {
        return values.back();
    }
    return values[lower] + fraction * (values[lower + 1] - values[lower]);
}

std::vector<SummaryRow> summarize(std::vector<CellSeries> cells) {
    std::sort(cells.begin(), cells.end(), [](const CellSeries& a, const CellSeries& b) {
        return std::tie(a.problem, a.method, a.fStarToken) <
               std::tie(b.problem, b.method, b.fStarToken);
    });

    std::vector<SummaryRow> rows;
    for (const CellSeries& cell : cells) {
        if (cell.regret.empty()) {
            continue;
        }
        std::size_t maxLen = 0;
        for (const std::vector<double>& series : cell.regret) {
            maxLen = std::max(maxLen, series.size());
        }
        auto statsRow = [&](const std::string& iterLabel, const std::vector<double>& values) {
            SummaryRow row;
            row.problem = cell.problem;
            row.method = cell.method;
            row.fStarToken = cell.fStarToken;
            row.iter = iterLabel;
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            row.mean = sum / static_cast<double>(values.size());
            row.median = interpolatedQuantile(values, 0.5);
            row.q25 = interpolatedQuantile(values, 0.25);
            row.q75 = interpolatedQuantile(values, 0.75);
            return row;
        };
        for (std::size_t i = 0; i < maxLen; ++i) {
            std::vector<double> at;
            at.reserve(cell.regret.size());
            for (const std::vector<double>& series : cell.regret) {
                // Early-stopped runs hold their final regret.
                at.push_back(series[std::min(i, series.size() - 1)]);
            }
            rows.push_back(statsRow(std::to_string(i + 1), at));
        }
        std::vector<double> finals;
        finals.reserve(cell.regret.size());
        for (const std::vector<double>& series : cell.regret) {
            finals.push_back(series.back());
        }
        rows.push_back(statsRow("final", finals));
    }
    return rows;
}

void writeSummaryCsv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write summary file '" + path + "'");
    }
    file << "problem,method,fstar,iter,mean,median,q25,q75\n";
    for (const SummaryRow& row : rows) {
        file << row.problem << ',' << row.method << ',' << row.fStarToken << ',' << row.iter << ','
             << formatDouble(row.mean) << ',' << formatDouble(row.median) << ','
             << formatDouble(row.q25) << ',' << formatDouble(row.q75) << '\n';
    }
}

ExperimentReport runExperiment(const ExperimentConfig& config) {
    validate(config);
    BenchmarkProblem problem = makeProblem(config.problem);
    std::vector<double> fStars =
        config.fStarDeclared.empty() ? std::vector<double>{problem.fTrueStar} : config.fStarDeclared;

    fs::create_directories(config.outDir);

    ExperimentReport report;
    std::vector<CellSeries> allSeries;
    for (const MethodSpec& method : config.methods) {
        for (double fStar : fStars) {
            CellResult cell;
            cell.problem = problem.name;
            cell.method = method;
            cell.fStarDeclared = fStar;
            for (int r = 0; r < config.repetitions; ++r) {
                std::uint64_t seed = config.baseSeed + static_cast<std::uint64_t>(r);
                BoConfig bo;
                bo.objective = problem.evaluate;
                bo.lowerBounds = problem.lower;
                bo.upperBounds = problem.upper;
                bo.fStarDeclared = fStar;
                bo.acquisition = method.acquisition;
                bo.surrogate = method.surrogate;
                bo.maxIterations = config.iterations;
                bo.nInit = config.nInit;
                bo.seed = seed;
                bo.delta = config.delta;
                bo.m0Mode = config.m0Mode;
                bo.stopEpsilon = config.stopEpsilon;
                bo.fStarTrue = problem.fTrueStar;
                try {
                    RunTrace trace = run(bo);
                    cell.seeds.push_back(seed);
                    cell.traces.push_back(std::move(trace));
                } catch (const std::exception& e) {
                    std::ostringstream diag;
                    diag << problem.name << " " << method.name() << " fstar=" << fStar << " run=" << r
                         << " seed=" << seed << ": " << e.what();
                    report.failures.push_back(diag.str());
                }
            }

            std::string token = formatFStarToken(fStar);
            std::string base = (fs::path(config.outDir) /
                                traceFileName(problem.name, method.name(), token))
                                   .string();
            writeTraceCsv(base, cell);
            report.traceFiles.push_back(base);
            if (config.writeJsonl) {
                std::string jsonl = base.substr(0, base.size() - 4) + ".jsonl";
                writeTraceJsonl(jsonl, cell);
                report.traceFiles.push_back(jsonl);
            }

            CellSeries series;
            series.problem = problem.name;
            series.method = method.name();
            series.fStarToken = token;
            for (const RunTrace& trace : cell.traces) {
                series.regret.push_back(regretColumn(trace));
            }
            allSeries.push_back(std::move(series));
            report.cells.push_back(std::move(cell));
        }
    }

    report.summaryFile = (fs::path(config.outDir) / "summary.csv").string();
    writeSummaryCsv(report.summaryFile, summarize(std::move(allSeries)));
    return report;
}

std::string summarizeDirectory(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw ConfigError("'" + dir + "' is not a directory");
    }
    std::vector<std::string> names;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("trace_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".csv") {
            names.push_back(name);
        }
    }
    if (names.empty()) {
        throw ConfigError("no trace_*.csv files under '" + dir + "'");
    }
    std::sort(names.begin(), names.end());

    std::vector<CellSeries> cells;
    for (const std::string& name : names) {
        std::string stem = name.substr(6, name.size() - 10); // strip trace_ and .csv
        auto firstSep = stem.find("__");
        auto secondSep = firstSep == std::string::npos ? std::string::npos
                                                       : stem.find("__", firstSep + 2);
        const std::string fstarTag = "fstar=";
        if (firstSep == std::string::npos || secondSep == std::string::npos ||
            stem.compare(secondSep + 2, fstarTag.size(), fstarTag) != 0) {
            throw ConfigError("trace file name '" + name + "' does not encode a cell");
        }
        CellSeries series;
        series.problem = stem.substr(0, firstSep);
        series.method = stem.substr(firstSep + 2, secondSep - firstSep - 2);
        series.fStarToken = stem.substr(secondSep + 2 + fstarTag.size());
        for (const ParsedTraceRun& run : readTraceCsv((fs::path(dir) / name).string())) {
            series.regret.push_back(run.regret);
        }
        cells.push_back(std::move(series));
    }

    std::string summaryPath = (fs::path(dir) / "summary.csv").string();
    writeSummaryCsv(summaryPath, summarize(std::move(cells)));
    return summaryPath;
}

} // namespace kobo
