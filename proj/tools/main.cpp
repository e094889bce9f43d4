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

#include <kobo/errors.hpp>
#include <kobo/experiment.hpp>
#include <kobo/problems.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int EXIT_RUN_FAILED = 1;
constexpr int EXIT_USAGE = 2;

void printUsage(std::ostream& out) {
    out << "usage: kobo <command> [options]\n"
           "\n"
           "commands:\n"
           "  run        run a seeded experiment grid and write traces + summary\n"
           "  summarize  re-aggregate existing trace files into a summary\n"
           "  list       print the problem and method registries\n"
           "\n"
           "run options:\n"
           "  --problem NAME          benchmark problem (see `kobo list`)\n"
           "  --method NAME           acquisition-surrogate pair, repeatable or comma list\n"
           "  --iters N               BO iterations after the initial design (default 40)\n"
           "  --n-init N              initial design size (default 3*dim)\n"
           "  --reps R                repetitions per cell, seeds = seed..seed+R-1 (default 1)\n"
           "  --seed S                base seed (default 0)\n"
           "  --fstar-declared A,B    declared optimum values (default: the true optimum)\n"
           "  --delta D               beta-schedule confidence parameter (default 0.1)\n"
           "  --m0-mode MODE          g-space prior mean: zero | sqrt2fstar (default)\n"
           "  --stop-epsilon E        stop once f* - best <= E (default 1e-8*max(1,|f*|))\n"
           "  --outdir DIR            output directory (default runs; env KOBO_OUT_DIR)\n"
           "  --config FILE           key = value file; flags take precedence\n"
           "  --jsonl                 also write JSONL traces\n"
           "\n"
           "summarize options:\n"
           "  --outdir DIR            directory holding trace_*.csv files\n"
           "\n"
           "exit codes: 0 success, 1 any run failed, 2 usage error\n";
}

int commandRun(const std::vector<std::string>& args) {
    kobo::ExperimentConfig config = kobo::parseExperimentConfig(args);
    kobo::ExperimentReport report = kobo::runExperiment(config);
    for (const std::string& path : report.traceFiles) {
        std::cout << "wrote " << path << '\n';
    }
    std::cout << "wrote " << report.summaryFile << '\n';
    if (!report.failures.empty()) {
        for (const std::string& failure : report.failures) {
            std::cerr << "run failed: " << failure << '\n';
        }
        return EXIT_RUN_FAILED;
    }
    return 0;
}

int commandSummarize(const std::vector<std::string>& args) {
    std::string dir = "runs";
    if (const char* envOut = std::getenv("KOBO_OUT_DIR"); envOut != nullptr && *envOut != '\0') {
        dir = envOut;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--outdir") {
            if (i + 1 >= args.size()) {
                throw kobo::ConfigError("--outdir needs a value");
            }
            dir = args[++i];
        } else {
            throw kobo::ConfigError("unknown flag '" + args[i] + "' for summarize");
        }
    }
    std::cout << "wrote " << kobo::summarizeDirectory(dir) << '\n';
    return 0;
}

int commandList() {
    std::cout << "problems:\n";
    for (const std::string& name : kobo::problemRegistry()) {
        std::cout << "  " << name << '\n';
    }
    std::cout << "methods:\n";
    for (const std::string& name : kobo::methodRegistry()) {
        std::cout << "  " << name << '\n';
    }
    return 0;
}
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        printUsage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? EXIT_USAGE : 0;
    }

    std::string command = args[0];
    std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (command == "run") {
            return commandRun(rest);
        }
        if (command == "summarize") {
            return commandSummarize(rest);
        }
        if (command == "list") {
            return commandList();
        }
        std::cerr << "unknown command '" << command << "'\n\n";
        printUsage(std::cerr);
        return EXIT_USAGE;
    } catch (const kobo::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_RUN_FAILED;
    }
}
