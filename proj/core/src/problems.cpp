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

#include <kobo/problems.hpp>

#include <kobo/errors.hpp>

#include <cmath>
#include <numbers>

namespace kobo {
namespace {

Eigen::VectorXd constantVector(int dim, double value) {
    return Eigen::VectorXd::Constant(dim, value);
}

// Negated-maximum values refined numerically from the standard coefficient
// matrices; stored at full precision so the f* ceiling holds to 1e-9.
constexpr double HARTMANN3_MAX = 3.8627797873326628;
constexpr double HARTMANN6_MAX = 3.3223680114155156;

double hartmannNegated(const Eigen::VectorXd& x, const Eigen::Matrix<double, 4, Eigen::Dynamic>& a,
                       const Eigen::Matrix<double, 4, Eigen::Dynamic>& p) {
    static const Eigen::Vector4d alpha{1.0, 1.2, 3.0, 3.2};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double exponent = 0.0;
        for (int j = 0; j < a.cols(); ++j) {
            double diff = x(j) - p(i, j);
            exponent -= a(i, j) * diff * diff;
        }
        sum += alpha(i) * std::exp(exponent);
    }
    return sum;
}

int parseDimSuffix(const std::string& name, const std::string& stem) {
    std::string digits = name.substr(stem.size() + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("malformed problem dimension in '" + name + "'");
    }
    return std::stoi(digits);
}
}

BenchmarkProblem branin() {
    BenchmarkProblem problem;
    problem.name = "branin";
    problem.dim = 2;
    problem.lower = Eigen::Vector2d{-5.0, 0.0};
    problem.upper = Eigen::Vector2d{10.0, 15.0};
    problem.evaluate = [](const Eigen::VectorXd& x) {
        constexpr double a = 1.0;
        const double b = 5.1 / (4.0 * std::numbers::pi * std::numbers::pi);
        const double c = 5.0 / std::numbers::pi;
        constexpr double r = 6.0;
        constexpr double s = 10.0;
        const double t = 1.0 / (8.0 * std::numbers::pi);
        double inner = x(1) - b * x(0) * x(0) + c * x(0) - r;
        return -(a * inner * inner + s * (1.0 - t) * std::cos(x(0)) + s);
    };
    problem.fTrueStar = -0.397887;
    problem.xStarKnown = Eigen::Vector2d{std::numbers::pi, 2.275};
    return problem;
}

BenchmarkProblem hartmann3() {
    BenchmarkProblem problem;
    problem.name = "hartmann3";
    problem.dim = 3;
    problem.lower = constantVector(3, 0.0);
    problem.upper = constantVector(3, 1.0);
    problem.evaluate = [](const Eigen::VectorXd& x) {
        static const Eigen::Matrix<double, 4, 3> a{
            {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
        static const Eigen::Matrix<double, 4, 3> p = 1e-4 * Eigen::Matrix<double, 4, 3>{
            {3689.0, 1170.0, 2673.0},
            {4699.0, 4387.0, 7470.0},
            {1091.0, 8732.0, 5547.0},
            {381.0, 5743.0, 8828.0}};
        return hartmannNegated(x, a, p);
    };
    problem.fTrueStar = HARTMANN3_MAX;
    problem.xStarKnown = Eigen::Vector3d{0.114614, 0.555649, 0.852547};
    return problem;
}

BenchmarkProblem hartmann6() {
    BenchmarkProblem problem;
    problem.name = "hartmann6";
    problem.dim = 6;
    problem.lower = constantVector(6, 0.0);
    problem.upper = constantVector(6, 1.0);
    problem.evaluate = [](const Eigen::VectorXd& x) {
        static const Eigen::Matrix<double, 4, 6> a{{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                                   {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                                   {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                                   {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
        static const Eigen::Matrix<double, 4, 6> p = 1e-4 * Eigen::Matrix<double, 4, 6>{
            {1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0},
            {2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0},
            {2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0},
            {4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0}};
        return hartmannNegated(x, a, p);
    };
    problem.fTrueStar = HARTMANN6_MAX;
    problem.xStarKnown =
        (Eigen::VectorXd(6) << 0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573).finished();
    return problem;
}

BenchmarkProblem alpine1(int dim) {
    if (dim < 1) {
        throw ConfigError("alpine1 requires dimension >= 1");
    }
    BenchmarkProblem problem;
    problem.name = "alpine1-" + std::to_string(dim);
    problem.dim = dim;
    problem.lower = constantVector(dim, -10.0);
    problem.upper = constantVector(dim, 10.0);
    problem.evaluate = [](const Eigen::VectorXd& x) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            sum += std::abs(x(i) * std::sin(x(i)) + 0.1 * x(i));
        }
        return -sum;
    };
    problem.fTrueStar = 0.0;
    problem.xStarKnown = constantVector(dim, 0.0);
    return problem;
}

BenchmarkProblem gsobol(int dim) {
    if (dim < 1) {
        throw ConfigError("gsobol requires dimension >= 1");
    }
    BenchmarkProblem problem;
    problem.name = "gsobol-" + std::to_string(dim);
    problem.dim = dim;
    problem.lower = constantVector(dim, 0.0);
    problem.upper = constantVector(dim, 1.0);
    // a_i = 0 for every coordinate: the only coefficient choice for which
    // the product attains the declared optimum 0 (at x_i = 0.5).
    problem.evaluate = [](const Eigen::VectorXd& x) {
        double product = 1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            product *= std::abs(4.0 * x(i) - 2.0);
        }
        return -product;
    };
    problem.fTrueStar = 0.0;
    problem.xStarKnown = constantVector(dim, 0.5);
    return problem;
}

std::vector<double> simpleRegret(std::span<const double> y, double fStarTrue) {
    if (y.empty()) {
        throw ContractViolation("simple regret requires at least one observation");
    }
    std::vector<double> regret(y.size());
    double best = y[0];
    for (std::size_t t = 0; t < y.size(); ++t) {
        best = std::max(best, y[t]);
        regret[t] = fStarTrue - best;
    }
    return regret;
}

BenchmarkProblem makeProblem(const std::string& name) {
    if (name == "branin") {
        return branin();
    }
    if (name == "hartmann3") {
        return hartmann3();
    }
    if (name == "hartmann6") {
        return hartmann6();
    }
    if (name.rfind("alpine1-", 0) == 0) {
        return alpine1(parseDimSuffix(name, "alpine1"));
    }
    if (name.rfind("gsobol-", 0) == 0) {
        return gsobol(parseDimSuffix(name, "gsobol"));
    }
    std::string known;
    for (const std::string& entry : problemRegistry()) {
        known += known.empty() ? entry : ", " + entry;
    }
    throw ConfigError("unknown problem '" + name + "'; valid: " + known);
}

std::vector<std::string> problemRegistry() {
    return {"branin", "hartmann3", "hartmann6", "alpine1-5", "gsobol-5", "gsobol-10"};
}

} // namespace kobo
