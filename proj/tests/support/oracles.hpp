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

// Test-only numerical oracles. Everything here integrates definitions
// directly and must stay independent of the closed forms it checks.

#ifndef KOBO_TESTS_SUPPORT_ORACLES_HPP
#define KOBO_TESTS_SUPPORT_ORACLES_HPP

#include <cmath>
#include <functional>

namespace kobo::testsupport {

inline double gaussianDensity(double x, double mu, double sigma) {
    double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

namespace detail {
inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive(f, a, fa, m, fm, lm, flm, left, tol * 0.5, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, tol * 0.5, depth - 1);
}
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int depth = 48) {
    if (a >= b) {
        return 0.0;
    }
    double m = 0.5 * (a + b);
    double fa = f(a);
    double fb = f(b);
    double fm = f(m);
    return detail::adaptive(f, a, fa, b, fb, m, fm, detail::simpson(a, fa, b, fb, fm), tol, depth);
}

/// Adaptive integration over unit-width panels. Wide domains with narrow
/// density bumps defeat a single adaptive pass (every probe point can miss
/// the bump); panel-wise integration cannot.
inline double integratePanels(const std::function<double(double)>& f, double a, double b,
                              double tol = 1e-12) {
    if (a >= b) {
        return 0.0;
    }
    double total = 0.0;
    for (double lo = a; lo < b; lo += 1.0) {
        total += integrate(f, lo, std::min(lo + 1.0, b), tol);
    }
    return total;
}

/// E[max(0, f - xi)] for f ~ N(mu, sigma^2): the defining EI expectation,
/// integrated in standardized units u = (f - mu)/sigma so the density bump
/// keeps unit width for any sigma.
inline double eiQuadrature(double mu, double sigma, double xi) {
    double lo = std::max((xi - mu) / sigma, -40.0);
    return integratePanels(
        [=](double u) { return (mu + sigma * u - xi) * gaussianDensity(u, 0.0, 1.0); }, lo, 12.0);
}

/// Integral of r p(r) over r in [0, inf) with the regret r = f* - f
/// distributed N(f* - mu, sigma^2): the defining ERM expectation, integrated
/// in standardized units r = (f* - mu) + sigma u.
inline double ermQuadrature(double mu, double sigma, double fStar) {
    double center = fStar - mu;
    double lo = std::max(-center / sigma, -40.0);
    return integratePanels(
        [=](double u) { return (center + sigma * u) * gaussianDensity(u, 0.0, 1.0); }, lo, 12.0);
}

/// Differential-entropy difference between N(mu, sigma^2) and the same
/// Gaussian upper-truncated at f*, both entropies by quadrature.
inline double mesStarQuadrature(double mu, double sigma, double fStar) {
    double gamma = (fStar - mu) / sigma;
    double mass = 0.5 * std::erfc(-gamma / std::sqrt(2.0));
    double gaussianEntropy = 0.5 * std::log(2.0 * M_PI * M_E * sigma * sigma);
    auto negPLogP = [=](double u) {
        double phi = std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
        double density = phi / mass; // in u-space; dy = sigma du handled below
        if (density <= 0.0) {
            return 0.0;
        }
        return -density * std::log(density / sigma);
    };
    double lo = std::min(gamma, 0.0) - 45.0;
    double truncatedEntropy = integratePanels(negPLogP, lo, gamma);
    return gaussianEntropy - truncatedEntropy;
}

} // namespace kobo::testsupport

#endif // KOBO_TESTS_SUPPORT_ORACLES_HPP
