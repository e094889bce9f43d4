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

#include <kobo/observations.hpp>

#include <kobo/errors.hpp>

#include <cmath>

namespace kobo {

Standardizer makeStandardizer(const Eigen::VectorXd& yRaw) {
    if (yRaw.size() == 0) {
        throw ContractViolation("standardizer requires at least one observation");
    }
    Standardizer s;
    s.mean = yRaw.mean();
    if (yRaw.size() == 1 || yRaw.maxCoeff() == yRaw.minCoeff()) {
        s.scale = 1.0;
        return s;
    }
    // Population (not sample) standard deviation, so the standardized
    // outputs have exactly unit variance.
    double var = (yRaw.array() - s.mean).square().mean();
    s.scale = std::sqrt(var);
    return s;
}

ObservationSet::ObservationSet(Eigen::VectorXd lowerBounds, Eigen::VectorXd upperBounds)
    : m_Lower(std::move(lowerBounds)), m_Upper(std::move(upperBounds)) {
    if (m_Lower.size() == 0 || m_Lower.size() != m_Upper.size()) {
        throw ContractViolation("domain bounds must be nonempty and of equal dimension");
    }
    if (((m_Upper - m_Lower).array() <= 0.0).any()) {
        throw ContractViolation("each upper bound must exceed its lower bound");
    }
    m_Inputs.resize(0, m_Lower.size());
}

void ObservationSet::add(const Eigen::VectorXd& xRaw, double yRaw) {
    if (xRaw.size() != m_Lower.size()) {
        throw ContractViolation("observation dimension does not match domain bounds");
    }
    Eigen::VectorXd xNorm = this->normalize(xRaw);
    if ((xNorm.array() < 0.0).any() || (xNorm.array() > 1.0).any()) {
        throw ContractViolation("observation lies outside the domain bounds");
    }
    Eigen::Index n = m_Inputs.rows();
    m_Inputs.conservativeResize(n + 1, Eigen::NoChange);
    m_Inputs.row(n) = xNorm.transpose();
    m_OutputsRaw.conservativeResize(n + 1);
    m_OutputsRaw(n) = yRaw;
    this->restandardize();
}

Eigen::VectorXd ObservationSet::normalize(const Eigen::VectorXd& xRaw) const {
    return (xRaw - m_Lower).cwiseQuotient(m_Upper - m_Lower);
}

Eigen::VectorXd ObservationSet::denormalize(const Eigen::VectorXd& xNorm) const {
    return m_Lower + xNorm.cwiseProduct(m_Upper - m_Lower);
}

Eigen::VectorXd ObservationSet::inputRaw(std::size_t i) const {
    return this->denormalize(m_Inputs.row(static_cast<Eigen::Index>(i)).transpose());
}

double ObservationSet::maxOutputRaw() const {
    if (this->size() == 0) {
        throw ContractViolation("no observations");
    }
    return m_OutputsRaw.maxCoeff();
}

double ObservationSet::maxOutputStd() const {
    if (this->size() == 0) {
        throw ContractViolation("no observations");
    }
    return m_OutputsStd.maxCoeff();
}

void ObservationSet::restandardize() {
    m_Standardizer = makeStandardizer(m_OutputsRaw);
    m_OutputsStd = (m_OutputsRaw.array() - m_Standardizer.mean) / m_Standardizer.scale;
}

} // namespace kobo
