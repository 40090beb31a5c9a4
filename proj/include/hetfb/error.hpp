/*
   Copyright 2026 The hetfb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace hetfb {

/// Argument outside the mathematical domain of a function (e.g. y <= 2 in D(x, y)).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance. Carries the best
/// estimate available when it gave up.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double partial_estimate, double error_estimate)
        : std::runtime_error(what), partial_(partial_estimate), error_(error_estimate) {}

    double partial_estimate() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_; }

private:
    double partial_;
    double error_;
};

/// Allocation constraints that cannot be met (negative residual budget, ...).
class infeasible_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hetfb
