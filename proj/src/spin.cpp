// Copyright 2026 The spin-povm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spin_povm/spin.hpp"

#include <charconv>
#include <cmath>

namespace spin_povm {

namespace {

[[noreturn]] void bad_spin(std::string_view text, const char *why) {
    throw SpinPovmError("invalid_spin",
                        "invalid spin '" + std::string(text) + "': " + why);
}

bool parse_int(std::string_view text, int &out) {
    if (text.empty()) {
        return false;
    }
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

Spin Spin::from_twice(int twice) {
    if (twice <= 0) {
        throw SpinPovmError("invalid_spin",
                            "spin must be positive, got 2J = " + std::to_string(twice));
    }
    return Spin(twice);
}

Spin Spin::parse(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        int num = 0;
        int den = 0;
        if (!parse_int(text.substr(0, slash), num) ||
            !parse_int(text.substr(slash + 1), den)) {
            bad_spin(text, "expected p/q with integers");
        }
        if (den == 1) {
            return from_twice(2 * num);
        }
        if (den != 2) {
            bad_spin(text, "denominator must be 1 or 2");
        }
        return from_twice(num);
    }
    int whole = 0;
    if (parse_int(text, whole)) {
        return from_twice(2 * whole);
    }
    // Decimal form such as "0.5" or "1.5".
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        bad_spin(text, "not a number");
    }
    const double twice = 2.0 * value;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12) {
        bad_spin(text, "not a half-integer");
    }
    return from_twice(static_cast<int>(rounded));
}

std::string Spin::to_string() const {
    if (twice_ % 2 == 0) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

} // namespace spin_povm
