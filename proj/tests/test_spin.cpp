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

#include "doctest.h"

using namespace spin_povm;

TEST_CASE("spin accepts fraction, decimal and integer forms") {
    CHECK(Spin::parse("1/2").twice() == 1);
    CHECK(Spin::parse("0.5").twice() == 1);
    CHECK(Spin::parse("3/2").twice() == 3);
    CHECK(Spin::parse("1.5").twice() == 3);
    CHECK(Spin::parse("1").twice() == 2);
    CHECK(Spin::parse("2/1").twice() == 4);
    CHECK(Spin::parse("7/2").dim() == 8);
}

TEST_CASE("spin round-trips through its canonical text") {
    for (int tj = 1; tj <= 9; ++tj) {
        const Spin s = Spin::from_twice(tj);
        CHECK(Spin::parse(s.to_string()) == s);
    }
    CHECK(Spin::from_twice(1).to_string() == "1/2");
    CHECK(Spin::from_twice(4).to_string() == "2");
}

TEST_CASE("spin rejects non-half-integers and non-positive values") {
    for (const char *bad : {"0", "-1/2", "1/3", "0.3", "abc", "", "1/", "-1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Spin::parse(bad), SpinPovmError);
    }
    try {
        (void)Spin::parse("2/3");
    } catch (const SpinPovmError &e) {
        CHECK(e.code() == "invalid_spin");
    }
}
