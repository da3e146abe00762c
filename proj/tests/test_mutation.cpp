/*
 * Copyright 2026 The reachplan Authors
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

// Linked against a planner build with the player-1 / random update rules
// swapped. The verification harness has to notice.

#include <doctest.h>

#include "reachplan/driver.hpp"

using namespace reachplan;

TEST_CASE("swapped min/max rules are caught by verification")
{
    VerifyConfig c;
    c.count = 200;
    c.kinds = {Kind::mdp};
    c.objectives = {Objective::sequential};
    const auto r = run_verification(c);
    CHECK(r.instances == 200);
    CHECK(r.discrepancies > 0);
}
