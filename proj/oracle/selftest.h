/* Copyright 2026 The p2g Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef P2G_ORACLE_SELFTEST_H_
#define P2G_ORACLE_SELFTEST_H_

#include <ostream>
#include <vector>

#include "checks.h"

namespace p2g::oracle {

// Reduced-size oracle suite: path enumeration, estimator convergence,
// decoding, metric fixtures and serialization. Prints one line per check and
// returns every result.
std::vector<CheckResult> RunSelftest(std::ostream& out, const Hooks& hooks = {});

}  // namespace p2g::oracle

#endif  // P2G_ORACLE_SELFTEST_H_
