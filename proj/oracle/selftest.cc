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

#include "selftest.h"

namespace p2g::oracle {

std::vector<CheckResult> RunSelftest(std::ostream& out, const Hooks& hooks) {
  std::vector<CheckResult> results;
  auto run = [&](CheckResult r) {
    out << FormatCheck(r) << '\n';
    out.flush();
    results.push_back(std::move(r));
  };

  ForwardCheckOptions forward;
  forward.grids = 40;
  run(CheckForwardOracle(forward, hooks));

  PartitionCheckOptions partition;
  partition.grids = 40;
  run(CheckPartition(partition, hooks));

  TkmCheckOptions tkm;
  tkm.instances = 20;
  run(CheckTkmExact(tkm, hooks));

  SskmCheckOptions sskm;
  sskm.runs = 400;
  run(CheckSskmUnbiased(sskm));

  SkmCheckOptions skm;
  skm.instances = 4;
  skm.skm_k = 20000;
  skm.sskm_k = 100000;
  run(CheckSkmAgreement(skm));

  BeamCheckOptions beam;
  beam.grids = 20;
  run(CheckBeamOracle(beam));

  DecodeCheckOptions decode;
  decode.instances = 10;
  run(CheckDecodeOracle(decode));

  run(CheckMetricFixtures());

  RoundTripCheckOptions roundtrip;
  roundtrip.pairs = 2000;
  run(CheckSerializationRoundTrip(roundtrip));
  return results;
}

}  // namespace p2g::oracle
