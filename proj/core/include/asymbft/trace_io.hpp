// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/simnet.hpp"

#include <iosfwd>
#include <string>

namespace asymbft
{

// One JSON object per event, keys in a fixed order, e.g.
//   {"step":3,"kind":"deliver","process":1,"peer":0,"seq":0,
//    "envelope":2,"payload":{"type":"VALUE","round":0,"bit":1}}
// Process indices are 0-based.
std::string eventToJson(TraceEvent const& e);

// All events, then one {"kind":"end",...} line with the termination reason,
// step count and per-round message counts.
void writeTrace(std::ostream& out, Trace const& trace);

} // namespace asymbft
