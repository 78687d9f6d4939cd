// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/messages.hpp"

#include <json.hpp>

namespace asymbft
{

// Insertion-ordered, so serialized field order is stable.
using Json = nlohmann::ordered_json;

Json payloadJson(Payload const& p);
Json outputJson(Output const& o);
Json setJson(ProcessSet const& s);

} // namespace asymbft
