// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/trace_io.hpp"

#include "json_util.hpp"

#include <ostream>

namespace asymbft
{

std::string
eventToJson(TraceEvent const& e)
{
    Json j;
    j["step"] = e.step;
    j["kind"] = toString(e.kind);
    switch (e.kind)
    {
    case TraceEvent::Kind::Send:
    case TraceEvent::Kind::Deliver:
    case TraceEvent::Kind::Discard:
        j["process"] = e.process;
        j["peer"] = e.peer;
        j["seq"] = e.seq;
        j["envelope"] = e.envelope;
        j["payload"] = payloadJson(*e.payload);
        break;
    case TraceEvent::Kind::Output:
        j["process"] = e.process;
        j["output"] = outputJson(*e.output);
        break;
    case TraceEvent::Kind::Stall:
        j["note"] = e.note;
        break;
    }
    return j.dump();
}

void
writeTrace(std::ostream& out, Trace const& trace)
{
    for (auto const& e : trace.events)
    {
        out << eventToJson(e) << '\n';
    }
    Json end;
    end["kind"] = "end";
    end["terminated"] = toString(trace.terminated);
    end["steps"] = trace.steps;
    Json counts = Json::array();
    for (auto const& [round, count] : trace.messagesPerRound)
    {
        counts.push_back(Json::array({round, count}));
    }
    end["messages_per_round"] = counts;
    out << end.dump() << '\n';
}

} // namespace asymbft
