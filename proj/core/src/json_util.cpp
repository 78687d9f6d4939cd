// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "json_util.hpp"

namespace asymbft
{

Json
payloadJson(Payload const& p)
{
    Json j;
    j["type"] = payloadKind(p);
    if (auto const* v = std::get_if<ValueMsg>(&p))
    {
        j["round"] = v->round;
        j["bit"] = v->bit;
    }
    else if (auto const* a = std::get_if<AuxMsg>(&p))
    {
        j["round"] = a->round;
        j["bit"] = a->bit;
    }
    else if (auto const* c = std::get_if<CoinMsg>(&p))
    {
        j["round"] = c->round;
        j["share"] = c->share;
        j["owner"] = c->owner;
        j["position"] = c->position;
    }
    else if (auto const* d = std::get_if<DecideMsg>(&p))
    {
        j["bit"] = d->bit;
    }
    else if (auto const* o = std::get_if<OpaqueMsg>(&p))
    {
        j["tag"] = o->tag;
        j["value"] = o->value;
    }
    return j;
}

Json
outputJson(Output const& o)
{
    Json j;
    j["type"] = outputKind(o);
    if (auto const* x = std::get_if<Proposed>(&o))
    {
        j["bit"] = x->bit;
    }
    else if (auto const* x = std::get_if<AbvDelivered>(&o))
    {
        j["round"] = x->round;
        j["bit"] = x->bit;
    }
    else if (auto const* x = std::get_if<CoinReleased>(&o))
    {
        j["round"] = x->round;
    }
    else if (auto const* x = std::get_if<CoinOutput>(&o))
    {
        j["round"] = x->round;
        j["value"] = x->value;
    }
    else if (auto const* x = std::get_if<RoundAdvanced>(&o))
    {
        j["round"] = x->round;
        j["B"] = x->b.toString();
        j["coin"] = x->coin;
        j["estimate"] = x->nextEstimate;
    }
    else if (auto const* x = std::get_if<Decided>(&o))
    {
        j["bit"] = x->bit;
        j["round"] = x->round;
    }
    else if (auto const* x = std::get_if<Note>(&o))
    {
        j["text"] = x->text;
    }
    return j;
}

Json
setJson(ProcessSet const& s)
{
    Json arr = Json::array();
    for (auto p : s.members())
    {
        arr.push_back(p);
    }
    return arr;
}

} // namespace asymbft
