#pragma once

#include "classify.hpp"
#include "flow.hpp"
#include "series.hpp"

#include <json.hpp>

#include <string>

namespace flows {

using json = nlohmann::ordered_json;

inline json to_json(const VectorField& vf) { return json::array({vf.w.to_string(), vf.r.to_string()}); }

inline json to_json(const LinearMap2& L)
{
    return json::array({L.a.get_str(), L.b.get_str(), L.c.get_str(), L.d.get_str()});
}

inline json to_json(const HomBir& h)
{
    return {{"P", h.P().to_string()}, {"Q", h.Q().to_string()}, {"L", to_json(h.L())}, {"text", h.to_string()}};
}

inline json to_json(const CanonicalizationResult& r)
{
    json j;
    j["verdict"] = to_string(r.verdict);
    bool has_level = r.verdict == Verdict::RationalFlow || r.verdict == Verdict::NonRationalGenus1;
    j["level"] = has_level ? json(r.level) : json(nullptr);
    j["ell"] = (r.verdict == Verdict::RationalFlow || r.verdict == Verdict::PseudoLog) ? to_json(r.ell) : json(nullptr);
    j["orbit_W"] = r.orbit_W ? json(r.orbit_W->to_string()) : json(nullptr);
    if (r.pN)
        j["coords"] = {{"kind", "p_N"}, {"value", json::array({r.pN->X.get_str(), r.pN->Y.get_str(), r.pN->Z.get_str()})}};
    else if (r.phat)
        j["coords"] = {{"kind", "p_hat"}, {"value", r.phat->to_string()}};
    else
        j["coords"] = nullptr;
    if (r.vf && !r.vf->is_zero()) {
        ZerosPoles zp = zeros_poles(*r.vf);
        j["zeros_poles"] = json::array({zp.zeros, zp.poles});
        j["vector_field"] = to_json(*r.vf);
    } else {
        j["zeros_poles"] = nullptr;
        j["vector_field"] = nullptr;
    }
    if (r.univariate)
        j["univariate"] = json::array({r.univariate->U.get_str(), r.univariate->V.get_str(), r.univariate->W.get_str()});
    switch (r.verdict) {
    case Verdict::Degenerate: {
        const DegenerateForm& d = *r.degenerate;
        j["degenerate"] = {{"zero_flow", d.zero_flow},
                           {"R", d.zero_flow ? json(nullptr) : json(d.R.to_string())},
                           {"c", d.c.get_str()},
                           {"A", d.A.get_str()},
                           {"B", d.B.get_str()}};
        break;
    }
    case Verdict::NonRationalGenus1: j["pair"] = json::array({r.pair.first, r.pair.second}); break;
    case Verdict::NonIntegerLevel: j["delta_squared"] = r.delta_squared.get_str(); break;
    case Verdict::NeedsRationalRoot: j["blocking_poly"] = r.blocking_poly.to_string(); break;
    default: break;
    }
    if (!r.reason.empty())
        j["reason"] = r.reason;
    return j;
}

inline json level_json(const LevelResult& lv)
{
    json j;
    switch (lv.tag) {
    case LevelResult::IdentityFlow: j["tag"] = "Identity"; break;
    case LevelResult::Level:
        j["tag"] = "Level";
        j["N"] = lv.N;
        break;
    case LevelResult::NonIntegerSquare:
        j["tag"] = "NonIntegerSquare";
        j["value"] = lv.value.get_str();
        break;
    default: j["tag"] = "Indeterminate"; break;
    }
    return j;
}

inline json jets_json(const JetTable& t)
{
    json parts = json::array();
    for (int i = 1; i <= t.order; ++i)
        parts.push_back({{"i", i}, {"u", t.u_parts[i].to_string()}, {"v", t.v_parts[i].to_string()}});
    return parts;
}

} // namespace flows
