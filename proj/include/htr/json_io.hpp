#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "htr/certify.hpp"
#include "htr/measures.hpp"
#include "htr/search.hpp"

namespace htr {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------
// Measures: {"nu":[{"t":0.5,"w":1.0}],"mu":[{"theta":0.0,"w":1.0}]}

/// A measure file with only "nu" describes an analytic member of T.
struct MeasureSpec {
    SegmentMeasure nu;
    std::optional<CircleMeasure> mu;
};

namespace detail {

inline double number_field(json const& obj, char const* key) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number())
        fail(ErrorKind::InvalidMeasure, std::string("measure atom needs numeric '") + key + "'");
    return obj.at(key).get<double>();
}

}  // namespace detail

inline MeasureSpec measures_from_json(json const& j) {
    if (!j.is_object() || !j.contains("nu") || !j.at("nu").is_array()) fail(ErrorKind::InvalidMeasure, "measure JSON needs a 'nu' array");
    std::vector<SegmentAtom> nu;
    for (auto const& a : j.at("nu")) nu.push_back({detail::number_field(a, "t"), detail::number_field(a, "w")});
    MeasureSpec spec{SegmentMeasure::normalize(std::move(nu)), std::nullopt};
    if (j.contains("mu")) {
        if (!j.at("mu").is_array()) fail(ErrorKind::InvalidMeasure, "'mu' must be an array");
        std::vector<CircleAtom> mu;
        for (auto const& a : j.at("mu")) mu.push_back({detail::number_field(a, "theta"), detail::number_field(a, "w")});
        spec.mu = CircleMeasure::normalize(std::move(mu));
    }
    return spec;
}

inline MeasureSpec load_measures(std::string const& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open measure file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (json::parse_error const& e) {
        fail(ErrorKind::InvalidMeasure, std::string("measure file is not valid JSON: ") + e.what());
    }
    return measures_from_json(j);
}

inline json to_json(SegmentMeasure const& nu) {
    json arr = json::array();
    for (auto const& a : nu.atoms()) arr.push_back({{"t", a.t}, {"w", a.w}});
    return arr;
}

inline json to_json(CircleMeasure const& mu) {
    json arr = json::array();
    for (auto const& a : mu.atoms()) arr.push_back({{"theta", a.theta}, {"w", a.w}});
    return arr;
}

inline json to_json(MeasurePair const& m) { return {{"nu", to_json(m.nu)}, {"mu", to_json(m.mu)}}; }

// ---------------------------------------------------------------------------
// Verdicts and reports

inline json to_json(CollisionWitness const& w) { return {{"z1", to_json(w.z1)}, {"z2", to_json(w.z2)}, {"df", w.df}}; }

inline json to_json(UnivalenceVerdict const& v) {
    json j;
    j["outcome"] = to_string(v.outcome);
    j["resolution"] = v.resolution;
    j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    json corners = json::array();
    for (cplx c : v.excluded_corners) corners.push_back(to_json(c));
    j["diagnostics"] = {{"windings", v.windings},
                        {"crossings_found", v.crossings_found},
                        {"crossings_dismissed", v.crossings_dismissed},
                        {"image_scale", v.image_scale},
                        {"exclusion_radius", v.exclusion_radius},
                        {"excluded_corners", corners},
                        {"note", v.note}};
    return j;
}

inline json to_json(TypicalRealityVerdict const& v) {
    json j{{"pass", v.pass}, {"points_checked", v.points_checked}};
    if (v.witness) j["witness"] = {{"z", to_json(*v.witness)}, {"f", to_json(v.witness_value)}};
    return j;
}

inline json to_json(LocalUnivalenceReport const& r) {
    json pts = json::array();
    for (cplx c : r.critical_points) pts.push_back(to_json(c));
    return {{"min_abs_jacobian", r.min_abs_jacobian}, {"argmin", to_json(r.argmin)}, {"points", r.points}, {"critical_points", pts}};
}

inline json to_json(WitnessReport const& w) {
    json params = json::object();
    for (auto const& [k, v] : w.parameters) params[k] = v;
    json pts = json::array();
    for (cplx z : w.points) pts.push_back(to_json(z));
    return {{"kind", w.kind}, {"parameters", params}, {"points", pts}, {"residuals", w.residuals}};
}

inline json to_json(RadiusReport const& r) {
    json brackets = json::array();
    for (auto const& b : r.brackets)
        brackets.push_back({{"eps", b.eps}, {"r_lo", b.r_lo}, {"r_hi", b.r_hi}, {"witness", to_json(b.witness)}});
    return {{"kind", to_string(r.options.kind)},
            {"samples", r.options.samples},
            {"resolution", r.options.resolution},
            {"seed", r.options.seed},
            {"bisection_steps", r.options.bisection_steps},
            {"tolerances", {{"delta_z", 1e-3}, {"delta_w_rel", 1e-9}, {"segment_touch_rel", 1e-12}}},
            {"brackets", brackets}};
}

inline json to_json(ConjectureReport const& r) {
    json j{{"id", to_string(r.options.id)},
           {"samples", r.options.samples},
           {"resolution", r.options.resolution},
           {"seed", r.options.seed},
           {"summary", r.summary}};
    if (r.radius) {
        j["radius"] = to_json(*r.radius);
        return j;
    }
    j["certified"] = r.certified;
    j["inconclusive"] = r.inconclusive;
    j["unconfirmed_collisions"] = r.unconfirmed_collisions;
    if (r.options.id == ConjectureId::Open3) j["skipped_not_locally_univalent"] = r.skipped;
    json confirmed = json::array();
    for (auto const& w : r.confirmed) confirmed.push_back(to_json(w));
    j["confirmed_collisions"] = confirmed;
    if (r.goodman_inside) j["goodman_inside"] = to_json(*r.goodman_inside);
    if (r.goodman_outside) j["goodman_outside"] = *r.goodman_outside ? to_json(**r.goodman_outside) : json(nullptr);
    return j;
}

inline json to_json(CoefficientExtremes const& c) {
    return {{"n", c.n},
            {"max_a", c.max_a},
            {"a_at", {{"theta", c.a_theta}, {"t", c.a_t}}},
            {"max_b", c.max_b},
            {"b_at", {{"theta", c.b_theta}, {"t", c.b_t}}}};
}

}  // namespace htr
