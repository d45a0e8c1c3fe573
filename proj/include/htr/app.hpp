#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "htr/certify.hpp"
#include "htr/json_io.hpp"
#include "htr/search.hpp"

namespace htr::app {

/// Fully resolved command-line configuration; echoed at the top of every report.
struct RunConfig {
    std::string command;
    std::string f;         // named map, "theorem5", or empty when --measures is used
    std::string measures;  // path to a measure JSON file
    std::string region = "lens";
    std::size_t n = 0;  // 0: command default
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    bool expect_collision = false;
    std::string out;
    unsigned workers = 0;  // not echoed: results do not depend on it
    // command-specific
    std::string kind;
    std::string id;
    double w_re = 0.1, w_im = 0.0, delta = 0.5;
    std::size_t k = 3;
    bool picard = false, goodman = false;
    std::string z;
    double alpha = kPi / 8.0, s = 0.5, t = -0.5, lambda = 0.3;
    std::size_t index = 2;
};

enum ExitCode : int { kSuccess = 0, kFalsified = 1, kUsage = 2 };

inline json config_json(RunConfig const& c) {
    json j{{"command", c.command}};
    if (!c.f.empty()) j["f"] = c.f;
    if (!c.measures.empty()) j["measures"] = c.measures;
    if (c.command == "render" || c.command == "certify") j["region"] = c.region;
    j["n"] = c.n;
    if (c.command == "radius" || c.command == "conjecture") j["samples"] = c.samples;
    j["seed"] = c.seed;
    if (c.command == "certify") j["expect_collision"] = c.expect_collision;
    if (!c.out.empty()) j["out"] = c.out;
    if (!c.kind.empty()) j["kind"] = c.kind;
    if (!c.id.empty()) j["id"] = c.id;
    if (c.command == "demo") {
        j["picard"] = c.picard;
        j["goodman"] = c.goodman;
        j["w"] = {c.w_re, c.w_im};
        j["delta"] = c.delta;
        j["k"] = c.k;
    }
    if (c.command == "witness") {
        if (!c.z.empty()) j["z"] = c.z;
        j["alpha"] = c.alpha;
        j["s"] = c.s;
        j["t"] = c.t;
        j["lambda"] = c.lambda;
        j["index"] = c.index;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Map resolution

struct ResolvedMap {
    std::string name;
    std::function<cplx(cplx)> f;
    std::optional<HarmonicMap> harmonic;
    std::optional<AnalyticEvaluator> analytic;
};

inline ResolvedMap resolve_map(RunConfig const& c) {
    if (!c.measures.empty() && !c.f.empty()) fail(ErrorKind::InvalidInput, "give either --f or --measures, not both");
    if (!c.measures.empty()) {
        auto spec = load_measures(c.measures);
        if (spec.mu) {
            auto map = HarmonicMap::shear(*spec.mu, spec.nu);
            return {"sheared", [map](cplx z) { return map(z); }, map, std::nullopt};
        }
        auto F = robertson_evaluator(spec.nu);
        return {"robertson", F.value, std::nullopt, F};
    }
    if (c.f.empty()) fail(ErrorKind::InvalidInput, "a map is required: --f NAME or --measures FILE");
    if (c.f == "theorem5") {
        auto map = theorem5_map().map;
        return {"theorem5", [map](cplx z) { return map(z); }, map, std::nullopt};
    }
    auto F = named_map(c.f);
    return {F.name, F.value, std::nullopt, F};
}

inline cplx parse_complex(std::string const& s) {
    const auto comma = s.find(',');
    const std::string re = s.substr(0, comma);
    const std::string im = comma == std::string::npos ? "0" : s.substr(comma + 1);
    try {
        std::size_t p1 = 0, p2 = 0;
        const double a = std::stod(re, &p1);
        const double b = std::stod(im, &p2);
        if (p1 != re.size() || p2 != im.size()) throw std::invalid_argument(s);
        return {a, b};
    } catch (std::exception const&) {
        fail(ErrorKind::InvalidInput, "bad complex number '" + s + "' (expected re,im)");
    }
}

// ---------------------------------------------------------------------------
// Output helpers

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline void write_file(std::string const& path, std::string const& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << content;
}

/// SVG over the fixed window [-2, 2]^2 (y up); far-away points are clamped to keep the file readable.
inline std::string render_svg(std::vector<cplx> const& boundary, std::vector<cplx> const& cloud) {
    auto clamp = [](double v) { return std::clamp(v, -1e3, 1e3); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -2 4 4\" width=\"800\" height=\"800\">\n";
    os << "<rect x=\"-2\" y=\"-2\" width=\"4\" height=\"4\" fill=\"white\"/>\n";
    os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" points=\"";
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        if (k) os << ' ';
        os << fmt6(clamp(boundary[k].real())) << ',' << fmt6(clamp(-boundary[k].imag()));
    }
    os << "\"/>\n";
    for (cplx w : cloud)
        os << "<circle cx=\"" << fmt6(clamp(w.real())) << "\" cy=\"" << fmt6(clamp(-w.imag())) << "\" r=\"0.008\" fill=\"steelblue\"/>\n";
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Commands. Each writes one JSON document to `out` and returns an exit code.

inline int cmd_render(RunConfig c, std::ostream& out) {
    if (c.n == 0) c.n = 1024;
    if (c.out.empty()) c.out = "render";
    const auto map = resolve_map(c);
    const auto region = parse_region(c.region);
    const auto boundary = region_boundary(region, c.n);
    Polyline image;
    image.closed = boundary.closed;
    image.points = parallel_map<cplx>(boundary.size(), [&](std::size_t k) { return map.f(boundary.points[k]); }, c.workers);
    std::vector<cplx> cloud;
    for (cplx z : region_grid(region, 24)) {
        try {
            cloud.push_back(map.f(z));
        } catch (Error const&) {
        }
    }
    std::ostringstream csv;
    csv << "z_re,z_im,f_re,f_im\n";
    for (std::size_t k = 0; k < boundary.size(); ++k)
        csv << fmt17(boundary.points[k].real()) << ',' << fmt17(boundary.points[k].imag()) << ',' << fmt17(image.points[k].real()) << ','
            << fmt17(image.points[k].imag()) << '\n';
    write_file(c.out + ".csv", csv.str());
    write_file(c.out + ".svg", render_svg(image.points, cloud));
    json j{{"config", config_json(c)},
           {"result",
            {{"csv", c.out + ".csv"},
             {"svg", c.out + ".svg"},
             {"boundary_points", boundary.size()},
             {"grid_points", cloud.size()},
             {"boundary_self_intersections", self_intersections(image, 1e-12, 1024).size()}}}};
    out << j.dump(2) << '\n';
    return kSuccess;
}

inline int cmd_certify(RunConfig c, std::ostream& out) {
    if (c.n == 0) c.n = 2048;
    const auto map = resolve_map(c);
    const auto region = parse_region(c.region);
    CertifyOptions opts;
    opts.workers = c.workers;
    const auto verdict = boundary_univalence_certify(map.f, region, c.n, opts);
    std::vector<cplx> grid = region_grid(region, 64);
    for (int k = 1; k <= 99; ++k) {
        const cplx x(-1.0 + 0.02 * k, 0.0);
        if (region_contains(region, x)) grid.push_back(x);
    }
    const auto tr = typical_reality_check(map.f, grid, c.workers);
    const auto lu = map.harmonic ? local_univalence_scan(*map.harmonic, region, 100) : local_univalence_scan(*map.analytic, region, 100);
    json j{{"config", config_json(c)}, {"verdict", to_json(verdict)}, {"typical_reality", to_json(tr)}, {"local_univalence", to_json(lu)}};
    out << j.dump(2) << '\n';
    if (c.expect_collision) return verdict.outcome == Outcome::Collision ? kSuccess : kFalsified;
    return verdict.outcome == Outcome::CertifiedAtResolution ? kSuccess : kFalsified;
}

inline int cmd_radius(RunConfig c, std::ostream& out) {
    if (c.n == 0) c.n = 1024;
    if (c.kind.empty()) c.kind = "ru";
    RadiusOptions ro;
    if (c.kind == "ru") ro.kind = RadiusKind::HarmonicRu;
    else if (c.kind == "T") ro.kind = RadiusKind::AnalyticT;
    else fail(ErrorKind::InvalidInput, "radius --kind must be ru or T");
    ro.samples = c.samples;
    ro.resolution = c.n;
    ro.seed = c.seed;
    ro.workers = c.workers;
    const auto rep = radius_estimate(ro);
    json j{{"config", config_json(c)}, {"result", to_json(rep)}};
    out << j.dump(2) << '\n';
    for (auto const& b : rep.brackets)
        if (!(b.r_lo < b.r_hi)) return kFalsified;
    return kSuccess;
}

inline int cmd_conjecture(RunConfig c, std::ostream& out) {
    if (c.n == 0) c.n = 2048;
    if (c.id.empty()) c.id = "2";
    ConjectureOptions co;
    if (c.id == "1") co.id = ConjectureId::RadiusU;
    else if (c.id == "2") co.id = ConjectureId::HalfLens;
    else if (c.id == "open3") co.id = ConjectureId::Open3;
    else fail(ErrorKind::InvalidInput, "conjecture --id must be 1, 2 or open3");
    co.samples = c.samples;
    co.resolution = c.n;
    co.seed = c.seed;
    co.workers = c.workers;
    const auto rep = conjecture_scan(co);
    json j{{"config", config_json(c)}, {"result", to_json(rep)}};
    out << j.dump(2) << '\n';
    if (!rep.confirmed.empty()) return kFalsified;
    if (co.id == ConjectureId::Open3 && (rep.goodman_inside->outcome != Outcome::CertifiedAtResolution || !*rep.goodman_outside))
        return kFalsified;
    return kSuccess;
}

inline int cmd_witness(RunConfig c, std::ostream& out) {
    if (c.kind.empty()) c.kind = "theorem5";
    json result;
    if (c.kind == "critical") {
        const cplx z0 = parse_complex(c.z.empty() ? "0," + fmt17(kSqrt2Minus1) : c.z);
        const double t0 = critical_t_for_boundary_point(z0);
        result = to_json(WitnessReport{"critical-point", {{"t0", t0}}, {z0}, {std::abs(ft_eval(t0, z0).derivative)}});
    } else if (c.kind == "scaled") {
        const cplx z0 = parse_complex(c.z.empty() ? "0,0.45" : c.z);
        const auto sc = scaled_critical_T(z0);
        result = to_json(WitnessReport{"critical-point", {{"t", sc.t}, {"R", sc.R}}, {z0}, {sc.residual}});
    } else if (c.kind == "proposition") {
        const auto nu = proposition_measure(c.alpha);
        const double lambda = nu.atoms().back().w;
        result = to_json(WitnessReport{"critical-point",
                                       {{"alpha", c.alpha}, {"lambda", lambda}},
                                       {std::polar(1.0, c.alpha)},
                                       {proposition_residual(c.alpha, lambda), proposition_residual(c.alpha, lambda - 0.01),
                                        proposition_residual(c.alpha, lambda + 0.01)}});
    } else if (c.kind == "nonconvexity") {
        const cplx a = nonconvexity_witness(c.s, c.t, c.lambda);
        const double res = std::abs((1.0 - c.lambda) * qt_prime(c.s, a) + c.lambda * qt_prime(c.t, a));
        result = to_json(WitnessReport{"nonconvexity", {{"s", c.s}, {"t", c.t}, {"lambda", c.lambda}}, {a}, {res}});
    } else if (c.kind == "theorem5") {
        result = to_json(theorem5_collision(c.alpha));
        result["sqrt_branch"] = "principal";
    } else if (c.kind == "coefficients") {
        result = to_json(coefficient_extremes(c.index, c.n == 0 ? 256 : c.n));
    } else {
        fail(ErrorKind::InvalidInput, "witness --kind must be critical, scaled, proposition, nonconvexity, theorem5 or coefficients");
    }
    json j{{"config", config_json(c)}, {"result", result}};
    out << j.dump(2) << '\n';
    return kSuccess;
}

inline int cmd_demo(RunConfig c, std::ostream& out) {
    if (!c.picard && !c.goodman) c.picard = c.goodman = true;
    if (c.n == 0) c.n = 2048;
    json result = json::object();
    int code = kSuccess;
    if (c.picard) {
        const cplx w(c.w_re, c.w_im);
        json pts = json::array();
        try {
            for (cplx z : picard_preimages(w, c.delta, c.k))
                pts.push_back({{"z", to_json(z)}, {"dist_to_minus_one", std::abs(z + 1.0)}, {"residual", std::abs(picard_map(z) - w)}});
            result["picard"] = {{"preimages", pts}};
        } catch (Error const& e) {
            if (e.kind() != ErrorKind::SearchFailure) throw;
            result["picard"] = {{"error", e.what()}};
            code = kFalsified;
        }
    }
    if (c.goodman) {
        const cplx z0 = cplx(1.0, kSqrt2) / 3.0;
        const auto inside = boundary_univalence_certify(named_map("goodman"), Region::disk(0.99 * kInvSqrt3), c.n);
        const auto outside = goodman_collision(kInvSqrt3 + 0.01);
        result["goodman"] = {{"z0", to_json(z0)},
                             {"G_z0", to_json(goodman_G(z0))},
                             {"G_minus_conj_z0", to_json(goodman_G(-std::conj(z0)))},
                             {"certified_inside", to_json(inside)},
                             {"collision_outside", outside ? to_json(*outside) : json(nullptr)}};
        if (inside.outcome != Outcome::CertifiedAtResolution || !outside) code = kFalsified;
    }
    json j{{"config", config_json(c)}, {"result", result}};
    out << j.dump(2) << '\n';
    return code;
}

/// Dispatches a parsed config; library errors map to exit codes (usage problems to 2, the rest to 1).
inline int run(RunConfig const& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "render") return cmd_render(c, out);
        if (c.command == "certify") return cmd_certify(c, out);
        if (c.command == "radius") return cmd_radius(c, out);
        if (c.command == "conjecture") return cmd_conjecture(c, out);
        if (c.command == "witness") return cmd_witness(c, out);
        if (c.command == "demo") return cmd_demo(c, out);
        err << "unknown command '" << c.command << "'\n";
        return kUsage;
    } catch (Error const& e) {
        json j{{"config", config_json(c)}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
        err << j.dump(2) << '\n';
        const bool usage = e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::InvalidMeasure;
        return usage ? kUsage : kFalsified;
    }
}

}  // namespace htr::app
