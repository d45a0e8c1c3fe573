#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "htr/app.hpp"

using namespace htr;
using namespace htr::app;

namespace {

struct Ran {
    int code;
    std::string out, err;
};

Ran run_cfg(RunConfig const& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig certify(std::string f, std::string region) {
    RunConfig c;
    c.command = "certify";
    c.f = std::move(f);
    c.region = std::move(region);
    return c;
}

std::string sample(char const* name) { return std::string(HTR_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(MeasureJson, ParsesAndValidates) {
    auto spec = measures_from_json(json::parse(R"({"nu":[{"t":0.5,"w":2},{"t":-1,"w":2}],"mu":[{"theta":7.0,"w":1}]})"));
    ASSERT_EQ(spec.nu.size(), 2u);
    EXPECT_EQ(spec.nu.atoms()[0].t, -1.0);
    ASSERT_TRUE(spec.mu);
    EXPECT_NEAR(spec.mu->atoms()[0].theta, 7.0 - kTwoPi, 1e-15);
    EXPECT_FALSE(measures_from_json(json::parse(R"({"nu":[{"t":0,"w":1}]})")).mu);
    for (char const* bad : {R"({"mu":[]})", R"({"nu":[{"t":0}]})", R"({"nu":[{"t":"a","w":1}]})", R"({"nu":[{"t":2,"w":1}]})",
                            R"({"nu":[{"t":0,"w":1}],"mu":{}})"}) {
        try {
            measures_from_json(json::parse(bad));
            ADD_FAILURE() << bad;
        } catch (Error const& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidMeasure) << bad;
        }
    }
}

TEST(MeasureJson, SampleFiles) {
    EXPECT_EQ(load_measures(sample("three_atoms.json")).nu.size(), 3u);
    EXPECT_FALSE(load_measures(sample("analytic_ft.json")).mu);
    EXPECT_THROW(load_measures(sample("invalid_negative_weight.json")), Error);
    EXPECT_THROW(load_measures(sample("missing.json")), Error);
}

TEST(App, ParseComplex) {
    EXPECT_EQ(parse_complex("0.5,-0.25"), cplx(0.5, -0.25));
    EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0.0));
    EXPECT_THROW(parse_complex("a,b"), Error);
}

TEST(App, CertifyExitCodes) {
    auto koebe = run_cfg(certify("koebe", "lens"));
    EXPECT_EQ(koebe.code, kSuccess) << koebe.err;
    auto j = json::parse(koebe.out);
    EXPECT_EQ(j["verdict"]["outcome"], "CERTIFIED_AT_RESOLUTION");
    EXPECT_EQ(j["verdict"]["resolution"], 2048);
    EXPECT_TRUE(j["typical_reality"]["pass"].get<bool>());
    EXPECT_EQ(j["config"]["region"], "lens");

    auto t5 = certify("theorem5", "lens");
    EXPECT_EQ(run_cfg(t5).code, kFalsified);
    t5.expect_collision = true;
    auto r = run_cfg(t5);
    EXPECT_EQ(r.code, kSuccess);
    EXPECT_EQ(json::parse(r.out)["verdict"]["outcome"], "COLLISION");
}

TEST(App, MeasureFilesDriveCertify) {
    auto c = certify("", "disk:r=0.2134");
    c.measures = sample("three_atoms.json");
    auto r = run_cfg(c);
    EXPECT_EQ(r.code, kSuccess) << r.err;
    c.measures = sample("analytic_ft.json");
    c.region = "disk:r=0.4";
    EXPECT_EQ(run_cfg(c).code, kSuccess);
    // the lens boundary folds onto a slit under f_1/2, so the boundary test cannot decide
    c.region = "lens";
    auto folded = run_cfg(c);
    EXPECT_EQ(folded.code, kFalsified);
    EXPECT_EQ(json::parse(folded.out)["verdict"]["outcome"], "INCONCLUSIVE");
    c.measures = sample("invalid_negative_weight.json");
    auto bad = run_cfg(c);
    EXPECT_EQ(bad.code, kUsage);
    EXPECT_EQ(json::parse(bad.err)["error"]["kind"], "invalid-measure");
}

TEST(App, UsageErrors) {
    EXPECT_EQ(run_cfg(certify("koebe", "triangle")).code, kUsage);
    EXPECT_EQ(run_cfg(certify("cardioid", "lens")).code, kUsage);
    auto both = certify("koebe", "lens");
    both.measures = sample("three_atoms.json");
    EXPECT_EQ(run_cfg(both).code, kUsage);
    EXPECT_EQ(run_cfg(certify("", "lens")).code, kUsage);
    auto low = certify("koebe", "lens");
    low.n = 100;
    EXPECT_EQ(run_cfg(low).code, kUsage);
    RunConfig bogus;
    bogus.command = "bogus";
    EXPECT_EQ(run_cfg(bogus).code, kUsage);
}

TEST(App, RenderWritesCsvAndSvg) {
    const auto dir = std::filesystem::temp_directory_path() / "htr_render_test";
    std::filesystem::create_directories(dir);
    RunConfig c;
    c.command = "render";
    c.f = "ft:t=0.5";
    c.region = "disk:r=0.4";
    c.n = 64;
    c.out = (dir / "img").string();
    auto r = run_cfg(c);
    ASSERT_EQ(r.code, kSuccess) << r.err;
    std::ifstream csv(c.out + ".csv");
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "z_re,z_im,f_re,f_im");
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 64u);
    std::ifstream svg(c.out + ".svg");
    std::getline(svg, line);
    EXPECT_NE(line.find("<svg"), std::string::npos);
    EXPECT_EQ(json::parse(r.out)["result"]["boundary_self_intersections"], 0);
}

TEST(App, WitnessKinds) {
    RunConfig c;
    c.command = "witness";
    for (std::string kind : {"critical", "scaled", "proposition", "nonconvexity", "theorem5"}) {
        c.kind = kind;
        auto r = run_cfg(c);
        EXPECT_EQ(r.code, kSuccess) << kind << r.err;
        auto j = json::parse(r.out);
        EXPECT_TRUE(j["result"].contains("residuals")) << kind;
    }
    c.kind = "coefficients";
    c.n = 16;
    auto r = run_cfg(c);
    EXPECT_EQ(r.code, kSuccess);
    EXPECT_NEAR(json::parse(r.out)["result"]["max_a"].get<double>(), 2.5, 1e-12);
    c.kind = "unknown";
    EXPECT_EQ(run_cfg(c).code, kUsage);
    c.kind = "critical";
    c.z = "0,0.3";
    EXPECT_EQ(run_cfg(c).code, kFalsified);
}

TEST(App, DemoPicard) {
    RunConfig c;
    c.command = "demo";
    c.picard = true;
    auto r = run_cfg(c);
    ASSERT_EQ(r.code, kSuccess) << r.err;
    auto pts = json::parse(r.out)["result"]["picard"]["preimages"];
    ASSERT_EQ(pts.size(), 3u);
    for (auto const& p : pts) EXPECT_LT(p["residual"].get<double>(), 1e-10);
}

TEST(App, ReproducibleAcrossWorkers) {
    RunConfig c;
    c.command = "conjecture";
    c.id = "2";
    c.samples = 8;
    c.n = 512;
    c.seed = 4;
    c.workers = 3;
    auto a = run_cfg(c);
    c.workers = 1;
    auto b = run_cfg(c);
    EXPECT_EQ(a.code, kSuccess);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["config"].count("workers"), 0u);
}
