#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "simpctx/builtins.h"
#include "simpctx/json_io.h"

using namespace simpctx;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SIMPCTX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string scenario(const std::string& name) {
    return std::string(SIMPCTX_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("every shipped scenario file validates") {
    for (const char* name :
         {"triangle.json", "glued_triangle.json", "diamond.json", "pr_box.json",
          "noisy_pr_box_3_4.json", "mermin_state_dep_bell.json", "mermin_state_indep.json",
          "chsh_discrete.json", "diamond_glue.json"}) {
        auto r = run("validate " + scenario(name));
        CAPTURE(name);
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("scenario files round-trip byte-identically once canonicalized") {
    for (const char* name :
         {"triangle.json", "glued_triangle.json", "diamond.json", "pr_box.json",
          "mermin_state_dep_bell.json", "mermin_state_indep.json", "chsh_discrete.json",
          "diamond_glue.json"}) {
        CAPTURE(name);
        Scenario sc = loadScenario(scenario(name));
        std::string once = canonicalDump(serializeScenario(sc));
        Scenario back = parseScenario(Json::parse(once));
        std::string twice = canonicalDump(serializeScenario(back));
        CHECK(once == twice);
    }
}

TEST_CASE("check: PR box contextual with a certificate, triangle noncontextual") {
    auto pr = run("check " + scenario("pr_box.json"));
    CHECK(pr.exit_code == 1);
    Json report = Json::parse(pr.out);
    CHECK(report.at("contextual") == true);
    CHECK(report.contains("separating_functional"));

    auto tri = run("check " + scenario("triangle.json"));
    CHECK(tri.exit_code == 0);
    CHECK(Json::parse(tri.out).contains("mixture"));

    CHECK(run("check " + scenario("glued_triangle.json")).exit_code == 1);
    CHECK(run("check --strong " + scenario("glued_triangle.json")).exit_code == 1);
    CHECK(run("check --logical " + scenario("glued_triangle.json")).exit_code == 1);
    CHECK(run("check " + scenario("diamond.json")).exit_code == 0);
}

TEST_CASE("deterministics: the CHSH scenarios have 16 assignments") {
    auto r = run("deterministics " + scenario("pr_box.json"));
    CHECK(r.exit_code == 0);
    CHECK(Json::parse(r.out).at("count") == 16);
}

TEST_CASE("chsh: exact values 3 and 5/2") {
    auto pr = run("chsh " + scenario("pr_box.json"));
    CHECK(pr.exit_code == 1);
    CHECK(Json::parse(pr.out).at("max_value") == "3");
    auto noisy = run("chsh " + scenario("noisy_pr_box_3_4.json"));
    CHECK(noisy.exit_code == 1);
    CHECK(Json::parse(noisy.out).at("max_value") == "5/2");
}

TEST_CASE("extend: the PR box fails against the torus with a certificate") {
    auto r = run("extend " + scenario("pr_box.json") + " --into torus");
    CHECK(r.exit_code == 1);
    Json report = Json::parse(r.out);
    CHECK(report.at("feasible") == false);
    CHECK(!report.at("certificate").empty());

    auto ok = run("extend " + scenario("noisy_pr_box_3_4.json") + " --into torus");
    CHECK(ok.exit_code == 1);  // still above the CHSH bound
}

TEST_CASE("witness: both Mermin scenarios are strongly contextual by cohomology") {
    auto dep = run("witness " + scenario("mermin_state_dep_bell.json") + " --subspace boundary");
    CHECK(dep.exit_code == 1);
    CHECK(Json::parse(dep.out).at("verdict") == "strongly_contextual");
    auto indep = run("witness " + scenario("mermin_state_indep.json") + " --subspace loop");
    CHECK(indep.exit_code == 1);
    CHECK(Json::parse(indep.out).at("verdict") == "strongly_contextual");
}

TEST_CASE("h1 reports invariant factors") {
    auto r = run("h1 " + scenario("pr_box.json") + " --d 2");
    CHECK(r.exit_code == 0);
    Json report = Json::parse(r.out);
    CHECK(report.at("invariants").size() == 1);
}

TEST_CASE("born reproduces the shipped Bell-state table") {
    auto r = run("born " + scenario("mermin_state_dep_bell.json"));
    REQUIRE(r.exit_code == 0);
    Json report = Json::parse(r.out);
    Scenario shipped = loadScenario(scenario("mermin_state_dep_bell.json"));
    for (const auto& [label, cell] : shipped.distribution_cells) {
        CAPTURE(label);
        CHECK(report.at("distribution").contains(label));
        CHECK(distributionFromJson(report.at("distribution").at(label)) == cell);
    }
}

TEST_CASE("glue merges the two classical halves of the diamond") {
    auto r = run("glue " + scenario("diamond_glue.json"));
    CHECK(r.exit_code == 0);
    Json report = Json::parse(r.out);
    CHECK(report.at("compatible") == true);
    CHECK(report.at("glued").size() == 4);
}

TEST_CASE("facets of the diamond boundary") {
    auto r = run("facets " + scenario("diamond.json"));
    CHECK(r.exit_code == 0);
    Json report = Json::parse(r.out);
    CHECK(report.at("facets").size() == 16);
}

TEST_CASE("discrete-embed emits a checkable one-dimensional scenario") {
    auto r = run("discrete-embed " + scenario("chsh_discrete.json"));
    REQUIRE(r.exit_code == 0);
    std::string tmp = "/tmp/simpctx_embedded.json";
    {
        std::ofstream out(tmp);
        out << r.out;
    }
    auto verdict = run("check " + tmp);
    CHECK(verdict.exit_code == 1);  // the PR tables stay contextual
    std::remove(tmp.c_str());
}

TEST_CASE("usage and resource errors use their own exit codes") {
    CHECK(run("check /no/such/file.json").exit_code == 2);
    CHECK(run("frobnicate x").exit_code == 2);
    std::string cmd = "SIMPCTX_MAX_VERTICES=4 " + std::string(SIMPCTX_CLI_PATH) + " check " +
                      scenario("pr_box.json") + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);

    std::string bad = "/tmp/simpctx_bad.json";
    {
        std::ofstream out(bad);
        out << "{ not json";
    }
    CHECK(run("validate " + bad).exit_code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("explicit presentations round-trip, including degenerate face refs") {
    SSetPtr d2 = builtinSpace("delta", {2});
    auto quo = quotient(d2, d2->namedSubspace("boundary"));
    Json pres = presentationToJson(*quo.space);
    SSetPtr back = presentationFromJson(pres);
    CHECK(isIsomorphic(*back, *quo.space));
    CHECK(canonicalDump(presentationToJson(*back)) == canonicalDump(pres));
}

TEST_CASE("a corrupted explicit presentation fails validation with exit 1") {
    SSetPtr d2 = builtinSpace("delta", {2});
    Json pres = presentationToJson(*d2);
    // Point the d1 face of the triangle at the wrong edge.
    for (auto& entry : pres.at("faces"))
        if (entry.at("simplex") == "012") entry.at("faces")[1] = "01";
    Json file = Json::object();
    Json wrap = Json::object();
    wrap["presentation"] = pres;
    file["space"] = wrap;
    std::string tmp = "/tmp/simpctx_corrupt.json";
    {
        std::ofstream out(tmp);
        out << canonicalDump(file);
    }
    auto r = run("validate " + tmp);
    CHECK(r.exit_code == 1);
    Json report = Json::parse(r.out);
    CHECK(!report.at("identity_violations").empty());
    std::remove(tmp.c_str());
}

TEST_CASE("born reproduces the shipped maximally-mixed table on the refined square") {
    auto r = run("born " + scenario("mermin_state_indep.json"));
    REQUIRE(r.exit_code == 0);
    Json report = Json::parse(r.out);
    Scenario shipped = loadScenario(scenario("mermin_state_indep.json"));
    for (const auto& [label, cell] : shipped.distribution_cells) {
        CAPTURE(label);
        CHECK(distributionFromJson(report.at("distribution").at(label)) == cell);
    }
}
