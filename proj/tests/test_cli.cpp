#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "sslab/analyze.hpp"
#include "sslab/catalog.hpp"
#include "sslab/wdata.hpp"

using namespace sslab;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const char* bin = std::getenv("SSLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SSLAB_BIN is not set");
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(bin) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string tmp_path(const std::string& name) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/sslab_cli_" + name;
}

}  // namespace

TEST_CASE("catalog list names every entry with parameters") {
    Run r = run("catalog list");
    CHECK(r.status == 0);
    for (const auto& e : list_entries()) {
        CHECK(has(r.out, e.name + "\n"));
        CHECK(has(r.out, e.citation));
    }
}

TEST_CASE("analyze exit status follows the expected record") {
    Run cat = run("analyze catenoid --param t=0.5 --kv");
    CHECK(cat.status == 0);
    CHECK(has(cat.out, "result=pass"));
    CHECK(has(cat.out, "contour.K=-12.566370614"));

    Run hel = run("analyze helicoid --kv --no-area");
    CHECK(hel.status == 0);
    CHECK(has(hel.out, "periods.pass=no"));
    CHECK(has(hel.out, "check.2=periods:expected-fail"));

    Run s1 = run("analyze singular1 -p a=2");
    CHECK(s1.status == 0);
    CHECK(has(s1.out, "index 2"));
    CHECK(has(s1.out, "index -2"));
    CHECK(has(s1.out, "result: PASS"));
}

TEST_CASE("analyze reports are deterministic") {
    Run a = run("analyze knoid --kv --no-area");
    Run b = run("analyze knoid --kv --no-area");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("analyze rejects bad input") {
    CHECK(run("analyze nosuch").status == 2);
    Run r = run("analyze catenoid -p t=2");
    CHECK(r.status == 2);
    CHECK(has(r.out, "-1 < t < 1"));
    CHECK(run("analyze catenoid -p bogus=1").status == 2);
    CHECK(run("analyze").status == 2);
}

TEST_CASE("in-process analyze flags a mismatch") {
    // Expected record deliberately wrong: the measured total is -4pi.
    CatalogEntry e = catenoid(0.5);
    e.expected->K_total = -8.0 * kPi;
    AnalysisReport r = analyze(e, Settings::defaults(), {false, false, 0});
    CHECK_FALSE(r.pass());
    bool found = false;
    for (const auto& c : r.checks) found = found || (c.name == "K_total contour" && !c.pass);
    CHECK(found);
}

TEST_CASE("data files are analyzed like catalog entries") {
    std::string path = tmp_path("cat.txt");
    save_wdata(catenoid(0.5).data, path);
    Run r = run("analyze --data " + path + " --kv --no-area");
    CHECK(r.status == 0);
    CHECK(has(r.out, "contour.K=-12.566370614"));
    CHECK(has(r.out, "end.1.kind=Regular"));
    CHECK(run("analyze --data " + tmp_path("missing.txt")).status == 2);
    std::remove(path.c_str());
}

TEST_CASE("mesh export writes an OBJ and scans") {
    std::string path = tmp_path("mesh.obj");
    Run r = run("mesh catenoid -p t=0 --res 32 --proj drop-x4 --out " + path);
    CHECK(r.status == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(has(ss.str(), "\nv "));
    CHECK(has(ss.str(), "\nf "));
    std::remove(path.c_str());

    Run s = run("mesh enneper_k -p k=1 -p c=i --res 96 --scan");
    CHECK(s.status == 0);
    CHECK(has(s.out, "self-intersections 2"));

    Run h = run("mesh helicoid --sheets 2 --res 32");
    CHECK(has(h.out, "-25.1327412"));

    CHECK(run("mesh catenoid --res 32 --out /nonexistent/dir/x.obj").status == 2);
    CHECK(run("mesh catenoid --res 32 --proj drop-x9 --out " + path).status == 2);
}

TEST_CASE("locus and scan-4pi emit CSV") {
    Run e = run("locus enneper2 -p c=-1");
    CHECK(e.status == 0);
    CHECK(has(e.out, "Empty"));
    Run c = run("locus maximal_catenoid --window annulus:0.5,2 --grid 64");
    CHECK(has(c.out, "Curve"));
    CHECK(has(c.out, "curve0,"));
    CHECK(run("locus maximal_catenoid --window square:1").status == 2);
    Run f = run("scan-4pi --m 1 --a 0.5,0.2");
    CHECK(f.status == 0);
    CHECK(has(f.out, "kind,re,im"));
    CHECK(run("scan-4pi --a 1").status == 2);
}

TEST_CASE("config file and SSLAB_CONFIG") {
    std::string a = tmp_path("a.cfg"), b = tmp_path("b.cfg");
    std::ofstream(a) << "locus_grid = 32\n";
    std::ofstream(b) << "locus_grid = 128\n";
    auto rows = [](const std::string& out) {
        int n = 0;
        for (char ch : out) n += ch == '\n';
        return n;
    };
    int coarse = rows(run("--config " + a + " locus maximal_catenoid").out);
    int fine = rows(run("--config " + a + " locus maximal_catenoid", "SSLAB_CONFIG=" + b).out);
    int direct = rows(run("--config " + b + " locus maximal_catenoid").out);
    CHECK(coarse < fine);
    CHECK(fine == direct);
    std::ofstream(a) << "no_such_key = 1\n";
    CHECK(run("--config " + a + " catalog list").status == 2);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("verify runs selected criteria") {
    Run r = run("verify --only 4 --only 11 --kv");
    CHECK(r.status == 0);
    CHECK(has(r.out, "criterion.4=pass"));
    CHECK(has(r.out, "criterion.11=pass"));
    CHECK(has(r.out, "result=pass"));
}
