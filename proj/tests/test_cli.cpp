#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "dirac3t/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::initializer_list<std::string> args) {
    std::ostringstream out, err;
    const int code = dirac3t::cli::run(std::vector<std::string>(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("flow subcommand") {
    auto r = run({"flow", "--khat", "0,0,2", "--loop", "0,0,1"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["flow"] == 2);
    CHECK(j["closed_form"] == 2);
    CHECK(j["loop"] == json::array({0, 0, 1}));

    // byte-identical reruns
    auto r2 = run({"flow", "--khat", "0,0,2", "--loop", "0,0,1"});
    CHECK(r.out == r2.out);
}

TEST_CASE("exists and index subcommands") {
    auto r = run({"exists", "--khat", "0,0,2", "--lattice", "1,0,0;0,1,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"exists\":true}\n");

    auto r2 = run({"exists", "--khat", "0,0,2", "--lattice", "0,0,1"});
    CHECK(r2.code == 0);
    CHECK(r2.out == "{\"exists\":false}\n");

    auto r3 = run({"index", "--khat", "0,0,2", "--lattice", "0,0,1"});
    CHECK(r3.code == 0);
    CHECK(json::parse(r3.out)["values"] == json::array({2}));
}

TEST_CASE("spectrum subcommand with pi literals and csv") {
    auto r = run({"spectrum", "--khat", "0,0,1", "--alpha", "0,0,2pi", "--cutoff", "1"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    // gauge shift moves the zero branch to l = -1 but keeps the value 0
    CHECK(j["entries"].size() == 1);
    CHECK(j["entries"][0]["value"] == 0.0);

    auto rc = run({"spectrum", "--khat", "0,0,1", "--cutoff", "7", "--format", "csv"});
    CHECK(rc.code == 0);
    CHECK(rc.out.rfind("value,mult,label\n", 0) == 0);
}

TEST_CASE("error paths and exit codes") {
    // domain error: invalid cutoff
    auto r = run({"spectrum", "--khat", "0,0,0", "--cutoff", "-1"});
    CHECK(r.code == 1);
    json j = json::parse(r.out);
    CHECK(j.contains("error"));
    CHECK(j["module"] == "spectrum_engine");

    // domain error with module name surfaced
    auto r1 = run({"classify", "--khat", "0,0,2", "--lattice", "0,0,1"});
    CHECK(r1.code == 1);
    CHECK(json::parse(r1.out)["module"] == "spectral_sections");

    // usage errors
    CHECK(run({"flow", "--khat", "0,0,2"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"spectrum", "--khat", "0,0,x", "--cutoff", "1"}).code == 2);

    // help is exit 0
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 0);
}

TEST_CASE("classify and sections build") {
    auto r = run({"classify", "--khat", "0,0,3", "--lattice", "1,0,0;0,1,0"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["case"] == "nontrivial");
    CHECK(j["h"] == 3);
    CHECK(j["ranks"].size() == 4);

    auto rt = run({"classify", "--khat", "0,0,0", "--lattice", "2,0,0;0,1,0"});
    json jt = json::parse(rt.out);
    CHECK(jt["case"] == "trivial");
    CHECK(jt["cosets"].size() == 2);

    auto rb = run({"sections", "build", "--khat", "0,0,0", "--lattice", "1,0,0;0,1,0", "--R", "2",
                   "--grid", "24", "--degrees", "0:1"});
    CHECK(rb.code == 0);
    json jb = json::parse(rb.out);
    CHECK(jb["verify"]["ok"] == true);
    CHECK(jb["degree_certificates"] == json::array({1}));

    auto rn = run({"sections", "build", "--khat", "0,0,2", "--lattice", "1,0,0;0,1,0", "--R", "1",
                   "--grid", "24", "--rank", "1", "--chern", "2"});
    CHECK(rn.code == 0);
    json jn = json::parse(rn.out);
    CHECK(jn["verify"]["ok"] == true);
    CHECK(jn["chern_certificate"] == 2);

    // grid cap and guard errors
    CHECK(run({"sections", "build", "--khat", "0,0,0", "--lattice", "1,0,0;0,1,0", "--R", "2",
               "--grid", "500", "--degrees", "0:0"})
              .code == 1);
}

TEST_CASE("verify subcommands") {
    auto rb = run({"verify", "blocks", "--count", "500"});
    CHECK(rb.code == 0);
    json j = json::parse(rb.out);
    CHECK(j["count"] == 500);
    CHECK(j["max_clifford_eig_dev"].get<double>() < 1e-11);

    auto rf = run({"verify", "flow", "--khat", "1,2,3", "--loop", "1,1,1"});
    CHECK(rf.code == 0);
    json jf = json::parse(rf.out);
    CHECK(jf["match"] == true);
    CHECK(jf["numeric"] == 6);

    auto rl = run({"verify", "landau", "--h", "1", "--grid", "16", "--levels", "1"});
    CHECK(rl.code == 0);
    json jl = json::parse(rl.out);
    CHECK(jl["zero_modes"] == 1);
}
