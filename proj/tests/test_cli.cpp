#include <doctest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "hfinsler/commands.hpp"
#include "support.hpp"

using namespace hfinsler::cli;

namespace {

CommandOptions opts(const std::string& command, const std::string& space) {
    CommandOptions o;
    o.command = command;
    o.space_path = testsupport::gallery(space);
    return o;
}

struct Run {
    int status;
    std::string out;
};

Run run_binary(const std::string& args) {
    const std::string cmd = std::string("NO_COLOR=1 \"") + HFINSLER_CLI_PATH + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

} // namespace

TEST_CASE("parse_vector") {
    CHECK(parse_vector("0,1,0").isApprox(testsupport::vec({0, 1, 0})));
    CHECK(parse_vector(" 1.5, -2e-1 ").isApprox(testsupport::vec({1.5, -0.2})));
    CHECK_THROWS(parse_vector("1,,2"));
    CHECK_THROWS(parse_vector("1,x"));
    CHECK_THROWS(parse_vector(""));
}

TEST_CASE("documented command examples") {
    auto c = run_command(opts("classify", "heisenberg"));
    CHECK(c.exit_code == kExitFail);
    CHECK(c.text.find("does NOT admit: dimension-gap (3 ≠ 1+1)") != std::string::npos);

    auto f = opts("flag", "rotation21");
    f.u = "0,1,0";
    f.v = "0,0,1";
    auto r = run_command(f);
    CHECK(r.exit_code == kExitOk);
    CHECK(std::abs(r.record["value"].get<double>() - 0.25) < 1e-12);
    CHECK(r.text.find("K = 0.25") != std::string::npos);

    f.space_path = testsupport::gallery("hyperbolic3");
    r = run_command(f);
    CHECK(r.exit_code == kExitInapplicable);
    CHECK(r.text.find("anchor condition residual 1.0") != std::string::npos);
    CHECK(r.record["condition"] == "anchor condition");
}

TEST_CASE("records carry the stable fields") {
    for (const char* cmd : {"validate", "classify", "go-check", "scan", "all"}) {
        auto o = opts(cmd, "hyperbolic3");
        o.samples = 50;
        const auto r = run_command(o);
        CAPTURE(cmd);
        for (const char* key : {"command", "space", "verdict", "value", "residuals", "tolerances", "seed"})
            CHECK(r.record.contains(key));
        CHECK(r.record["command"] == cmd);
    }
}

TEST_CASE("exit codes") {
    CHECK(run_command(opts("validate", "so3-sphere")).exit_code == kExitOk);
    CHECK(run_command(opts("classify", "hyperbolic3")).exit_code == kExitOk);
    auto go = opts("go-check", "hyperbolic3");
    go.samples = 20;
    CHECK(run_command(go).exit_code == kExitFail);
    go.space_path = testsupport::gallery("so3-sphere");
    CHECK(run_command(go).exit_code == kExitOk);

    auto missing = opts("validate", "no-such-space");
    CHECK(run_command(missing).exit_code == kExitInvalid);

    auto bad = opts("flag", "rotation21");
    bad.u = "0,1";
    bad.v = "0,0,1";
    CHECK(run_command(bad).exit_code == kExitInvalid);

    auto in_h = opts("flag", "so3-sphere");
    in_h.u = "1,0,1";
    in_h.v = "0,1,0";
    CHECK(run_command(in_h).exit_code == kExitInvalid);

    auto sect = opts("sectional", "so3-sphere");
    sect.x = "1,0,0";
    sect.y = "0,1,0";
    auto s = run_command(sect);
    CHECK(s.exit_code == kExitOk);
    CHECK(std::abs(s.record["value"].get<double>() - 1.0) < 1e-12);

    auto ric = opts("ricci", "hyperbolic5");
    ric.y = "0,1,0,0,0";
    ric.backend = "riemannian";
    auto rr = run_command(ric);
    CHECK(rr.exit_code == kExitOk);
    CHECK(std::abs(rr.record["value"].get<double>() + 4.0) < 1e-8);
    ric.backend = "go";
    CHECK(run_command(ric).exit_code == kExitInapplicable);

    auto scan = opts("scan", "heisenberg");
    scan.samples = 20;
    CHECK(run_command(scan).exit_code == kExitInapplicable);
    scan.space_path = testsupport::gallery("diagonal-positive");
    CHECK(run_command(scan).exit_code == kExitOk);
}

TEST_CASE("exit codes do not depend on formatting") {
    for (const char* space : {"heisenberg", "hyperbolic3", "rotation11"}) {
        auto o = opts("classify", space);
        const int plain = run_command(o).exit_code;
        o.json = true;
        o.color = true;
        CHECK(run_command(o).exit_code == plain);
    }
}

TEST_CASE("binary: exit codes and JSON output") {
    const std::string g = std::string(HFINSLER_GALLERY_DIR) + "/";
    auto r = run_binary("classify " + g + "heisenberg.json");
    CHECK(r.status == 1);
    CHECK(r.out.find("does NOT admit: dimension-gap (3 ≠ 1+1)") != std::string::npos);

    r = run_binary("flag " + g + "rotation21.json --u 0,1,0 --v 0,0,1");
    CHECK(r.status == 0);
    CHECK(r.out.find("K = 0.25") != std::string::npos);

    r = run_binary("flag " + g + "hyperbolic3.json --u 0,1,0 --v 0,0,1");
    CHECK(r.status == 2);
    CHECK(r.out.find("anchor condition residual 1.0") != std::string::npos);

    r = run_binary("--json flag " + g + "rotation21.json --u 0,1,0 --v 0,0,1");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "flag");
    CHECK(j["value"].get<double>() == doctest::Approx(0.25));

    CHECK(run_binary("frobnicate").status == 3);
    CHECK(run_binary("classify /no/such/file.json").status == 3);
    CHECK(run_binary("--tol abc classify " + g + "hyperbolic3.json").status == 3);
}
