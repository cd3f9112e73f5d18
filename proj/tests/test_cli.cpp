#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QWALK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 512> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const char* dir = std::getenv("TMPDIR");
    const std::string path = std::string(dir ? dir : "/tmp") + "/qwalk_cli_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kP2 = R"({"n": 2, "potentials": [0, 0], "edges": [[0, 1]],
                      "involution": [1, 0], "well": 0})";
const char* kP3 = R"({"n": 3, "potentials": [0, 0, 0], "edges": [[0, 1], [1, 2]],
                      "involution": [2, 1, 0], "well": 0})";
const char* kBrokenInvolution =
    R"({"n": 3, "potentials": [0, 0, 0], "edges": [[0, 1], [1, 2]],
        "involution": [1, 0, 2]})";

} // namespace

TEST_CASE("cli validate") {
    SUBCASE("valid file") {
        const auto path = write_temp("ok.json", kP3);
        const auto r = run_cli("validate " + path);
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.output)["ok"] == true);
    }
    SUBCASE("broken involution exits 2 with violations") {
        const auto path = write_temp("broken.json", kBrokenInvolution);
        const auto r = run_cli("validate " + path);
        CHECK(r.exit_code == 2);
        const auto j = json::parse(r.output);
        CHECK(j["ok"] == false);
        CHECK_FALSE(j["violations"].empty());
    }
    SUBCASE("malformed JSON exits 1") {
        const auto path = write_temp("bad.json", "{ not json");
        CHECK(run_cli("validate " + path).exit_code == 1);
    }
    SUBCASE("missing file exits 1") {
        CHECK(run_cli("validate /nonexistent/qwalk.json").exit_code == 1);
    }
}

TEST_CASE("cli transfer") {
    const auto path = write_temp("p2.json", kP2);
    SUBCASE("optimal time on P2") {
        const auto r = run_cli("transfer " + path + " --q 4 --optimal");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(std::abs(j["t"].get<double>() - 1.5707963267948966) < 1e-9);
        CHECK(std::abs(j["p"].get<double>() - 1.0) < 1e-9);
    }
    SUBCASE("P3 optimal lands on the frozen transfer value") {
        const auto p3 = write_temp("p3t.json", kP3);
        const auto r = run_cli("transfer " + p3 + " --q 4 --optimal");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(std::abs(j["t"].get<double>() - 6.989242144075382) < 1e-6);
        CHECK(std::abs(j["p"].get<double>() - 0.8292867510624778) < 1e-6);
    }
    SUBCASE("oracle cross-check flag") {
        const auto r = run_cli("transfer " + path + " --q 4 --t 0.7 --oracle");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(std::abs(j["p"].get<double>() - j["p_oracle"].get<double>()) < 1e-8);
    }
    SUBCASE("negative time is a usage error") {
        CHECK(run_cli("transfer " + path + " --q 4 --t -1").exit_code == 64);
    }
    SUBCASE("missing well pair is a usage error") {
        const auto bare = write_temp("bare.json",
                                     R"({"n": 2, "potentials": [0,0], "edges": [[0,1]]})");
        CHECK(run_cli("transfer " + bare + " --q 4 --optimal").exit_code == 64);
    }
}

TEST_CASE("cli bounds") {
    const auto path = write_temp("p3b.json", kP3);
    SUBCASE("q = 100 certifies") {
        const auto r = run_cli("bounds " + path + " --q 100");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(j["all_hold"] == true);
        CHECK(j["fidelity"]["applicable"] == true);
    }
    SUBCASE("q = 3 marks the phi chain not applicable") {
        const auto r = run_cli("bounds " + path + " --q 3");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(j["phi1"]["applicable"] == false);
        CHECK(j["fidelity"]["applicable"] == false);
    }
    SUBCASE("P2 at q = 4 flags the gap equality") {
        const auto p2 = write_temp("p2b.json", kP2);
        const auto r = run_cli("bounds " + p2 + " --q 4");
        REQUIRE(r.exit_code == 0);
        CHECK(json::parse(r.output)["gap_at_equality"] == true);
    }
}

TEST_CASE("cli min-q") {
    SUBCASE("explicit degree") {
        const auto r = run_cli("min-q --m 2 --epsilon 0.5");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.output);
        CHECK(std::abs(j["q_formula"].get<double>() - 1122.058007951268) < 1e-6);
        CHECK(j["q_sufficient_256"].get<double>() == 3072.0);
    }
    SUBCASE("degree read from a graph file") {
        const auto path = write_temp("p3m.json", kP3);
        const auto r = run_cli("min-q " + path + " --epsilon 0.5");
        REQUIRE(r.exit_code == 0);
        CHECK(std::abs(json::parse(r.output)["q_formula"].get<double>() -
                       1122.058007951268) < 1e-6);
    }
    SUBCASE("epsilon out of range is a usage error") {
        CHECK(run_cli("min-q --m 2 --epsilon 1.5").exit_code == 64);
    }
}

TEST_CASE("cli sweep") {
    const auto path = write_temp("p3s.json", kP3);
    SUBCASE("rows are ordered and the transfer probability trends upward") {
        const auto r = run_cli("sweep " + path + " --q-min 10 --q-max 100 --steps 10");
        REQUIRE(r.exit_code == 0);
        std::istringstream lines(r.output);
        std::string header;
        std::getline(lines, header);
        CHECK(header ==
              "q,lambda1,lambda2,gap,gap_lower,p_at_tstar,fidelity_lower,tstar");
        double first_p = -1.0, last_p = -1.0, last_q = 0.0;
        int rows = 0;
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty()) continue;
            ++rows;
            std::istringstream fields(line);
            std::string cell;
            std::getline(fields, cell, ',');
            const double q = std::stod(cell);
            CHECK(q > last_q);
            last_q = q;
            for (int skip = 0; skip < 4; ++skip) std::getline(fields, cell, ',');
            std::getline(fields, cell, ',');
            const double p = std::stod(cell);
            if (first_p < 0) first_p = p;
            last_p = p;
        }
        CHECK(rows == 10);
        CHECK(last_p > first_p);
        CHECK(last_p > 0.99);
    }
    SUBCASE("inverted range is a usage error") {
        CHECK(run_cli("sweep " + path + " --q-min 100 --q-max 10 --steps 5").exit_code ==
              64);
    }
    SUBCASE("parallel sweep matches the serial rows") {
        const auto serial = run_cli("sweep " + path + " --q-min 5 --q-max 50 --steps 8");
        const std::string cmd = "QWALK_THREADS=4 " + std::string(QWALK_CLI_PATH) +
                                " sweep " + path + " --q-min 5 --q-max 50 --steps 8";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string parallel;
        std::array<char, 512> buffer;
        while (fgets(buffer.data(), buffer.size(), pipe)) parallel += buffer.data();
        pclose(pipe);
        CHECK(parallel == serial.output);
    }
}

TEST_CASE("cli find-involution") {
    const auto path = write_temp("p3f.json", kP3);
    const auto r = run_cli("find-involution " + path);
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    REQUIRE(j.size() == 2);
    bool has_identity = false, has_mirror = false;
    for (const auto& item : j) {
        if (item["identity"] == true) has_identity = true;
        if (item["map"] == std::vector<int>{2, 1, 0}) has_mirror = true;
    }
    CHECK(has_identity);
    CHECK(has_mirror);
}

TEST_CASE("cli spectrum") {
    const auto path = write_temp("p3sp.json", kP3);
    const auto r = run_cli("spectrum " + path + " --q 4 --matrices");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.output);
    REQUIRE(j.contains("eigenvalues"));
    CHECK(std::abs(j["eigenvalues"][0].get<double>() - 4.449489742783178) < 1e-9);
    CHECK(j["sectors"][0] == "plus");
    CHECK(j["sectors"][1] == "minus");
    CHECK(j.contains("h_plus_sym"));
    CHECK(j["h_minus"][0][0].get<double>() == 4.0);
}

TEST_CASE("cli usage") {
    CHECK(run_cli("").exit_code == 64);
    CHECK(run_cli("no-such-command").exit_code == 64);
    CHECK(run_cli("--help").exit_code == 0);
}
