#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef XSC_CLI_BIN
#error "XSC_CLI_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(XSC_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& text, bool data_only) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (data_only && (line.empty() || line[0] == '#' || line.rfind("tau,", 0) == 0))
            continue;
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("correlations subcommand", "[cli]") {
    SECTION("closed forms for a generic state") {
        const auto res = run_cli("correlations --c 0.28,0.22,0.40,0.10,0.60");
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(res.output, "QG=0.28\n"));
        REQUIRE(contains(res.output, "CG=0.34\n"));
        REQUIRE(contains(res.output, "TG=0.42\n"));
    }
    SECTION("maximally mixed state") {
        const auto res = run_cli("correlations --c 0,0,0,0,0");
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(res.output, "QG=0\n"));
        REQUIRE(contains(res.output, "CG=0\n"));
        REQUIRE(contains(res.output, "TG=0\n"));
    }
    SECTION("infeasible parameters report the violated constraints") {
        const auto res = run_cli("correlations --c 1,1,1,0,0");
        REQUIRE(res.exit_code == 2);
        REQUIRE(contains(res.output, "InvalidState"));
        REQUIRE(contains(res.output, "rho22*rho33 >= rho32^2: FAIL"));
    }
    SECTION("out-of-range coefficients are invalid") {
        const auto res = run_cli("correlations --c 1.5,0,0,0,0");
        REQUIRE(res.exit_code == 2);
        REQUIRE(contains(res.output, "InvalidState"));
    }
    SECTION("oracle verification lines") {
        const auto res = run_cli("correlations --c 0.5,0.2,0.1,0.1,0.2 --verify");
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(res.output, "QG_oracle="));
        REQUIRE(contains(res.output, "CG_oracle=0.5"));
        REQUIRE(contains(res.output, "TG_oracle=0.5"));
    }
    SECTION("verification refuses an unphysical state") {
        const auto res = run_cli("correlations --c 0.28,0.22,0.40,0.10,0.60 --verify");
        REQUIRE(res.exit_code == 2);
        REQUIRE(contains(res.output, "InvalidState"));
    }
    SECTION("malformed state string is a usage error") {
        const auto res = run_cli("correlations --c 0.1,0.2,zzz,0.4,0.5");
        REQUIRE(res.exit_code == 1);
    }
    SECTION("unknown flags are usage errors") {
        const auto res = run_cli("correlations --c 0,0,0,0,0 --bogus");
        REQUIRE(res.exit_code == 1);
    }
    SECTION("missing subcommand is a usage error") {
        const auto res = run_cli("");
        REQUIRE(res.exit_code == 1);
    }
}

TEST_CASE("evolve subcommand", "[cli]") {
    const std::string out = "/tmp/xsc_test_evolve.csv";
    SECTION("crossing footer for the amplitude-damping demo state") {
        const auto res = run_cli("evolve --c 0.28,0.22,0.40,0.10,0.60 --channel gad "
                                 "--tmax 2 --steps 100 --out " + out);
        REQUIRE(res.exit_code == 0);
        const std::string csv = slurp(out);
        REQUIRE(contains(csv, "tau,c1t,c2t,c3t,CG,QG,TG\n"));
        REQUIRE(contains(csv, "# transition tau_star=0.388312\n"));
        REQUIRE(count_lines(csv, true) == 101);
        REQUIRE(contains(csv, "# channel=gad\n"));
    }
    SECTION("emergence footer for the dephasing demo state, both conventions") {
        const auto kraus = run_cli("evolve --c 0.5,0.2,0.1,0.1,0.2 --channel pd "
                                   "--tmax 4 --steps 50 --out " + out);
        REQUIRE(kraus.exit_code == 0);
        REQUIRE(contains(slurp(out), "# emergence tau_E=1.832581\n"));
        const auto half = run_cli("evolve --c 0.5,0.2,0.1,0.1,0.2 --channel pd "
                                  "--convention halftime --tmax 4 --steps 50 --out " + out);
        REQUIRE(half.exit_code == 0);
        REQUIRE(contains(slurp(out), "# emergence tau_E=0.916291\n"));
    }
    SECTION("byte-identical output across repeated runs") {
        const std::string out2 = "/tmp/xsc_test_evolve2.csv";
        const std::string args = "evolve --c 0.28,0.22,0.40,0.10,0.60 --channel gad "
                                 "--tmax 3 --steps 123 --out ";
        REQUIRE(run_cli(args + out).exit_code == 0);
        REQUIRE(run_cli(args + out2).exit_code == 0);
        REQUIRE(slurp(out) == slurp(out2));
        REQUIRE(!slurp(out).empty());
    }
    SECTION("config file mirrors flags and flags override") {
        const std::string cfg = "/tmp/xsc_test_evolve.cfg";
        {
            std::ofstream f(cfg);
            f << "c=0.5,0.2,0.1,0.1,0.2\nchannel=pd\ntmax=4\nsteps=10\n";
        }
        const auto from_file = run_cli("evolve --config " + cfg + " --out " + out);
        REQUIRE(from_file.exit_code == 0);
        REQUIRE(contains(slurp(out), "# tmax=4\n"));
        REQUIRE(count_lines(slurp(out), true) == 11);
        const auto overridden =
            run_cli("evolve --config " + cfg + " --tmax 2 --out " + out);
        REQUIRE(overridden.exit_code == 0);
        REQUIRE(contains(slurp(out), "# tmax=2\n"));
    }
}

TEST_CASE("nonmarkov subcommand", "[cli]") {
    const std::string out = "/tmp/xsc_test_nm.csv";
    SECTION("symmetric rates reproduce the dephasing emergence time") {
        const auto res = run_cli("nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --eps 0.5 --eta 0.7 "
                                 "--v 0.001 --kappa 2 --tmax 4 --steps 40 --out " + out);
        REQUIRE(res.exit_code == 0);
        const std::string csv = slurp(out);
        REQUIRE(contains(csv, "tau,c1t,c2t,c3t,CG,QG,TG,P1,P2\n"));
        REQUIRE(contains(csv, "# emergence tau_E=1.832581\n"));
        REQUIRE(count_lines(csv, true) == 41);
    }
    SECTION("slow asymmetric bath with stationary preparation") {
        const auto res = run_cli("nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --eps 0.1 --eta 0.7 "
                                 "--v 0.001 --init stationary --tmax 9 --steps 20 --out " + out);
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(slurp(out), "# emergence tau_E=7.370372\n"));
    }
    SECTION("one-sided rates report no emergence") {
        const auto res = run_cli("nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --eps 0 --eta 0.7 "
                                 "--v 0.001 --tmax 4 --steps 20 --out " + out);
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(slurp(out), "# emergence tau_E=none\n"));
    }
    SECTION("weight columns sum to one") {
        const auto res = run_cli("nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --eps 0.3 --eta 0.2 "
                                 "--v 2 --init equal --tmax 3 --steps 30 --out " + out);
        REQUIRE(res.exit_code == 0);
        std::istringstream in(slurp(out));
        std::string line;
        int data_rows = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("tau,", 0) == 0) continue;
            const auto last_comma = line.rfind(',');
            const auto prev_comma = line.rfind(',', last_comma - 1);
            const double p2 = std::stod(line.substr(last_comma + 1));
            const double p1 = std::stod(line.substr(prev_comma + 1, last_comma - prev_comma - 1));
            REQUIRE(p1 + p2 == Catch::Approx(1.0).margin(1e-9));
            ++data_rows;
        }
        REQUIRE(data_rows == 31);
    }
    SECTION("byte-identical output across repeated runs") {
        const std::string out2 = "/tmp/xsc_test_nm2.csv";
        const std::string args = "nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --eps 0.92 --eta 0.1 "
                                 "--v 0.01 --tmax 12 --steps 77 --out ";
        REQUIRE(run_cli(args + out).exit_code == 0);
        REQUIRE(run_cli(args + out2).exit_code == 0);
        REQUIRE(slurp(out) == slurp(out2));
    }
    SECTION("oversized integrator step is a usage error") {
        const auto res = run_cli("nonmarkov --c 0.5,0.2,0.1,0.1,0.2 --v 10 --dt 0.005 "
                                 "--tmax 1 --steps 10 --out " + out);
        REQUIRE(res.exit_code == 1);
    }
}

TEST_CASE("verify subcommand", "[cli]") {
    SECTION("small seeded run passes and is reproducible") {
        const auto a = run_cli("verify --samples 25 --seed 7");
        REQUIRE(a.exit_code == 0);
        REQUIRE(contains(a.output, "PASS"));
        const auto b = run_cli("verify --samples 25 --seed 7");
        REQUIRE(a.output == b.output);
    }
    SECTION("single-state run") {
        const auto res = run_cli("verify --samples 1 --seed 3");
        REQUIRE(res.exit_code == 0);
        REQUIRE(contains(res.output, "samples=1"));
    }
}
