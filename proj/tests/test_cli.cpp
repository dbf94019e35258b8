#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "hml/cli.hpp"
#include "oracles.hpp"

using hml::run_cli;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

double value_after(const std::string& text, const std::string& key) {
    const auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size()));
}

// Scoped environment override with restoration.
class EnvGuard {
  public:
    EnvGuard(const char* name, const char* value) : name_(name) {
        const char* old = std::getenv(name);
        if (old) saved_ = old;
        had_ = old != nullptr;
        if (value)
            ::setenv(name, value, 1);
        else
            ::unsetenv(name);
    }
    ~EnvGuard() {
        if (had_)
            ::setenv(name_.c_str(), saved_.c_str(), 1);
        else
            ::unsetenv(name_.c_str());
    }

  private:
    std::string name_;
    std::string saved_;
    bool had_ = false;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval alexp at the classical point") {
    const CliResult r = cli({"eval", "alexp", "--alpha", "0", "--x", "1"});
    CHECK(r.code == 0);
    CHECK(value_after(r.out, "value=") ==
          doctest::Approx(oracle::kE).epsilon(1e-14));
    CHECK(r.err.empty());
}

TEST_CASE("eval alexp handles comma lists and csv format") {
    const CliResult r = cli({"eval", "alexp", "--alpha", "1", "--x",
                             "0,1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,value,abs_err_est,terms,status\n", 0) == 0);
    CHECK(r.out.find("\n0,1,") != std::string::npos);
    CHECK(r.out.find("converged") != std::string::npos);
}

TEST_CASE("json reports carry the stable schema") {
    const CliResult r = cli({"eval", "ml", "--alpha", "0.5", "--nu", "1",
                             "--gamma", "1", "--x", "2", "--format", "json"});
    CHECK(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.contains("command"));
    CHECK(j.contains("inputs"));
    CHECK(j.contains("results"));
    CHECK(j.contains("pass"));
    CHECK(j.contains("version"));
    CHECK(j.contains("seconds"));
    CHECK(j["command"] == "eval ml");
    CHECK(j["pass"] == true);
    const double v = j["results"][0]["value"].get<double>();
    const double truth =
        static_cast<double>(oracle::naive_ml(0.5L, 1.0L, 1.0L, 2.0L));
    CHECK(v == doctest::Approx(truth).epsilon(1e-12));
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({"eval", "alexp", "--alpha", "0"}).code == 2);  // missing --x
    CHECK(cli({"eval", "alexp", "--alpha", "zzz", "--x", "1"}).code == 2);
    CHECK(cli({"eval", "fn", "--spec", "alexp:-1.5,1", "--x", "1"}).code == 2);
    const CliResult r = cli({"eval", "alexp"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("domain violations exit 2") {
    CHECK(cli({"eval", "ml", "--alpha", "0.5", "--nu", "1", "--gamma", "-1",
               "--x", "1"})
              .code == 2);
    CHECK(cli({"hadamard", "integral", "--fn", "sin", "--alpha", "0",
               "--x", "1"})
              .code == 2);
}

TEST_CASE("non-convergence exits 3") {
    const CliResult r = cli({"eval", "alexp", "--alpha", "0", "--x", "30",
                             "--max-terms", "5"});
    CHECK(r.code == 3);
    CHECK(r.out.find("max-terms") != std::string::npos);
}

TEST_CASE("help and version exit 0") {
    const CliResult help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify-all") != std::string::npos);
    const CliResult ver = cli({"--version"});
    CHECK(ver.code == 0);
    CHECK(ver.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("series cap environment variable is honoured and validated") {
    {
        EnvGuard guard("HADAMARD_ML_MAX_TERMS", "7");
        const CliResult r = cli({"eval", "alexp", "--alpha", "0", "--x",
                                 "30", "--format", "json"});
        CHECK(r.code == 3);  // 7 terms cannot converge exp(30)
        const nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j["inputs"]["max_terms"] == 7);
    }
    {
        EnvGuard guard("HADAMARD_ML_MAX_TERMS", "not-a-number");
        CHECK(cli({"eval", "alexp", "--alpha", "0", "--x", "1"}).code == 2);
    }
    {
        EnvGuard guard("HADAMARD_ML_MAX_TERMS", nullptr);
        CHECK(cli({"eval", "alexp", "--alpha", "0", "--x", "1"}).code == 0);
    }
}

TEST_CASE("hadamard integral against the log-power closed form") {
    const CliResult r = cli({"hadamard", "integral", "--fn", "logpow:1",
                             "--alpha", "0.5", "--a", "1", "--x",
                             "2.718281828459045"});
    CHECK(r.code == 0);
    CHECK(value_after(r.out, "value=") ==
          doctest::Approx(oracle::kInvGamma25).epsilon(1e-8));
}

TEST_CASE("frakd applies the power rule") {
    const CliResult r = cli({"frakd", "--fn", "power:2", "--alpha", "0.5",
                             "--x", "1.5"});
    CHECK(r.code == 0);
    CHECK(value_after(r.out, "value=") ==
          doctest::Approx(std::pow(2.0, 1.5) * 1.5).epsilon(1e-6));
}

TEST_CASE("laplace-check passes at defaults and fails at absurd tolerance") {
    const CliResult ok = cli({"laplace-check", "--alpha", "0.5", "--nu",
                              "0.5", "--gamma", "2", "--lambda", "0.3",
                              "--s", "1.5", "--tol", "1e-6"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);

    const CliResult alexp = cli({"laplace-check", "--kind", "alexp",
                                 "--alpha", "1.5", "--s", "2"});
    CHECK(alexp.code == 0);

    const CliResult bad = cli({"laplace-check", "--alpha", "0.5", "--nu",
                               "0.5", "--gamma", "2", "--lambda", "0.3",
                               "--s", "1.5", "--tol", "1e-30"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("eigen-check validates a claimed eigenpair") {
    const CliResult ok = cli({"eigen-check", "--op", "frakd", "--alpha",
                              "0.5", "--fn", "alexp:0.5,0.7", "--lambda",
                              "0.7", "--grid", "1"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);

    const CliResult bad = cli({"eigen-check", "--op", "frakd", "--alpha",
                               "0.5", "--fn", "alexp:0.5,0.7", "--lambda",
                               "0.9", "--grid", "1"});
    CHECK(bad.code == 1);
}

TEST_CASE("solve-ivp reproduces the classical heat factor") {
    const CliResult r = cli({"solve-ivp", "--alpha", "0", "--theta-op", "d2",
                             "--basis", "trigpair", "--g-coeffs", "1,0",
                             "--t", "0.5", "--x", "1"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::string row;
    REQUIRE(std::getline(in, header));
    CHECK(header == "x,t,value,tail_est");
    REQUIRE(std::getline(in, row));
    // row is x,t,value,tail
    const auto first = row.find(',');
    const auto second = row.find(',', first + 1);
    const double v = std::stod(row.substr(second + 1));
    CHECK(v == doctest::Approx(std::exp(-0.5) * std::sin(1.0)).epsilon(1e-10));
}

TEST_CASE("solve-ivp requires exactly one operator source") {
    CHECK(cli({"solve-ivp", "--alpha", "0", "--g-coeffs", "1,0", "--t", "1",
               "--x", "1"})
              .code == 2);
    CHECK(cli({"solve-ivp", "--alpha", "0", "--theta-op", "d2",
               "--theta-file", "somewhere", "--g-coeffs", "1,0", "--t", "1",
               "--x", "1"})
              .code == 2);
}

TEST_CASE("solve-bvp boundary row reproduces the datum") {
    const CliResult r = cli({"solve-bvp", "--alpha", "0.4", "--xi-op", "d1",
                             "--basis", "monomial", "--h-coeffs", "1,2",
                             "--x", "0", "--t", "3"});
    CHECK(r.code == 0);
    // h(t) = 1 + 2t at t = 3 -> 7, at x = 0 the series is the bare datum
    CHECK(r.out.find("0,3,7,") != std::string::npos);
}

TEST_CASE("operator files feed the solver") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path op_path = dir / "hml_cli_test_op.txt";
    const fs::path vec_path = dir / "hml_cli_test_vec.txt";
    {
        std::ofstream op(op_path);
        op << "2 trigpair\n0 0\n0 0\n";
        std::ofstream vec(vec_path);
        vec << "2 trigpair\n1 0\n";
    }
    // Theta = 0 freezes the datum: f(x,t) = sin(x) for all t
    const CliResult r = cli({"solve-ivp", "--alpha", "0.3", "--theta-file",
                             op_path.string(), "--g-file", vec_path.string(),
                             "--t", "2", "--x", "1"});
    fs::remove(op_path);
    fs::remove(vec_path);
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::string row;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    const auto second = row.find(',', row.find(',') + 1);
    CHECK(std::stod(row.substr(second + 1)) ==
          doctest::Approx(std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("laguerre-heat emits exact rows with zero tail") {
    const CliResult r = cli({"laguerre-heat", "--s-coeffs", "0,0,1", "--x",
                             "0.8", "--t", "1.7"});
    CHECK(r.code == 0);
    const double want = 1.7 * 1.7 + 2 * 0.8 * 1.7 + 0.5 * 0.8 * 0.8;
    std::istringstream in(r.out);
    std::string header;
    std::string row;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    const auto second = row.find(',', row.find(',') + 1);
    CHECK(std::stod(row.substr(second + 1)) ==
          doctest::Approx(want).epsilon(1e-14));
    CHECK(row.substr(row.rfind(',')) == ",0");
}

TEST_CASE("lamb subcommands") {
    const CliResult beta = cli({"lamb", "beta", "--mu", "0.5"});
    CHECK(beta.code == 0);
    CHECK(value_after(beta.out, "beta=") ==
          doctest::Approx(oracle::kPiOver4).epsilon(1e-15));

    const CliResult verify = cli({"lamb", "verify", "--mu", "0.5", "--x",
                                  "0.5,1,2", "--tol", "1e-7"});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("PASS") != std::string::npos);

    const CliResult lhs = cli({"lamb", "lhs", "--fn", "power:1", "--mu", "1",
                               "--x", "2.5"});
    CHECK(lhs.code == 0);
    CHECK(value_after(lhs.out, "integral=") ==
          doctest::Approx(2.5).epsilon(1e-9));

    const CliResult solve = cli({"lamb", "solve", "--f", "power:2", "--mu",
                                 "0.5", "--x", "1"});
    CHECK(solve.code == 0);
    CHECK(value_after(solve.out, "u=") ==
          doctest::Approx(oracle::kSqrt2 / oracle::kGamma15).epsilon(1e-12));

    CHECK(cli({"lamb", "solve", "--f", "sin", "--mu", "0.5", "--x", "1"})
              .code == 2);
}

TEST_CASE("figure output is deterministic and respects --out") {
    const CliResult a = cli({"figure", "fig1", "--x-max", "2", "--points",
                             "9"});
    const CliResult b = cli({"figure", "fig1", "--x-max", "2", "--points",
                             "9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("x,alpha,value\n", 0) == 0);

    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "hml_cli_fig.csv";
    const CliResult c = cli({"figure", "fig2", "--x-max", "1", "--points",
                             "3", "--out", path.string()});
    CHECK(c.code == 0);
    CHECK(c.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    in.close();
    fs::remove(path);
    CHECK(content.str().rfind("x,alpha,value\n", 0) == 0);

    CHECK(cli({"figure", "fig9"}).code == 2);
    // unwritable output path maps to the IO failure exit code
    CHECK(cli({"figure", "fig1", "--out", "/nonexistent-dir/fig.csv"}).code ==
          1);
}

TEST_CASE("verify-all single criteria run and range-check") {
    const CliResult two = cli({"verify-all", "--criterion", "2"});
    CHECK(two.code == 0);
    CHECK(two.out.find("PASS criterion 2") != std::string::npos);
    CHECK(cli({"verify-all", "--criterion", "11"}).code == 2);
}

}  // TEST_SUITE
