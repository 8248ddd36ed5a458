#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "curvlab/classify.hpp"
#include "curvlab/json_io.hpp"

using namespace curvlab;
using io::json;

TEST_CASE("string rational parsing") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-2") == Rat(-2));
    CHECK(Rat::parse("0.5") == Rat(1, 2));
    CHECK(Rat::parse("-1.25") == Rat(-5, 4));
    CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("abc"), std::invalid_argument);
}

TEST_CASE("tensor json round trip") {
    auto r = curvature::build_R_a(2, 2, 1);
    json j = io::to_json(r);
    auto back = io::tensor4_from_json(j);
    CHECK(back.sig == r.sig);
    CHECK(back.c == r.c);
    CHECK_THROWS_AS(io::tensor4_from_json(json{{"p", 1}, {"q", 1}, {"components", {"1"}}}),
                    std::invalid_argument);
}

TEST_CASE("linear map json round trip") {
    Signature sig(1, 1);
    MatQ m(2, 2);
    m(0, 1) = Rat(1, 3);
    m(1, 0) = Rat(-2);
    json j = io::to_json(m, sig);
    Signature sig2(0, 1);
    MatQ back = io::linear_map_from_json(j, sig2);
    CHECK(sig2 == sig);
    CHECK(back == m);
}

TEST_CASE("tensor file kinds") {
    io::TensorFile tf;
    tf.R = curvature::build_constant_curvature(Rat(1), Signature(0, 3));
    json j = io::tensor_file_to_json(tf);
    CHECK(j["kind"] == "curvature");
    auto back = io::tensor_file_from_json(j);
    CHECK(back.R.has_value());
    CHECK(!back.D.has_value());

    io::TensorFile bundle;
    bundle.R = tf.R;
    bundle.D = curvature::Tensor5Q(Signature(0, 3));
    json jb = io::tensor_file_to_json(bundle);
    CHECK(jb["kind"] == "bundle");
    auto back2 = io::tensor_file_from_json(jb);
    CHECK(back2.R.has_value());
    CHECK(back2.D.has_value());
}

namespace {

int run_cli(const std::string& args, std::string* out = nullptr) {
    const char* cli = std::getenv("CURVLAB_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " > /tmp/curvlab_test_out.txt 2>/dev/null";
    int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in("/tmp/curvlab_test_out.txt");
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli pipeline: build, check, exit codes") {
    CHECK(run_cli("build --ra p=2 q=2 a=1 --out /tmp/clitest_ra.json") == 0);
    // Nilpotent family: holds -> exit 0.
    CHECK(run_cli("check /tmp/clitest_ra.json --property timelike-osserman --samples 100 "
                  "--seed 7") == 0);
    // Jordan type that fails -> exit 3.
    CHECK(run_cli("check /tmp/clitest_ra.json --property jordan-osserman-type:1,1 --samples 200 "
                  "--seed 7") == 3);
    // Malformed JSON -> exit 1.
    std::ofstream("/tmp/clitest_bad.json") << "{ not json";
    CHECK(run_cli("check /tmp/clitest_bad.json --property timelike-osserman") == 1);
    // Property/signature mismatch -> exit 1.
    CHECK(run_cli("build --const kappa=1 p=0 q=3 --out /tmp/clitest_round.json") == 0);
    CHECK(run_cli("check /tmp/clitest_round.json --property timelike-osserman") == 1);
    // Unknown property -> exit 1.
    CHECK(run_cli("check /tmp/clitest_ra.json --property bogus") == 1);
}

TEST_CASE("cli metric build emits R and nabla R at the point") {
    CHECK(run_cli("build --metric-fab f=\"x1^2+x2^2\" a=0 b=1 --at 0,0,0,0,0 --out "
                  "/tmp/clitest_fab.json") == 0);
    std::ifstream in("/tmp/clitest_fab.json");
    json j = json::parse(in);
    CHECK(j["kind"] == "bundle");
    auto tf = io::tensor_file_from_json(j);
    REQUIRE(tf.R.has_value());
    REQUIRE(tf.D.has_value());
    CHECK(curvature::validate_acst(*tf.R).empty());
    CHECK(curvature::validate_acdt(*tf.D).empty());
    // Szabo checks read the rank-5 part.
    CHECK(run_cli("check /tmp/clitest_fab.json --property spacelike-szabo --samples 60 "
                  "--seed 3") == 0);
    // rphi build with the diag syntax.
    CHECK(run_cli("build --rphi phi=diag:1,1,1 p=0 q=3 --out /tmp/clitest_rphi.json") == 0);
    CHECK(run_cli("check /tmp/clitest_rphi.json --property spacelike-osserman --samples 60 "
                  "--seed 3") == 0);
}

TEST_CASE("cli float mode and csv format") {
    CHECK(run_cli("build --const kappa=1 p=0 q=4 --out /tmp/clitest_r4.json") == 0);
    CHECK(run_cli("check /tmp/clitest_r4.json --property spacelike-osserman --samples 40 "
                  "--seed 5 --scalar float --tolerance 1e-8") == 0);
    std::string out;
    CHECK(run_cli("check /tmp/clitest_r4.json --property spacelike-osserman --samples 20 "
                  "--seed 5 --format csv",
                  &out) == 0);
    CHECK(out.find("property,verdict,samples,seed") == 0);
}

TEST_CASE("cli reports are byte-identical under the same manifest") {
    CHECK(run_cli("check /tmp/clitest_ra.json --property osserman-type:1,1 --samples 50 --seed 9 "
                  "--out /tmp/clitest_rep1.json") == 0);
    CHECK(run_cli("check /tmp/clitest_ra.json --property osserman-type:1,1 --samples 50 --seed 9 "
                  "--out /tmp/clitest_rep1.json") == 0);
    std::ifstream a("/tmp/clitest_rep1.json");
    std::stringstream sa;
    sa << a.rdbuf();
    CHECK(run_cli("check /tmp/clitest_ra.json --property osserman-type:1,1 --samples 50 --seed 9 "
                  "--out /tmp/clitest_rep1.json") == 0);
    std::ifstream b("/tmp/clitest_rep1.json");
    std::stringstream sb;
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}

TEST_CASE("env seed fallback changes the manifest seed") {
    std::string out;
    const char* cli = std::getenv("CURVLAB_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string("CURVLAB_SEED=123 ") + cli +
                      " check /tmp/clitest_ra.json --property osserman-type:1,1 --samples 20 "
                      "> /tmp/curvlab_test_out.txt 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream in("/tmp/curvlab_test_out.txt");
    json j = json::parse(in);
    CHECK(j["seed"] == 123);
    CHECK(j["manifest"]["seed"] == 123);
}
