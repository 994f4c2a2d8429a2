#include "sharpgrad/cli.hpp"
#include "sharpgrad/geometry.hpp"

#include <doctest.h>

#include <sstream>

using namespace sharpgrad;
using nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("constants")
{
    const auto r = run({"constants", "--n", "3", "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = ordered_json::parse(r.out);
    CHECK(j["constants"]["omega_star"].get<double>() == 0.75);
    CHECK(j["constants"]["liu_constant"].get<double>() == 1.5);
    CHECK(j["config"]["command"] == "constants");
    CHECK_FALSE(j["config"].contains("timestamp"));
    CHECK(ordered_json::parse(run({"constants", "--n", "3"}).out)["config"].contains("timestamp"));
}

TEST_CASE("seventeen significant digits")
{
    CHECK(cli::dump_json(ordered_json(0.1)) == "0.10000000000000001");
    CHECK(cli::dump_json(ordered_json::array({1.0 / 3.0}), -1) == "[0.33333333333333331]");
    CHECK(cli::dump_json(ordered_json(std::nan(""))) == "null");
    const auto r = run({"constants", "--n", "4", "--no-timestamp"});
    const std::string key = "\"omega_star\": ";
    const auto at = r.out.find(key);
    REQUIRE(at != std::string::npos);
    const std::string token = r.out.substr(at + key.size(), r.out.find(',', at) - at - key.size());
    CHECK(token.size() == 19); // "0." and 17 digits
    CHECK(std::stod(token) == geometry::omega_star(4));
}

TEST_CASE("cap-angle")
{
    const auto r = run({"cap-angle", "--n", "2", "--a", "0.5", "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = ordered_json::parse(r.out);
    CHECK(j["cap_angle"]["gamma"].get<double>() == doctest::Approx(0.75 * 3.141592653589793).epsilon(1e-15));
    CHECK(j["cap_angle"]["inequalities"]["mode"] == "reversed");
}

TEST_CASE("extremal-eval")
{
    const auto r = run({"extremal-eval", "--n", "3", "--gamma", "1.5707963267948966", "--point", "0,0,0.5",
                        "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = ordered_json::parse(r.out)["extremal"];
    CHECK(j["gradient"].size() == 3);
    CHECK(j["radial_derivative"].get<double>() == doctest::Approx(j["gradient"][2].get<double>()));
    CHECK(run({"extremal-eval", "--n", "3", "--gamma", "1", "--point", "0,0"}).code == 2);
}

TEST_CASE("khavinson-phi emits CSV")
{
    const auto r = run({"khavinson-phi", "--n", "3", "--grid", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("r,phi,bound\n0,1,1.5\n") != std::string::npos);
}

TEST_CASE("verify counterexample exits 0 when the violation is found")
{
    const auto r = run({"verify", "--theorem", "counterexample", "--n", "4", "--no-timestamp"});
    CHECK(r.code == 0);
    const auto j = ordered_json::parse(r.out);
    CHECK(j["certificate"]["violation_ratio"].get<double>() > 1.0);
    CHECK(j["report"]["passed"].get<bool>());
    CHECK(j["report"]["runtime_ms"].get<int>() == 0);
}

TEST_CASE("verify output is byte-stable")
{
    const std::vector<std::string> args{"verify", "--theorem", "inq1", "--n", "5", "--grid", "101", "--no-timestamp"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto csv = run({"verify", "--theorem", "inq1", "--n", "5", "--grid", "11", "--csv"});
    CHECK(csv.out.find("theorem_id,n,type,label,lhs,rhs,margin,passed\n") != std::string::npos);
}

TEST_CASE("mobius")
{
    const auto r = run({"mobius", "--x", "0.5,0", "--y", "0,0", "--no-timestamp"});
    REQUIRE(r.code == 0);
    const auto j = ordered_json::parse(r.out)["mobius"];
    CHECK(j["phi_x_y"][0].get<double>() == doctest::Approx(0.5));
    CHECK(j["hyperbolic_distance"].get<double>() == doctest::Approx(std::log(3.0)));
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"constants"}).code == 2);
    CHECK(run({"constants", "--n", "x"}).code == 2);
    CHECK(run({"verify", "--theorem", "counterexample", "--n", "3"}).code == 2);
    CHECK(run({"cap-angle", "--n", "3", "--a", "2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

}
