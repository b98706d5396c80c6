// End-to-end tests driving the installed binary through a shell, checking
// report content against library oracles and the exit-code contract:
// 0 success, 2 verification failure, 1 usage error.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "qaw/askey_wilson.hpp"
#include "qaw/measure.hpp"
#include "qaw/qjacobi.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

using qaw::rational;
using ordered_json = nlohmann::ordered_json;

namespace {

struct cli_run {
    int exit_code = -1;
    std::string output;
};

cli_run invoke(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + "\"" QAW_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    cli_run r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

const std::string kEvalExample =
    "eval-aw --backend exact --n 1 --q 1/2 --a -1/2 --b -1/2 --c 1/2 --d 1/2 --x 1/3";

}  // namespace

TEST_CASE("cli eval-aw: exact value matches the library, reruns are byte-identical") {
    const cli_run r = invoke(kEvalExample);
    REQUIRE(r.exit_code == 0);
    const ordered_json doc = ordered_json::parse(r.output);
    CHECK(doc["command"] == "eval-aw");
    CHECK(doc["backend"] == "exact");

    const qaw::aw_params<rational> p{rational(-1, 2), rational(-1, 2), rational(1, 2), rational(1, 2),
                                     rational(1, 2)};
    CHECK(doc["value"].get<std::string>() == qaw::askey_wilson_rn_at(1, p, rational(1, 3)).str());

    const cli_run again = invoke(kEvalExample);
    CHECK(again.exit_code == 0);
    CHECK(again.output == r.output);

    // the float backend agrees numerically and emits a plain number
    const cli_run f =
        invoke("eval-aw --backend float --n 1 --q 0.5 --a -0.5 --b -0.5 --c 0.5 --d 0.5 --x 0.25");
    REQUIRE(f.exit_code == 0);
    const double fv = ordered_json::parse(f.output)["value"].get<double>();
    CHECK(fv == Catch::Approx(qaw::askey_wilson_rn_at(1, qaw::aw_params<double>{-0.5, -0.5, 0.5, 0.5, 0.5}, 0.25))
                    .epsilon(1e-14));
}

TEST_CASE("cli eval: q-Jacobi families and csv output") {
    const cli_run big =
        invoke("eval-bigq --backend exact --n 2 --q 1/2 --qalpha 1/2 --qbeta 1/4 --c 1 --d 1 --x 1/3");
    REQUIRE(big.exit_code == 0);
    const qaw::big_qjacobi_params<rational> bp{rational(1, 2), rational(1, 4), rational(1), rational(1),
                                               rational(1, 2)};
    CHECK(ordered_json::parse(big.output)["value"].get<std::string>() ==
          qaw::big_qjacobi(2, bp).eval(rational(1, 3)).str());

    const cli_run little =
        invoke("eval-littleq --backend exact --n 2 --q 1/2 --qalpha 1/2 --qbeta 1/4 --x 1/3");
    REQUIRE(little.exit_code == 0);
    const qaw::little_qjacobi_params<rational> lp{rational(1, 2), rational(1, 4), rational(1, 2)};
    CHECK(ordered_json::parse(little.output)["value"].get<std::string>() ==
          qaw::little_qjacobi(2, lp).eval(rational(1, 3)).str());

    const cli_run csv = invoke(kEvalExample + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("family,n,q,a,b,c,d,x,value\n", 0) == 0);
    CHECK(csv.output.find("aw,1,1/2,-1/2,-1/2,1/2,1/2,1/3,") != std::string::npos);
}

TEST_CASE("cli measure: serialized spec matches the construction oracle") {
    const std::string args = "measure --q 0.5 --a 1.2 --b 0.1 --c 0.1 --d 0.1";
    const cli_run r = invoke(args);
    REQUIRE(r.exit_code == 0);
    const ordered_json doc = ordered_json::parse(r.output);

    const qaw::measure_spec m = qaw::build_measure(qaw::aw_params<double>{1.2, 0.1, 0.1, 0.1, 0.5});
    REQUIRE(doc["atoms"].size() == m.atoms.size());
    REQUIRE(m.atoms.size() == 1);  // only a > 1 spawns a point mass here
    CHECK(doc["atoms"][0]["point"].get<double>() == Catch::Approx(m.atoms[0].point).epsilon(1e-15));
    CHECK(doc["atoms"][0]["mass"].get<double>() > 0.0);
    CHECK(doc["norm"].get<double>() == Catch::Approx(m.norm).epsilon(1e-15));
    CHECK(doc["params"]["a"].get<double>() == 1.2);

    CHECK(invoke(args).output == r.output);
}

TEST_CASE("cli campaigns: difference-equation and restriction reports are all green") {
    const cli_run qd = invoke("check-qdiff --trials 3 --seed 7 --nmax 3");
    REQUIRE(qd.exit_code == 0);
    const ordered_json qdoc = ordered_json::parse(qd.output);
    CHECK(qdoc["all_pass"] == true);
    CHECK(qdoc["cases"].size() == 3 * 4);

    const cli_run sph =
        invoke("check-spherical --n 2 --l 1,2 --lefts \"1,1;2,1\" --rights \"1,2\" --format csv");
    REQUIRE(sph.exit_code == 0);
    // header plus l-grid x left-grid x right-grid rows
    CHECK(std::count(sph.output.begin(), sph.output.end(), '\n') == 1 + 2 * 2 * 1);
    CHECK(sph.output.find("false") == std::string::npos);

    const cli_run orth = invoke("check-orth");
    REQUIRE(orth.exit_code == 0);
    CHECK(ordered_json::parse(orth.output)["pass"] == true);

    const cli_run lim = invoke("check-limit --family both --nmax 2");
    REQUIRE(lim.exit_code == 0);
    CHECK(ordered_json::parse(lim.output)["all_pass"] == true);
}

TEST_CASE("cli check-qhc: the documented invocation reports a vanishing residual") {
    const cli_run r = invoke("check-qhc --n 2 --l 1 --s 1 --t 1 --s2 1 --t2 1 --h 3,0");
    REQUIRE(r.exit_code == 0);
    const ordered_json doc = ordered_json::parse(r.output);
    CHECK(doc["residual_zero"] == true);
    CHECK(doc["case"]["residual"].get<std::string>() == "0");
    CHECK(invoke("check-qhc --n 2 --l 1 --s 1 --t 1 --s2 1 --t2 1 --h 3,0").output == r.output);
}

TEST_CASE("cli exit codes: 1 for usage problems, 2 for failed verification") {
    CHECK(invoke("frobnicate").exit_code == 1);
    CHECK(invoke(kEvalExample + " --bogus-flag").exit_code == 1);
    // the exact backend refuses decimal literals
    CHECK(invoke("eval-aw --backend exact --n 1 --q 0.5 --a 1 --b 1 --c 1 --d 1 --x 0").exit_code == 1);
    // missing required backend selection
    CHECK(invoke("eval-aw --n 1 --q 1/2 --a 1 --b 2 --c 3 --d 4 --x 0").exit_code == 1);
    // non-generic torus exponents are a domain error
    CHECK(invoke("check-qhc --n 2 --l 1 --h 1,0").exit_code == 1);
    // the dimension cap from the environment is enforced
    CHECK(invoke("check-spherical --n 2 --l 2", "QAW_MAX_DIM=8 ").exit_code == 1);
    CHECK(invoke("check-spherical --n 2 --l 2", "QAW_MAX_DIM=banana ").exit_code == 1);
    // an unreachable tolerance turns the report red and the exit code to 2
    CHECK(invoke("check-orth --tol 1e-30").exit_code == 2);
    // endpoint coideal families have no difference-operator image
    CHECK(invoke("check-spherical --n 2 --l 1 --s 1 --t 0").exit_code == 1);

    CHECK(invoke("--help").exit_code == 0);
    CHECK(invoke("check-qhc --help").exit_code == 0);
}

TEST_CASE("cli --out: file content equals the stdout report") {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "qaw_cli_out_test.json";
    const cli_run direct = invoke(kEvalExample);
    REQUIRE(direct.exit_code == 0);
    const cli_run filed = invoke(kEvalExample + " --out " + path.string());
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.output.empty());

    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == direct.output);
    in.close();
    std::filesystem::remove(path);
}
