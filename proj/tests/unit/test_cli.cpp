#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clin_cli/commands.hpp"
#include "clin_cli/problem_file.hpp"

using namespace clin::cli;

namespace {

std::string problem(const std::string& name) { return std::string(CLIN_PROBLEMS_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

template <class F>
Run capture(F f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

Run check(const std::string& file, bool json = false) {
  GlobalOptions g;
  g.json = json;
  return capture([&](std::ostream& o, std::ostream& e) { return run_check(problem(file), g, o, e); });
}

const char* const kSystemText = R"(
[problem]
kind = system
[coefficients]
a1 = 0
a2 = 0
b1 = 0
b2 = 0
c1 = x*y
c2 = x*z
)";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check exit codes") {
    for (const char* f : {"example1.ini", "example2.ini", "example3_f1_g1.ini", "example3_fx_gx.ini",
                          "free_particle.ini", "scalar_example1.ini", "example1_complex.ini"}) {
      CAPTURE(f);
      CHECK(check(f).code == kExitOk);
    }
    for (const char* f : {"example3_f1_g2.ini", "scalar_u2.ini", "example2_printed.ini"}) {
      CAPTURE(f);
      CHECK(check(f).code == kExitNegative);
    }
    const Run neg = check("example3_f1_g2.ini");
    CHECK(neg.out.find("c1_y - c2_z") != std::string::npos);
    CHECK(neg.out.find("witness") != std::string::npos);
  }

  TEST_CASE("check reports ten identities for Example 1") {
    const Run r = check("example1.ini", true);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["identities"].size() == 10);
    CHECK(j["verdict"] == "Linearizable");
    CHECK(j["provenance"]["seed"] == 42);
    CHECK(j["provenance"]["samples"] == 200);
  }

  TEST_CASE("indeterminate exit code") {
    // sin^2 + cos^2 defeats simplify, and every sample lands on the excluded
    // band, so nothing can be evaluated.
    const std::string path = (std::filesystem::temp_directory_path() / "clin_indeterminate.ini").string();
    std::string text = kSystemText;
    text.replace(text.find("c1 = x*y"), 8, "c1 = x*y*(sin(y)^2 + cos(y)^2)");
    std::ofstream(path) << text << "[domain]\nx = 1..2\ny = 0.5..1.5\nz = 0.5..1.5\nexclude = x - 5 > 10\n";
    GlobalOptions g;
    const Run r = capture([&](std::ostream& o, std::ostream& e) { return run_check(path, g, o, e); });
    CHECK(r.code == kExitIndeterminate);
    std::filesystem::remove(path);
  }

  TEST_CASE("input errors") {
    GlobalOptions g;
    const Run missing =
        capture([&](std::ostream& o, std::ostream& e) { return run_check(problem("no_such_file.ini"), g, o, e); });
    CHECK(missing.code == kExitInputError);
    CHECK(!missing.err.empty());

    CHECK_THROWS_AS(parse_problem("[problem]\nkind = banana\n", "t.ini"), ProblemError);
    try {
      parse_problem("[problem]\nkind = system\n[coefficients]\na1 = (x + \n", "t.ini");
      FAIL("expected ProblemError");
    } catch (const ProblemError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem("[problem]\nkind = system\n[coefficients]\na1 = u\n", "t.ini"), ProblemError);
    CHECK_THROWS_AS(parse_problem("[problem]\nkind = system\n[coefficients]\na1 = x\na1 = y\n", "t.ini"),
                    ProblemError);
    CHECK_THROWS_AS(parse_problem("[nonsense]\n", "t.ini"), ProblemError);
    CHECK_THROWS_AS(parse_problem(std::string(kSystemText) + "[domain]\nx = 2..1\n", "t.ini"), ProblemError);
    CHECK_THROWS_AS(parse_problem(std::string(kSystemText) + "[initial]\n1 2 3\n", "t.ini"), ProblemError);

    const Run no_transform = capture(
        [&](std::ostream& o, std::ostream& e) { return run_verify(problem("example3_fx_gx.ini"), g, o, e); });
    CHECK(no_transform.code == kExitInputError);
  }

  TEST_CASE("parse_problem reads every section") {
    const ProblemFile pf = parse_problem(std::string(kSystemText) +
                                             "[transformation]\nphi = x\npsi1 = y\npsi2 = z\n"
                                             "[domain]\nx = 0..1\nexclude = y > 0.25\n"
                                             "[numeric]\nstep = 0.01\nsamples = 50\ntol = 1e-8\nseed = 3\n"
                                             "[initial]\n0 1 2 0.5 -0.25\n",
                                         "t.ini");
    CHECK(pf.kind == ProblemKind::System);
    REQUIRE(pf.transformation);
    CHECK(pf.domain.ranges().at("x").upper == 1.0);
    CHECK(pf.domain.exclusions().size() == 1);
    CHECK(*pf.numeric.step == 0.01);
    CHECK(*pf.numeric.samples == 50);
    CHECK(*pf.numeric.seed == 3);
    REQUIRE(pf.initial.size() == 1);
    CHECK(pf.initial[0].zp == -0.25);
  }

  TEST_CASE("split") {
    GlobalOptions g;
    const std::string out_path = (std::filesystem::temp_directory_path() / "clin_split_out.ini").string();
    const Run r = capture([&](std::ostream& o, std::ostream& e) {
      return run_split(problem("example1_complex.ini"), out_path, false, g, o, e);
    });
    CHECK(r.code == kExitOk);
    const ProblemFile pf = load_problem(out_path);
    CHECK(pf.kind == ProblemKind::System);
    const Run again = capture([&](std::ostream& o, std::ostream& e) { return run_check(out_path, g, o, e); });
    CHECK(again.code == kExitOk);
    std::filesystem::remove(out_path);

    const Run u2 = capture(
        [&](std::ostream& o, std::ostream& e) { return run_split(problem("complex_u2.ini"), {}, false, g, o, e); });
    CHECK(u2.code == kExitOk);
    CHECK(u2.out.find("a1 = ") != std::string::npos);

    const Run tan = capture(
        [&](std::ostream& o, std::ostream& e) { return run_split(problem("complex_tan.ini"), {}, false, g, o, e); });
    CHECK(tan.code == kExitInputError);
    CHECK(tan.err.find("--numeric-only") != std::string::npos);
    const Run tan_numeric = capture(
        [&](std::ostream& o, std::ostream& e) { return run_split(problem("complex_tan.ini"), {}, true, g, o, e); });
    CHECK(tan_numeric.code == kExitOk);
  }

  TEST_CASE("verify and simulate") {
    GlobalOptions g;
    auto verify = [&](const char* f) {
      return capture([&](std::ostream& o, std::ostream& e) { return run_verify(problem(f), g, o, e); }).code;
    };
    auto simulate = [&](const char* f) {
      return capture([&](std::ostream& o, std::ostream& e) { return run_simulate(problem(f), g, o, e); }).code;
    };
    CHECK(verify("example1.ini") == kExitOk);
    CHECK(verify("example2.ini") == kExitOk);
    CHECK(verify("scalar_example1.ini") == kExitOk);
    CHECK(verify("example1_identity.ini") == kExitNegative);
    CHECK(verify("example2_printed.ini") == kExitNegative);
    CHECK(simulate("example1.ini") == kExitOk);
    CHECK(simulate("example2.ini") == kExitOk);
    CHECK(simulate("example1_identity.ini") == kExitNegative);
  }

  TEST_CASE("derive-conditions") {
    GlobalOptions g;
    g.json = true;
    const Run r = capture([&](std::ostream& o, std::ostream& e) { return run_derive_conditions(g, o, e); });
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["conditions"].size() == 4);
  }

  TEST_CASE("json output is byte-identical across runs") {
    for (const char* f : {"example1.ini", "example2.ini", "example3_f1_g2.ini"}) {
      CHECK(check(f, true).out == check(f, true).out);
    }
    GlobalOptions g;
    g.json = true;
    auto verify = [&] {
      return capture([&](std::ostream& o, std::ostream& e) { return run_verify(problem("example1.ini"), g, o, e); }).out;
    };
    CHECK(verify() == verify());
  }

  TEST_CASE("command-line overrides win over the file") {
    GlobalOptions g;
    g.json = true;
    g.samples = 50;
    g.seed = 7;
    const Run r = capture([&](std::ostream& o, std::ostream& e) { return run_check(problem("example1.ini"), g, o, e); });
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["provenance"]["samples"] == 50);
    CHECK(j["provenance"]["seed"] == 7);
  }
}
