#include "doctest.h"

#include "superloop/errors.hpp"
#include "superloop/report.hpp"

using namespace superloop;
using nlohmann::json;

TEST_CASE("job grammar")
{
    JobSpec j = parse_job("sl:2,1", "t1:(1,2)(2,1);t2:(-1/2,1)", "1;0;2;0", "1,2/3,0,0,0,0", {"induce", "axioms"});
    CHECK(j.family == Family::SL);
    CHECK(j.m == 2);
    CHECK(j.n == 1);
    CHECK(j.ideal->str() == "t1:(1,2)(2,1);t2:(-1/2,1)");
    CHECK(j.weights == WeightList{{1}, {0}, {2}, {0}});
    CHECK(j.lambda->at(1) == Scalar(2, 3));
    CHECK(j.tasks == std::vector<std::string>{"axioms", "induce"});

    JobSpec c = parse_job(" C : 3 ", "", "", "", {});
    CHECK(c.family == Family::C);
    CHECK(c.algebra_str() == "C:3");

    JobSpec f = parse_job_json(R"j({"algebra": "sl:2,1", "ideal": "t1:(1,1)", "tasks": ["roots"]})j");
    CHECK(f.tasks == std::vector<std::string>{"roots"});
}

TEST_CASE("malformed input names field and position")
{
    auto message = [](auto&& f) {
        try {
            f();
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message([] { parse_job("sl:2", "", "", "", {}); }) == "algebra: expected ',' at position 4 in \"sl:2\"");
    CHECK(message([] { parse_job("so:3", "", "", "", {}); }).find("unknown family") != std::string::npos);
    CHECK(message([] { parse_job("sl:2,1", "t1:(1,2)(x,1)", "", "", {}); }) ==
          "ideal: 'x' is not a rational at position 9 in \"t1:(1,2)(x,1)\"");
    CHECK(message([] { parse_job("sl:2,1", "t2:(1,1)", "", "", {}); }).find("expected variable t1") !=
          std::string::npos);
    CHECK(message([] { parse_job("sl:2,1", "t1:(1,1/2)", "", "", {}); }).find("small integer") != std::string::npos);
    CHECK(message([] { parse_job("sl:2,1", "t1:(0,1)", "", "", {}); }).find("nonzero") != std::string::npos);
    CHECK(message([] { parse_job("sl:2,1", "", "", "", {"induce"}); }) == "task induce: requires --ideal");
    CHECK(message([] { parse_job("sl:2,1", "", "", "", {"lemma"}); }) == "task: unknown task 'lemma'");
    CHECK(message([] { parse_job("sl:2,1", "", "1,,2", "", {}); }).find("position 2") != std::string::npos);
    CHECK(message([] { parse_job_json("{\"algebra\": 3}"); }).find("must be a string") != std::string::npos);
    CHECK(message([] { parse_job_json("[1"); }).rfind("job:", 0) == 0);
}

TEST_CASE("reports are canonical")
{
    JobSpec empty = parse_job("sl:2,1", "", "", "", {});
    json stub = run(empty);
    CHECK(stub["version"] == report_version);
    CHECK(stub["tasks"].empty());

    JobSpec j = parse_job("sl:2,1", "", "", "", {"axioms", "grading", "roots"});
    json r = run(j);
    CHECK(r["tasks"]["axioms"]["dim"] == "8");
    CHECK(report_pass(r));
    std::string a = emit(r, Format::json);
    CHECK(a == emit(run(j), Format::json));
    CHECK(emit(json::parse(a), Format::json) == a);
    CHECK(emit(r, Format::text).find("tasks.axioms.dim = 8\n") != std::string::npos);
    CHECK(run(j, true).contains("timings"));
    CHECK_FALSE(r.contains("timings"));
}

TEST_CASE("C(3) evaluation map job")
{
    JobSpec j = parse_job("C:3", "t1:(1,1)(2,1)", "", "", {"evalmap"});
    json r = run(j);
    CHECK(r["tasks"]["evalmap"]["surjective"] == true);
    CHECK(r["tasks"]["evalmap"]["kernel_dim"] == "38");
    CHECK(report_pass(r));
}

TEST_CASE("induce and classify job with defaults")
{
    JobSpec j = parse_job("sl:2,1", "t1:(1,2)", "", "", {"classify", "induce", "evalmod"});
    json r = run(j);
    CHECK(r["job"]["lambda"] == json::array({"0", "0"}));
    CHECK(r["tasks"]["induce"]["dim_V"] == "1");
    CHECK(r["tasks"]["induce"]["evaluation"] == true);
    CHECK(r["tasks"]["classify"]["round_trip"] == true);
    CHECK(r["tasks"]["evalmod"]["dim"] == "1");
    CHECK(report_pass(r));

    JobSpec bad = parse_job("sl:2,1", "t1:(1,2)", "1", "1", {"induce"});
    CHECK_THROWS_AS(run(bad), PreconditionError);
}
