// Command-line driver: builds the algebra of a job, runs its tasks and prints
// a canonical report. Exit codes: 0 all pass, 1 some check failed, 2 parse
// error, 3 precondition violated, 4 internal invariant breached.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "superloop/errors.hpp"
#include "superloop/report.hpp"

using namespace superloop;

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations with sl(m,n), C(m), their loop algebras and induced modules"};
    std::string algebra, ideal, weights, lambda, job_file, format = "json";
    std::vector<std::string> tasks;
    bool timings = false;
    app.add_option("--algebra", algebra, "sl:m,n (block sizes) or C:m");
    app.add_option("--ideal", ideal, "t1:(root,mult)(root,mult);t2:(...)");
    app.add_option("--weights", weights, "highest weights per point of I', e.g. 1,0;0,1");
    app.add_option("--lambda", lambda, "lambda(z (x) t^e) on the monomial basis of A/I, e.g. 1,2/3");
    app.add_option("--task", tasks, "axioms grading roots evalmap evalmod induce classify")->delimiter(',');
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--job", job_file, "JSON job file (replaces the other job flags)");
    app.add_flag("--timings", timings, "add wall-clock timings (not part of the canonical report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        JobSpec job;
        if (!job_file.empty()) {
            std::ifstream in(job_file);
            if (!in)
                throw ParseError("job: cannot read " + job_file);
            std::stringstream buf;
            buf << in.rdbuf();
            job = parse_job_json(buf.str());
        } else {
            job = parse_job(algebra, ideal, weights, lambda, tasks);
        }
        nlohmann::json report = run(job, timings);
        std::cout << emit(report, format == "text" ? Format::text : Format::json);
        return report_pass(report) ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "invariant: " << e.what() << "\n";
        return 4;
    }
}
