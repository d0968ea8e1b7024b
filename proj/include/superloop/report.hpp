#pragma once

// Job specifications and canonical JSON reports for the command-line driver.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "superloop/induce.hpp"

namespace superloop {

/// Malformed job input; the message names the field and the character position.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* report_version = "1";

/// Canonical task order; tasks run in this order whatever the input order.
const std::vector<std::string>& known_tasks();

struct JobSpec {
    Family family = Family::SL;
    std::size_t m = 0;
    std::size_t n = 0;
    std::optional<CofiniteIdeal> ideal;
    std::optional<WeightList> weights;         // one entry per point of I'
    std::optional<std::vector<Scalar>> lambda; // on the monomial basis of A/I
    std::vector<std::string> tasks;            // canonical order, no repeats

    std::string algebra_str() const;
};

/// "sl:2,1" or "C:3".
void parse_algebra(const std::string& text, JobSpec& job);
/// "t1:(1,2)(2,1);t2:(-1,1)"
CofiniteIdeal parse_ideal(const std::string& text);
/// "1,0;0,1": one comma list per point of I', points separated by ';'.
WeightList parse_weights(const std::string& text);
/// "1,2/3,0"
std::vector<Scalar> parse_rationals(const std::string& text, const std::string& field);

/// Empty strings mean "absent". Throws ParseError.
JobSpec parse_job(const std::string& algebra, const std::string& ideal, const std::string& weights,
                  const std::string& lambda, const std::vector<std::string>& tasks);
/// {"algebra": ..., "ideal": ..., "weights": ..., "lambda": ..., "tasks": [...]}
JobSpec parse_job_json(const std::string& text);

Realized build_algebra(const JobSpec& job);

/// Runs every task of the job. Throws PreconditionError / InvariantError from
/// the library. With timings the report gains a non-canonical "timings" object.
nlohmann::json run(const JobSpec& job, bool timings = false);

/// true iff every task reports "pass": true.
bool report_pass(const nlohmann::json& report);

enum class Format { json, text };
/// JSON: keys sorted, two-space indent, trailing newline. Text: one
/// "path = value" line per leaf in the same order.
std::string emit(const nlohmann::json& report, Format format);

} // namespace superloop
