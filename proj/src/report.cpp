#include "superloop/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "superloop/errors.hpp"

namespace superloop {

using nlohmann::json;

namespace {

// ------------------------------------------------------------------ parsing

class Cursor {
public:
    Cursor(std::string field, const std::string& text) : field_(std::move(field)), text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    void skip_space()
    {
        while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }
    bool accept(char c)
    {
        skip_space();
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    /// Characters up to (not including) any of the stop characters.
    std::string token(const std::string& stops)
    {
        skip_space();
        std::size_t start = pos_;
        while (!done() && stops.find(text_[pos_]) == std::string::npos)
            ++pos_;
        if (pos_ == start)
            fail("expected a value");
        std::string t = text_.substr(start, pos_ - start);
        while (!t.empty() && (t.back() == ' ' || t.back() == '\t'))
            t.pop_back();
        return t;
    }
    Scalar rational(const std::string& stops)
    {
        std::size_t at = pos_;
        std::string t = token(stops);
        try {
            return Scalar::parse(t);
        } catch (const std::invalid_argument&) {
            pos_ = at;
            fail("'" + t + "' is not a rational");
        }
    }
    long integer(const std::string& stops)
    {
        std::size_t at = pos_;
        Scalar s = rational(stops);
        if (!s.is_integer() || s.to_mpq() > 1000000 || s.to_mpq() < -1000000) {
            pos_ = at;
            fail("expected a small integer");
        }
        return static_cast<long>(s.to_int64());
    }
    void finish()
    {
        skip_space();
        if (!done())
            fail("unexpected trailing input");
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(field_ + ": " + what + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
    }

private:
    std::string field_;
    const std::string& text_;
    std::size_t pos_ = 0;
};

std::string count(std::size_t n) { return std::to_string(n); }

json scalars(const std::vector<Scalar>& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(x.str());
    return out;
}

json dense(const Mat& m)
{
    json out = json::array();
    for (const auto& row : m.to_dense())
        out.push_back(scalars(row));
    return out;
}

json weight_list(const WeightList& w)
{
    json out = json::array();
    for (const auto& p : w) {
        json row = json::array();
        for (long c : p)
            row.push_back(std::to_string(c));
        out.push_back(row);
    }
    return out;
}

const char* kind_name(AxiomViolation::Kind k)
{
    switch (k) {
    case AxiomViolation::Kind::Parity:
        return "parity";
    case AxiomViolation::Kind::SkewSymmetry:
        return "skew";
    case AxiomViolation::Kind::Jacobi:
        return "jacobi";
    }
    return "?";
}

constexpr std::size_t max_witnesses = 20;

// -------------------------------------------------------------------- tasks

json task_axioms(const Realized& g)
{
    AxiomReport r = check_axioms(*g.algebra);
    json out;
    out["dim"] = count(g.algebra->dim());
    out["triples_checked"] = count(r.triples_checked);
    out["violation_count"] = count(r.violations.size());
    json v = json::array();
    for (std::size_t k = 0; k < std::min(max_witnesses, r.violations.size()); ++k) {
        const auto& x = r.violations[k];
        v.push_back({{"kind", kind_name(x.kind)}, {"i", count(x.i)}, {"j", count(x.j)}, {"k", count(x.k)}});
    }
    out["violations"] = v;
    out["pass"] = r.pass();
    return out;
}

json task_grading(const Realized& g)
{
    GradingReport r = check_z_grading(*g.algebra);
    json out;
    out["dim_minus"] = count(r.dim_minus);
    out["dim_zero"] = count(r.dim_zero);
    out["dim_plus"] = count(r.dim_plus);
    out["plus_plus_zero"] = r.plus_plus_zero;
    out["minus_minus_zero"] = r.minus_minus_zero;
    out["violation_count"] = count(r.violations.size());
    json v = json::array();
    for (std::size_t k = 0; k < std::min(max_witnesses, r.violations.size()); ++k)
        v.push_back({{"i", count(r.violations[k].i)}, {"j", count(r.violations[k].j)}});
    out["violations"] = v;

    CenterSplit split = center_split(*g.algebra);
    auto w = odd_bracket_center_witness(*g.algebra, split);
    json ob;
    ob["holds"] = w.has_value();
    if (w) {
        ob["i"] = count(w->i);
        ob["j"] = count(w->j);
        ob["bracket_labels"] = {g.realization->labels[w->i], g.realization->labels[w->j]};
        ob["z_component"] = w->z_component.str();
    }
    out["odd_bracket_outside_even_derived"] = ob;
    out["pass"] = r.pass() && w.has_value();
    return out;
}

json task_roots(const Realized& g)
{
    std::vector<std::string> even, odd;
    for (const auto& rs : root_decomposition(*g.algebra)) {
        if (rs.root.is_zero())
            continue;
        std::string label = g.realization->root_label(rs.root);
        for (std::size_t k = 0; k < rs.indices.size(); ++k)
            (rs.parity == Parity::Even ? even : odd).push_back(label);
    }
    std::sort(even.begin(), even.end());
    std::sort(odd.begin(), odd.end());
    json out;
    out["even"] = even;
    out["odd"] = odd;
    out["even_count"] = count(even.size());
    out["odd_count"] = count(odd.size());
    // Counted with multiplicity: m(m-1) + n(n-1) and 2mn for sl(m,n);
    // 2(m-1)^2 and 4(m-1) for C(m).
    const auto& r = *g.realization;
    std::size_t ee = r.family == Family::SL ? r.m * (r.m - 1) + r.n * (r.n - 1) : 2 * (r.m - 1) * (r.m - 1);
    std::size_t eo = r.family == Family::SL ? 2 * r.m * r.n : 4 * (r.m - 1);
    out["expected_even_count"] = count(ee);
    out["expected_odd_count"] = count(eo);
    out["pass"] = even.size() == ee && odd.size() == eo;
    return out;
}

json task_evalmap(const Realized& g, const CofiniteIdeal& ideal)
{
    EvaluationMapReport r = check_evaluation_map(g.algebra, ideal);
    json out;
    out["grid_size"] = count(r.grid_size);
    out["rank"] = count(r.rank);
    out["expected_rank"] = count(r.expected_rank);
    out["surjective"] = r.surjective();
    out["model_dim"] = count(r.model_dim);
    out["kernel_dim"] = count(r.kernel_dim);
    out["expected_kernel_dim"] = count(r.expected_kernel_dim);
    out["kernel_matches"] = r.kernel_matches;
    out["bracket_pairs_checked"] = count(r.bracket_pairs_checked);
    json v = json::array();
    for (std::size_t k = 0; k < std::min(max_witnesses, r.bracket_violations.size()); ++k)
        v.push_back({count(r.bracket_violations[k].first), count(r.bracket_violations[k].second)});
    out["bracket_violations"] = v;
    out["pass"] = r.pass();
    return out;
}

json task_evalmod(const InductionSetup& s, const WeightList& weights)
{
    std::vector<Representation> modules;
    std::vector<Root> mus;
    for (const auto& w : weights) {
        modules.push_back(irreducible_hw_module(s.ss, w));
        std::vector<Scalar> f;
        for (long c : w)
            f.emplace_back(static_cast<long long>(c));
        mus.push_back(s.ss.weight(f));
    }
    Representation e = evaluation_module(s.loop_ss, s.grid, modules);
    Irreducibility irr = singular_vector_test(e, s.loop_ss.algebra->positive());
    bool irreducible = irr == Irreducibility::irreducible || (irr == Irreducibility::unknown && is_irreducible(e));
    json out;
    out["dim"] = count(e.dim());
    out["representation_check"] = check_representation(e).pass();
    out["irreducible"] = irreducible;
    json psi = json::array();
    for (const auto& row : psi_of(mus, s.grid, *s.a).values)
        psi.push_back(scalars(row));
    out["psi"] = psi;
    out["pass"] = out["representation_check"].get<bool>() && irreducible;
    return out;
}

json task_induce(const InductionSetup& s, const InducedPipeline& p, const LambdaFunctional& lambda)
{
    json out;
    const std::size_t expected = (std::size_t{1} << p.m.r) * p.m.dim_W;
    out["dim_W"] = count(p.m.dim_W);
    out["r"] = count(p.m.r);
    out["dim_M"] = count(p.m.rep.dim());
    out["dim_M_expected"] = count(expected);
    out["pbw"] = p.m.rep.dim() == expected;
    out["representation_check"] = check_representation(p.m.rep).pass();
    out["algebra_dim"] = count(p.q.algebra_dim);
    out["radical_dim"] = count(p.q.radical_dim);
    out["radical_module_dim"] = count(p.q.radical_module.dim());
    out["dim_V"] = count(p.q.v.dim());
    out["burnside"] = true; // irreducible_quotient throws otherwise
    bool oracle_ok = true;
    if (p.m.rep.dim() <= 64) {
        oracle_ok = maximal_submodule(p.m) == p.q.radical_module;
        out["oracle_agrees"] = oracle_ok;
    } else {
        out["oracle_agrees"] = nullptr;
    }
    auto nonzero = lambda_on_squarefree(s, lambda);
    out["lambda_vanishes_on_sqrt_I"] = !nonzero.has_value();
    if (nonzero)
        out["lambda_witness"] = {{"p", element_label(*s.a, nonzero->first)}, {"value", nonzero->second.str()}};
    EvaluationCheck ev = is_evaluation(p.q.v, s.loop);
    out["evaluation"] = ev.evaluation;
    if (ev.witness)
        out["evaluation_witness"] = {{"x", s.g.realization->labels[ev.witness->base_index]},
                                     {"index", count(ev.witness->base_index)},
                                     {"p", ev.witness->label}};
    bool criterion = ev.evaluation == !nonzero.has_value();
    out["criterion_agrees"] = criterion;
    out["pass"] = out["pbw"].get<bool>() && out["representation_check"].get<bool>() && oracle_ok && criterion;
    return out;
}

json task_classify(const InductionSetup& s, const InducedPipeline& p, const WeightList& weights,
                   const LambdaFunctional& lambda)
{
    Classification c = classify(s, p.q.v);
    InductionData expected = normalize(s, weights, lambda);
    json out;
    json pts = json::array();
    for (const auto& pt : c.data.points)
        pts.push_back(scalars(pt));
    out["points"] = pts;
    out["weights"] = weight_list(c.data.weights);
    out["lambda"] = scalars(c.data.lambda.values);
    json psi = json::array();
    for (const auto& row : c.psi.values)
        psi.push_back(scalars(row));
    out["psi"] = psi;
    out["claim_irreducible"] = c.claim_irreducible;
    out["round_trip"] = c.data == expected;
    out["intertwiner"] = dense(c.intertwiner);
    out["pass"] = c.claim_irreducible && c.data == expected;
    return out;
}

} // namespace

const std::vector<std::string>& known_tasks()
{
    static const std::vector<std::string> t{"axioms", "grading", "roots", "evalmap", "evalmod", "induce", "classify"};
    return t;
}

std::string JobSpec::algebra_str() const
{
    return family == Family::SL ? "sl:" + std::to_string(m) + "," + std::to_string(n) : "C:" + std::to_string(m);
}

void parse_algebra(const std::string& text, JobSpec& job)
{
    Cursor c("algebra", text);
    std::string fam = c.token(":");
    c.expect(':');
    if (fam == "sl") {
        job.family = Family::SL;
        job.m = static_cast<std::size_t>(std::max(0L, c.integer(",")));
        c.expect(',');
        job.n = static_cast<std::size_t>(std::max(0L, c.integer("")));
    } else if (fam == "C") {
        job.family = Family::C;
        job.m = static_cast<std::size_t>(std::max(0L, c.integer("")));
        job.n = 0;
    } else {
        throw ParseError("algebra: unknown family '" + fam + "' at position 0 in \"" + text + "\" (use sl:m,n or C:m)");
    }
    c.finish();
}

CofiniteIdeal parse_ideal(const std::string& text)
{
    Cursor c("ideal", text);
    std::vector<std::vector<IdealRoot>> roots;
    do {
        c.expect('t');
        long var = c.integer(":");
        if (var != static_cast<long>(roots.size()) + 1)
            c.fail("expected variable t" + std::to_string(roots.size() + 1));
        c.expect(':');
        std::vector<IdealRoot> r;
        do {
            c.expect('(');
            Scalar a = c.rational(",");
            c.expect(',');
            long mult = c.integer(")");
            c.expect(')');
            r.push_back({a, static_cast<int>(mult)});
            c.skip_space();
        } while (c.peek() == '(');
        roots.push_back(std::move(r));
    } while (c.accept(';'));
    c.finish();
    return CofiniteIdeal(std::move(roots));
}

WeightList parse_weights(const std::string& text)
{
    Cursor c("weights", text);
    WeightList out;
    do {
        std::vector<long> w;
        do
            w.push_back(c.integer(",;"));
        while (c.accept(','));
        out.push_back(std::move(w));
    } while (c.accept(';'));
    c.finish();
    return out;
}

std::vector<Scalar> parse_rationals(const std::string& text, const std::string& field)
{
    Cursor c(field, text);
    std::vector<Scalar> out;
    do
        out.push_back(c.rational(","));
    while (c.accept(','));
    c.finish();
    return out;
}

JobSpec parse_job(const std::string& algebra, const std::string& ideal, const std::string& weights,
                  const std::string& lambda, const std::vector<std::string>& tasks)
{
    JobSpec job;
    if (algebra.empty())
        throw ParseError("algebra: missing (use sl:m,n or C:m)");
    parse_algebra(algebra, job);
    if (!ideal.empty()) {
        try {
            job.ideal = parse_ideal(ideal);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
    if (!weights.empty())
        job.weights = parse_weights(weights);
    if (!lambda.empty())
        job.lambda = parse_rationals(lambda, "lambda");
    std::set<std::string> wanted;
    for (const auto& t : tasks) {
        if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end())
            throw ParseError("task: unknown task '" + t + "'");
        wanted.insert(t);
    }
    for (const auto& t : known_tasks())
        if (wanted.count(t))
            job.tasks.push_back(t);
    for (const auto& t : job.tasks)
        if ((t == "evalmap" || t == "evalmod" || t == "induce" || t == "classify") && !job.ideal)
            throw ParseError("task " + t + ": requires --ideal");
    return job;
}

JobSpec parse_job_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("job: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("job: expected an object at position 0");
    auto str = [&](const char* key) -> std::string {
        if (!j.contains(key))
            return "";
        if (!j[key].is_string())
            throw ParseError(std::string("job: field '") + key + "' must be a string");
        return j[key].get<std::string>();
    };
    std::vector<std::string> tasks;
    if (j.contains("tasks")) {
        if (!j["tasks"].is_array())
            throw ParseError("job: field 'tasks' must be an array of strings");
        for (const auto& t : j["tasks"]) {
            if (!t.is_string())
                throw ParseError("job: field 'tasks' must be an array of strings");
            tasks.push_back(t.get<std::string>());
        }
    }
    for (const auto& [k, v] : j.items())
        if (k != "algebra" && k != "ideal" && k != "weights" && k != "lambda" && k != "tasks")
            throw ParseError("job: unknown field '" + k + "'");
    return parse_job(str("algebra"), str("ideal"), str("weights"), str("lambda"), tasks);
}

Realized build_algebra(const JobSpec& job)
{
    return job.family == Family::SL ? build_sl(job.m, job.n) : build_C(job.m);
}

json run(const JobSpec& job, bool timings)
{
    json report;
    report["version"] = report_version;
    json spec;
    spec["algebra"] = job.algebra_str();
    spec["tasks"] = job.tasks;
    if (job.ideal)
        spec["ideal"] = job.ideal->str();
    report["job"] = spec;
    report["tasks"] = json::object();
    if (job.tasks.empty())
        return report;

    json times = json::object();
    Realized g = build_algebra(job);
    std::optional<InductionSetup> setup;
    WeightList weights;
    LambdaFunctional lambda;
    std::optional<InducedPipeline> pipeline;
    auto ensure_setup = [&] {
        if (setup)
            return;
        setup = induction_setup(g, *job.ideal);
        weights = job.weights.value_or(WeightList(setup->grid.size(), std::vector<long>(setup->ss.rank(), 0)));
        lambda.values = job.lambda.value_or(std::vector<Scalar>(setup->a->dim()));
        report["job"]["weights"] = weight_list(weights);
        report["job"]["lambda"] = scalars(lambda.values);
    };
    auto ensure_pipeline = [&] {
        ensure_setup();
        if (!pipeline)
            pipeline = build_V(*setup, weights, lambda);
    };

    for (const auto& t : job.tasks) {
        auto start = std::chrono::steady_clock::now();
        json r;
        if (t == "axioms") {
            r = task_axioms(g);
        } else if (t == "grading") {
            r = task_grading(g);
        } else if (t == "roots") {
            r = task_roots(g);
        } else if (t == "evalmap") {
            r = task_evalmap(g, *job.ideal);
        } else if (t == "evalmod") {
            ensure_setup();
            r = task_evalmod(*setup, weights);
        } else if (t == "induce") {
            ensure_pipeline();
            r = task_induce(*setup, *pipeline, lambda);
        } else if (t == "classify") {
            ensure_pipeline();
            r = task_classify(*setup, *pipeline, weights, lambda);
        }
        report["tasks"][t] = r;
        times[t] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    report["pass"] = report_pass(report);
    if (timings)
        report["timings"] = times;
    return report;
}

bool report_pass(const json& report)
{
    if (!report.contains("tasks"))
        return true;
    for (const auto& [k, v] : report["tasks"].items())
        if (!v.contains("pass") || !v["pass"].get<bool>())
            return false;
    return true;
}

namespace {

void flatten(const json& j, const std::string& path, std::string& out)
{
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out += path + " = " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

} // namespace

std::string emit(const json& report, Format format)
{
    if (format == Format::json)
        return report.dump(2) + "\n";
    std::string out;
    flatten(report, "", out);
    return out;
}

} // namespace superloop
