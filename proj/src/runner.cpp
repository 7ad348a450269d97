#include "waterfall/runner.hpp"

#include <json.hpp>

#include <type_traits>

namespace waterfall {

namespace {

using Json = nlohmann::ordered_json;

template <Scalar T>
T convert(const Rational& r) {
    if constexpr (std::is_same_v<T, Rational>)
        return r;
    else
        return to_double(r);
}

template <Scalar T>
std::vector<T> convert_vec(const std::vector<Rational>& rs) {
    std::vector<T> out;
    out.reserve(rs.size());
    for (const Rational& r : rs) out.push_back(convert<T>(r));
    return out;
}

Json number_array(const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const Rational& x : xs) arr.push_back(format_rational(x));
    return arr;
}

template <Scalar T>
Json scalar_array(const std::vector<T>& xs) {
    Json arr = Json::array();
    for (const T& x : xs) arr.push_back(scalar_text(x));
    return arr;
}

// Tolerance-aware comparisons; eps is 0 in exact mode, so these reduce to
// exact equality there.
template <Scalar T>
bool approx_eq(const T& a, const T& b, const T& eps) {
    T d = a - b;
    if (d < T(0)) d = -d;
    return !(d > eps);
}

template <Scalar T>
bool approx_nonneg(const T& v, const T& eps) {
    return !(v < -eps);
}

const char* error_kind(const Error& e) {
    if (dynamic_cast<const EmptySchedule*>(&e)) return "empty-schedule";
    if (dynamic_cast<const NonNegativityViolation*>(&e)) return "negative-cap";
    if (dynamic_cast<const InvertedInterval*>(&e)) return "inverted-interval";
    if (dynamic_cast<const LengthMismatch*>(&e)) return "length-mismatch";
    if (dynamic_cast<const PreconditionViolated*>(&e)) return "precondition-violated";
    if (dynamic_cast<const NegativePsi*>(&e)) return "negative-psi";
    if (dynamic_cast<const NumberFormatError*>(&e)) return "number-format";
    return "error";
}

void attach_error(Json& rec, const Error& e) {
    rec["error"] = Json{{"type", error_kind(e)}, {"message", e.what()}};
    rec["pass"] = false;
}

Json pivot_json(const PivotClass& pc) {
    switch (pc.kind) {
        case PivotKind::BelowFirstCap: return Json{{"kind", "below-first-cap"}};
        case PivotKind::AtOrAboveTotal: return Json{{"kind", "at-or-above-total"}};
        case PivotKind::Interior:
            return Json{{"kind", "interior"}, {"index", pc.pivot}};
    }
    return Json{};
}

template <Scalar T>
bool bounds_ok(const Allocation<T>& a, const CapSchedule<T>& s) {
    if (s.cap(0) < a.terms[0]) return false;
    for (std::size_t j = 1; j < s.size(); ++j)
        if (a.terms[j] < T(0) || s.cap(j) < a.terms[j]) return false;
    return !(a.residual() < T(0));
}

template <Scalar T>
bool terms_close(const std::vector<T>& a, const std::vector<T>& b, const T& eps) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!approx_eq(a[k], b[k], eps)) return false;
    return true;
}

// The allocation shape each classification dictates. Equalities go through
// eps so float-mode prefix-sum roundoff cannot produce spurious failures;
// the classification inequalities themselves are raw by contract.
template <Scalar T>
bool pivot_consistent(const T& x, const CapSchedule<T>& s, const Allocation<T>& a,
                      const PivotClass& pc, const T& eps) {
    const std::size_t m = s.size();
    switch (pc.kind) {
        case PivotKind::BelowFirstCap: {
            if (!(x <= s.cap(0))) return false;
            if (!approx_eq(a.terms[0], x, eps)) return false;
            for (std::size_t k = 1; k <= m; ++k)
                if (!approx_eq(a.terms[k], T(0), eps)) return false;
            return true;
        }
        case PivotKind::AtOrAboveTotal: {
            if (!(x >= s.total())) return false;
            for (std::size_t k = 0; k < m; ++k)
                if (!approx_eq(a.terms[k], s.cap(k), eps)) return false;
            return approx_eq(a.residual(), x - s.total(), eps);
        }
        case PivotKind::Interior: {
            const std::size_t i0 = pc.pivot;
            if (i0 < 1 || i0 + 1 > m) return false;
            if (!(s.prefix_sum(i0) < x && x <= s.prefix_sum(i0 + 1))) return false;
            for (std::size_t k = 0; k < i0; ++k)
                if (!approx_eq(a.terms[k], s.cap(k), eps)) return false;
            if (!approx_eq(a.terms[i0], x - s.prefix_sum(i0), eps)) return false;
            if (eps == T(0) && !(a.terms[i0] > T(0))) return false;
            for (std::size_t k = i0 + 1; k <= m; ++k)
                if (!approx_eq(a.terms[k], T(0), eps)) return false;
            return true;
        }
    }
    return false;
}

template <Scalar T>
Json violations_json(const std::vector<DominanceViolation<T>>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) {
        Json item;
        item["precondition"] = dominance_name(v.which);
        if (v.index) item["index"] = *v.index;
        item["lhs"] = scalar_text(v.lhs);
        item["rhs"] = scalar_text(v.rhs);
        arr.push_back(std::move(item));
    }
    return arr;
}

struct Checks {
    Json json = Json::object();
    bool pass = true;

    void add(const char* name, bool ok) {
        json[name] = ok ? "pass" : "fail";
        pass = pass && ok;
    }
};

template <Scalar T>
Json eval_allocate(std::size_t index, const AllocateScenario& s, const T& eps) {
    Json rec;
    rec["scenario"] = index;
    rec["op"] = "allocate";
    rec["input"] = Json{{"x", format_rational(s.x)}, {"caps", number_array(s.caps)}};
    try {
        const CapSchedule<T> schedule(convert_vec<T>(s.caps));
        const T x = convert<T>(s.x);
        const Allocation<T> a = allocate(x, schedule);
        const Allocation<T> poured = allocate_sequential(x, schedule);
        const PivotClass pivot = classify_pivot(x, schedule);

        Json out;
        out["terms"] = scalar_array(a.terms);
        out["residual"] = scalar_text(a.residual());
        out["sum"] = scalar_text(a.sum());
        out["pivot"] = pivot_json(pivot);
        rec["output"] = std::move(out);

        Checks checks;
        checks.add("conservation", approx_eq(a.sum(), x, eps));
        checks.add("bounds", bounds_ok(a, schedule));
        checks.add("sequential_agreement", terms_close(a.terms, poured.terms, eps));
        checks.add("pivot_consistency", pivot_consistent(x, schedule, a, pivot, eps));
        rec["checks"] = std::move(checks.json);
        rec["pass"] = checks.pass;
    } catch (const Error& e) {
        attach_error(rec, e);
    }
    return rec;
}

template <Scalar T>
Json eval_diff(std::size_t index, const DiffScenario& s, const T& eps, bool check_only) {
    Json rec;
    rec["scenario"] = index;
    rec["op"] = check_only ? "check" : "diff";
    Json input{{"x1", format_rational(s.x1)},
               {"caps1", number_array(s.caps1)},
               {"x2", format_rational(s.x2)},
               {"caps2", number_array(s.caps2)}};
    if (!check_only) input["mode"] = s.mode == CheckMode::Checked ? "checked" : "unchecked";
    rec["input"] = std::move(input);
    try {
        const DominancePair<T> pair{convert<T>(s.x1), CapSchedule<T>(convert_vec<T>(s.caps1)),
                                    convert<T>(s.x2), CapSchedule<T>(convert_vec<T>(s.caps2))};
        const DominanceReport<T> report = check_dominance(pair);

        if (check_only) {
            Json out;
            out["violations"] = violations_json(report.violations);
            out["partial_sums_dominate"] = report.partial_sums_dominate;
            if (report.first_partial_sum_failure)
                out["first_partial_sum_failure"] = *report.first_partial_sum_failure;
            rec["output"] = std::move(out);
            Checks checks;
            checks.add("preconditions", report.ok());
            rec["checks"] = std::move(checks.json);
            rec["pass"] = checks.pass;
            return rec;
        }

        if (s.mode == CheckMode::Checked && !report.ok()) {
            Json out;
            out["violations"] = violations_json(report.violations);
            rec["output"] = std::move(out);
            std::string msg = "dominance preconditions violated:";
            for (const auto& v : report.violations) msg += " [" + v.describe() + "]";
            attach_error(rec, PreconditionViolated(msg));
            return rec;
        }

        const DiffDecomposition<T> d = decompose_difference(pair, CheckMode::Unchecked);
        const T gap = pair.x1 - pair.x2;
        Json out;
        out["term_diffs"] = scalar_array(d.term_diffs);
        out["total"] = scalar_text(d.total);
        out["amount_gap"] = scalar_text(gap);
        out["min_signed_diff"] = scalar_text(d.min_signed_diff);
        out["identity_holds"] = approx_eq(d.total, gap, eps);
        out["nonnegative_diffs"] = approx_nonneg(d.min_signed_diff, eps);
        out["violations"] = violations_json(report.violations);
        out["partial_sums_dominate"] = report.partial_sums_dominate;
        rec["output"] = std::move(out);

        Checks checks;
        if (s.mode == CheckMode::Checked) {
            // All three are consequences of the verified preconditions.
            checks.add("preconditions", true);
            checks.add("identity", approx_eq(d.total, gap, eps));
            checks.add("nonnegative_diffs", approx_nonneg(d.min_signed_diff, eps));
            checks.add("partial_sum_dominance", report.partial_sums_dominate);
        }
        // Unchecked mode claims nothing; the flags above are informational.
        rec["checks"] = std::move(checks.json);
        rec["pass"] = checks.pass;
    } catch (const Error& e) {
        attach_error(rec, e);
    }
    return rec;
}

template <Scalar T>
Json eval_split(std::size_t index, const SplitScenario& s, const T& eps) {
    Json rec;
    rec["scenario"] = index;
    rec["op"] = "split-interval";
    rec["input"] = Json{{"a", format_rational(s.a)},
                        {"b", format_rational(s.b)},
                        {"lengths", number_array(s.lengths)}};
    try {
        const CapSchedule<T> lengths(convert_vec<T>(s.lengths));
        const T a = convert<T>(s.a);
        const T b = convert<T>(s.b);
        const std::vector<T> points = split_interval(a, b, lengths);
        const Allocation<T> terms = allocate<T>(b - a, lengths);

        Json out;
        out["breakpoints"] = scalar_array(points);
        rec["output"] = std::move(out);

        bool monotone = true;
        for (std::size_t k = 0; k + 1 < points.size(); ++k)
            if (points[k + 1] < points[k]) monotone = false;
        bool widths = true;
        for (std::size_t k = 0; k + 1 < points.size(); ++k)
            if (!approx_eq(points[k + 1] - points[k], terms.terms[k], eps)) widths = false;

        Checks checks;
        checks.add("endpoints", points.front() == a && approx_eq(points.back(), b, eps));
        checks.add("monotone", monotone);
        checks.add("widths_match_terms", widths);
        rec["checks"] = std::move(checks.json);
        rec["pass"] = checks.pass;
    } catch (const Error& e) {
        attach_error(rec, e);
    }
    return rec;
}

template <Scalar T>
Json eval_psi_diff(std::size_t index, const PsiDiffScenario& s, const T& eps) {
    Json rec;
    rec["scenario"] = index;
    rec["op"] = "psi-diff";
    rec["input"] = Json{{"x", format_rational(s.x)},
                        {"y1", format_rational(s.y1)},
                        {"y2", format_rational(s.y2)},
                        {"psi_at_y1", number_array(s.psi_at_y1)},
                        {"psi_at_y2", number_array(s.psi_at_y2)}};
    try {
        const PsiDecomposition<T> r =
            decompose_via_psi(convert<T>(s.x), convert<T>(s.y1), convert<T>(s.y2),
                              convert_vec<T>(s.psi_at_y1), convert_vec<T>(s.psi_at_y2));
        const T gap = r.pair.x1 - r.pair.x2;

        Json out;
        out["swapped"] = r.swapped;
        out["x1"] = scalar_text(r.pair.x1);
        out["x2"] = scalar_text(r.pair.x2);
        out["term_diffs"] = scalar_array(r.decomposition.term_diffs);
        out["total"] = scalar_text(r.decomposition.total);
        out["amount_gap"] = scalar_text(gap);
        rec["output"] = std::move(out);

        Checks checks;
        checks.add("identity", approx_eq(r.decomposition.total, gap, eps));
        checks.add("nonnegative_diffs", approx_nonneg(r.decomposition.min_signed_diff, eps));
        rec["checks"] = std::move(checks.json);
        rec["pass"] = checks.pass;
    } catch (const Error& e) {
        attach_error(rec, e);
    }
    return rec;
}

bool op_takes(RunOp op, const Scenario& s) {
    switch (op) {
        case RunOp::Allocate: return std::holds_alternative<AllocateScenario>(s);
        case RunOp::Diff:
        case RunOp::Check: return std::holds_alternative<DiffScenario>(s);
        case RunOp::SplitInterval: return std::holds_alternative<SplitScenario>(s);
        case RunOp::PsiDiff: return std::holds_alternative<PsiDiffScenario>(s);
    }
    return false;
}

template <Scalar T>
Json eval_scenario(RunOp op, std::size_t index, const Scenario& s, const T& eps) {
    switch (op) {
        case RunOp::Allocate: return eval_allocate(index, std::get<AllocateScenario>(s), eps);
        case RunOp::Diff: return eval_diff(index, std::get<DiffScenario>(s), eps, false);
        case RunOp::Check: return eval_diff(index, std::get<DiffScenario>(s), eps, true);
        case RunOp::SplitInterval: return eval_split(index, std::get<SplitScenario>(s), eps);
        case RunOp::PsiDiff: return eval_psi_diff(index, std::get<PsiDiffScenario>(s), eps);
    }
    throw std::logic_error("eval_scenario: bad op");
}

std::string failure_diagnostic(const Json& rec) {
    std::string msg = "scenario " + rec["scenario"].dump() + " (" +
                      rec["op"].get<std::string>() + "): ";
    if (rec.contains("error")) {
        msg += rec["error"]["type"].get<std::string>() + ": " +
               rec["error"]["message"].get<std::string>();
    } else {
        msg += "failed checks:";
        for (const auto& item : rec["checks"].items())
            if (item.value() == "fail") msg += " " + item.key();
    }
    return msg;
}

}  // namespace

RunOutcome run_scenarios(const ScenarioFile& file, RunOp op,
                         std::optional<NumericMode> mode_override,
                         std::optional<Rational> tolerance_override) {
    const NumericMode mode = mode_override.value_or(file.numeric_mode);
    Rational tolerance = parse_rational("1e-12");
    if (file.tolerance) tolerance = *file.tolerance;
    if (tolerance_override) tolerance = *tolerance_override;

    RunOutcome out;
    for (std::size_t i = 0; i < file.scenarios.size(); ++i) {
        const Scenario& s = file.scenarios[i];
        if (!op_takes(op, s)) continue;
        Json rec = mode == NumericMode::Exact
                       ? eval_scenario<Rational>(op, i, s, Rational(0))
                       : eval_scenario<double>(op, i, s, to_double(tolerance));
        rec["mode"] = numeric_mode_name(mode);
        ++out.evaluated;
        if (!rec["pass"].get<bool>()) ++out.failures;
        out.records.push_back(rec.dump());
    }
    return out;
}

RunOutcome run_fuzz(const gen::FuzzConfig& cfg) {
    RunOutcome out;
    if (cfg.cases == 0) return out;  // vacuous run: empty report

    const auto summary = [&](const char* suite, std::size_t failures,
                             std::optional<std::uint64_t> first_failure) {
        Json rec;
        rec["suite"] = suite;
        rec["seed"] = cfg.seed;
        rec["cases"] = cfg.cases;
        rec["max_m"] = cfg.max_m;
        rec["magnitude_bound"] = format_rational(cfg.magnitude_bound);
        rec["failures"] = failures;
        if (first_failure)
            rec["first_failure"] = Json{{"seed", cfg.seed}, {"index", *first_failure}};
        else
            rec["first_failure"] = nullptr;
        rec["pass"] = failures == 0;
        out.records.push_back(rec.dump());
        ++out.evaluated;
        if (failures > 0) ++out.failures;
    };

    // Suite 1: the closed form against the sequential pour, term by term,
    // plus conservation, the negative-amount shape and pivot consistency.
    std::size_t eq_failures = 0;
    std::optional<std::uint64_t> eq_first;
    for (std::uint64_t i = 0; i < cfg.cases; ++i) {
        const gen::CaseSample c = gen::generate_case(cfg, i);
        const Allocation<Rational> a = allocate(c.x, c.schedule);
        const Allocation<Rational> poured = allocate_sequential(c.x, c.schedule);
        bool ok = a.terms == poured.terms && a.sum() == c.x;
        if (ok && c.x < Rational(0)) {
            ok = a.terms[0] == c.x;
            for (std::size_t k = 1; k < a.terms.size(); ++k)
                ok = ok && a.terms[k] == Rational(0);
        }
        if (ok)
            ok = pivot_consistent(c.x, c.schedule, a, classify_pivot(c.x, c.schedule),
                                  Rational(0));
        if (!ok) {
            ++eq_failures;
            if (!eq_first) eq_first = i;
        }
    }
    summary("oracle-equivalence", eq_failures, eq_first);

    // Suite 2: the difference-decomposition identity over constructively
    // dominant pairs.
    std::size_t id_failures = 0;
    std::optional<std::uint64_t> id_first;
    for (std::uint64_t i = 0; i < cfg.cases; ++i) {
        const DominancePair<Rational> pair = gen::generate_dominance_pair(cfg, i);
        const DominanceReport<Rational> report = check_dominance(pair);
        bool ok = report.ok() && report.partial_sums_dominate;
        if (ok) {
            const DiffDecomposition<Rational> d =
                decompose_difference(pair, CheckMode::Unchecked);
            ok = d.identity_holds && d.nonneg_certified && d.total == pair.x1 - pair.x2;
        }
        if (!ok) {
            ++id_failures;
            if (!id_first) id_first = i;
        }
    }
    summary("difference-identity", id_failures, id_first);
    return out;
}

const char* run_op_name(RunOp op) {
    switch (op) {
        case RunOp::Allocate: return "allocate";
        case RunOp::Diff: return "diff";
        case RunOp::Check: return "check";
        case RunOp::SplitInterval: return "split-interval";
        case RunOp::PsiDiff: return "psi-diff";
    }
    return "?";
}

std::vector<std::string> run_outcome_diagnostics(const RunOutcome& outcome) {
    std::vector<std::string> out;
    for (const std::string& line : outcome.records) {
        const Json rec = Json::parse(line);
        if (rec.contains("pass") && !rec["pass"].get<bool>()) {
            if (rec.contains("suite")) {
                std::string msg = "suite " + rec["suite"].get<std::string>() + ": " +
                                  rec["failures"].dump() + " failures";
                if (!rec["first_failure"].is_null())
                    msg += ", first at seed=" + rec["first_failure"]["seed"].dump() +
                           " index=" + rec["first_failure"]["index"].dump();
                out.push_back(msg);
            } else {
                out.push_back(failure_diagnostic(rec));
            }
        }
    }
    return out;
}

}  // namespace waterfall
