#include "waterfall/scenario.hpp"

#include <json.hpp>

#include <initializer_list>

namespace waterfall {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ScenarioParseError(path + ": " + why);
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field \"") + key + "\"");
    return *it;
}

void reject_unknown(const Json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) known = true;
        if (!known) fail(path, "unknown field \"" + item.key() + "\"");
    }
}

std::string expect_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

Rational expect_number(const Json& v, const std::string& path) {
    if (v.is_number())
        fail(path, "bare JSON numbers are not accepted; write the value as a string");
    const std::string token = expect_string(v, path);
    try {
        return parse_rational(token);
    } catch (const NumberFormatError& e) {
        fail(path, e.what());
    }
}

std::vector<Rational> expect_number_array(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of number strings");
    std::vector<Rational> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(expect_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Scenario parse_scenario(const Json& entry, const std::string& path) {
    if (!entry.is_object() || entry.size() != 1)
        fail(path, "expected an object with exactly one tag: "
                   "allocate, diff, split or psi_diff");
    const std::string tag = entry.items().begin().key();
    const Json& body = entry.items().begin().value();
    const std::string bpath = path + "." + tag;
    if (!body.is_object()) fail(bpath, "expected an object");

    if (tag == "allocate") {
        reject_unknown(body, bpath, {"x", "caps"});
        return AllocateScenario{expect_number(member(body, bpath, "x"), bpath + ".x"),
                                expect_number_array(member(body, bpath, "caps"), bpath + ".caps")};
    }
    if (tag == "diff") {
        reject_unknown(body, bpath, {"x1", "caps1", "x2", "caps2", "mode"});
        DiffScenario s;
        s.x1 = expect_number(member(body, bpath, "x1"), bpath + ".x1");
        s.caps1 = expect_number_array(member(body, bpath, "caps1"), bpath + ".caps1");
        s.x2 = expect_number(member(body, bpath, "x2"), bpath + ".x2");
        s.caps2 = expect_number_array(member(body, bpath, "caps2"), bpath + ".caps2");
        const std::string mode = expect_string(member(body, bpath, "mode"), bpath + ".mode");
        if (mode == "checked")
            s.mode = CheckMode::Checked;
        else if (mode == "unchecked")
            s.mode = CheckMode::Unchecked;
        else
            fail(bpath + ".mode", "expected \"checked\" or \"unchecked\"");
        return s;
    }
    if (tag == "split") {
        reject_unknown(body, bpath, {"a", "b", "lengths"});
        return SplitScenario{
            expect_number(member(body, bpath, "a"), bpath + ".a"),
            expect_number(member(body, bpath, "b"), bpath + ".b"),
            expect_number_array(member(body, bpath, "lengths"), bpath + ".lengths")};
    }
    if (tag == "psi_diff") {
        reject_unknown(body, bpath, {"x", "y1", "y2", "psi_at_y1", "psi_at_y2"});
        return PsiDiffScenario{
            expect_number(member(body, bpath, "x"), bpath + ".x"),
            expect_number(member(body, bpath, "y1"), bpath + ".y1"),
            expect_number(member(body, bpath, "y2"), bpath + ".y2"),
            expect_number_array(member(body, bpath, "psi_at_y1"), bpath + ".psi_at_y1"),
            expect_number_array(member(body, bpath, "psi_at_y2"), bpath + ".psi_at_y2")};
    }
    fail(path, "unknown scenario tag \"" + tag + "\"");
}

}  // namespace

ScenarioFile parse_scenario_file(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("$", "expected a JSON object");
    reject_unknown(root, "$", {"version", "numeric_mode", "tolerance", "scenarios"});

    ScenarioFile file;
    file.version = expect_string(member(root, "$", "version"), "$.version");
    if (file.version != kScenarioSchemaVersion)
        fail("$.version", "unsupported version \"" + file.version + "\" (expected \"" +
                              kScenarioSchemaVersion + "\")");

    const std::string mode = expect_string(member(root, "$", "numeric_mode"), "$.numeric_mode");
    if (mode == "exact")
        file.numeric_mode = NumericMode::Exact;
    else if (mode == "float")
        file.numeric_mode = NumericMode::Float;
    else
        fail("$.numeric_mode", "expected \"exact\" or \"float\"");

    if (root.contains("tolerance")) {
        if (file.numeric_mode != NumericMode::Float)
            fail("$.tolerance", "tolerance is only valid in float mode");
        const Rational tol = expect_number(root["tolerance"], "$.tolerance");
        if (tol < Rational(0)) fail("$.tolerance", "tolerance must be non-negative");
        file.tolerance = tol;
    }

    const Json& scenarios = member(root, "$", "scenarios");
    if (!scenarios.is_array()) fail("$.scenarios", "expected an array");
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        file.scenarios.push_back(
            parse_scenario(scenarios[i], "$.scenarios[" + std::to_string(i) + "]"));
    return file;
}

namespace {

Json number_array(const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const Rational& x : xs) arr.push_back(format_rational(x));
    return arr;
}

}  // namespace

std::string serialize_scenario_file(const ScenarioFile& file) {
    Json root;
    root["version"] = file.version;
    root["numeric_mode"] = numeric_mode_name(file.numeric_mode);
    if (file.tolerance) root["tolerance"] = format_rational(*file.tolerance);
    Json scenarios = Json::array();
    for (const Scenario& s : file.scenarios) {
        Json entry;
        if (const auto* a = std::get_if<AllocateScenario>(&s)) {
            entry["allocate"] = {{"x", format_rational(a->x)}, {"caps", number_array(a->caps)}};
        } else if (const auto* d = std::get_if<DiffScenario>(&s)) {
            entry["diff"] = {{"x1", format_rational(d->x1)},
                             {"caps1", number_array(d->caps1)},
                             {"x2", format_rational(d->x2)},
                             {"caps2", number_array(d->caps2)},
                             {"mode", d->mode == CheckMode::Checked ? "checked" : "unchecked"}};
        } else if (const auto* p = std::get_if<SplitScenario>(&s)) {
            entry["split"] = {{"a", format_rational(p->a)},
                              {"b", format_rational(p->b)},
                              {"lengths", number_array(p->lengths)}};
        } else if (const auto* q = std::get_if<PsiDiffScenario>(&s)) {
            entry["psi_diff"] = {{"x", format_rational(q->x)},
                                 {"y1", format_rational(q->y1)},
                                 {"y2", format_rational(q->y2)},
                                 {"psi_at_y1", number_array(q->psi_at_y1)},
                                 {"psi_at_y2", number_array(q->psi_at_y2)}};
        }
        scenarios.push_back(std::move(entry));
    }
    root["scenarios"] = std::move(scenarios);
    return root.dump(2) + "\n";
}

const char* numeric_mode_name(NumericMode mode) {
    return mode == NumericMode::Exact ? "exact" : "float";
}

}  // namespace waterfall
