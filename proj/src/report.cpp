#include "tietz/report.hpp"

#include <cmath>
#include <map>
#include <set>

namespace tietz::io {

using nlohmann::json;

namespace {

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_array(const std::vector<cplx>& v)
{
    json a = json::array();
    for (const cplx& z : v) a.push_back(pair_of(z));
    return a;
}

std::vector<cplx> complex_vector(const json& a)
{
    std::vector<cplx> out;
    for (const auto& p : a) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return out;
}

const std::map<std::string, int> status_codes{
    {"pass", 0}, {"check-failure", 1}, {"config-error", 2}, {"numerical-failure", 3}};

class Validator {
public:
    explicit Validator(std::vector<std::string>& errors) : errors_(errors) {}

    bool has(const json& obj, const std::string& path, const char* key)
    {
        if (!obj.is_object() || !obj.contains(key)) {
            errors_.push_back(path + "." + key + ": missing");
            return false;
        }
        return true;
    }
    void string(const json& obj, const std::string& path, const char* key)
    {
        if (has(obj, path, key) && !obj[key].is_string()) errors_.push_back(path + "." + key + ": expected string");
    }
    void boolean(const json& obj, const std::string& path, const char* key)
    {
        if (has(obj, path, key) && !obj[key].is_boolean()) errors_.push_back(path + "." + key + ": expected boolean");
    }
    void integer(const json& obj, const std::string& path, const char* key)
    {
        if (has(obj, path, key) && !obj[key].is_number_integer())
            errors_.push_back(path + "." + key + ": expected integer");
    }
    void number(const json& obj, const std::string& path, const char* key)
    {
        if (!has(obj, path, key)) return;
        const auto& v = obj[key];
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            errors_.push_back(path + "." + key + ": expected finite number");
    }
    void complex_list(const json& obj, const std::string& path, const char* key)
    {
        if (!has(obj, path, key)) return;
        const auto& a = obj[key];
        if (!a.is_array()) {
            errors_.push_back(path + "." + key + ": expected array");
            return;
        }
        for (const auto& p : a)
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                errors_.push_back(path + "." + key + ": entries must be [re, im]");
    }

private:
    std::vector<std::string>& errors_;
};

} // namespace

json to_json(const RunReport& r)
{
    json doc;
    doc["tool"] = r.tool;
    doc["version"] = r.version;
    doc["config_path"] = r.config_path;
    doc["config"] = r.config_echo;
    doc["seed"] = r.seed;
    doc["strict"] = r.strict;
    doc["status"] = r.status;
    doc["exit_code"] = r.exit_code;
    doc["message"] = r.message;
    if (r.decomposition) {
        const auto& d = *r.decomposition;
        json dj;
        dj["order"] = d.order;
        dj["epsilon"] = complex_array(d.epsilon);
        dj["epsilon_consistency"] = d.epsilon_consistency;
        dj["c"] = complex_array(d.c);
        dj["d"] = complex_array(d.d);
        dj["residual"] = d.residual;
        dj["condition"] = d.condition;
        dj["flagged"] = d.flagged;
        dj["regularized"] = d.regularized;
        dj["target_norm"] = d.target_norm;
        json h = json::array();
        for (const auto& row : d.history)
            h.push_back({{"M", row.order}, {"l2_residual", row.l2_residual}, {"sup_error", row.sup_error}});
        dj["history"] = h;
        doc["decomposition"] = dj;
    } else {
        doc["decomposition"] = nullptr;
    }
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"id", c.id},
                          {"anchor", c.anchor},
                          {"passed", c.passed},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
    doc["checks"] = checks;
    doc["timings"] = {{"total_seconds", r.total_seconds},
                      {"decomposition_seconds", r.decomposition_seconds},
                      {"checks_seconds", r.checks_seconds}};
    return doc;
}

std::vector<std::string> validate_report(const json& doc)
{
    std::vector<std::string> errors;
    if (!doc.is_object()) return {"report: expected object"};
    Validator v(errors);
    const std::string root = "report";
    v.string(doc, root, "tool");
    v.string(doc, root, "version");
    v.string(doc, root, "config_path");
    if (v.has(doc, root, "config") && !doc["config"].is_object()) errors.push_back("report.config: expected object");
    if (v.has(doc, root, "seed") && !doc["seed"].is_number_unsigned()) errors.push_back("report.seed: expected unsigned");
    v.boolean(doc, root, "strict");
    v.string(doc, root, "status");
    v.integer(doc, root, "exit_code");
    v.string(doc, root, "message");
    if (doc.contains("status") && doc["status"].is_string() && doc.contains("exit_code") &&
        doc["exit_code"].is_number_integer()) {
        auto it = status_codes.find(doc["status"].get<std::string>());
        if (it == status_codes.end())
            errors.push_back("report.status: unknown value");
        else if (it->second != doc["exit_code"].get<int>())
            errors.push_back("report.exit_code: inconsistent with status");
    }
    if (v.has(doc, root, "decomposition") && !doc["decomposition"].is_null()) {
        const auto& d = doc["decomposition"];
        const std::string p = "report.decomposition";
        if (!d.is_object()) {
            errors.push_back(p + ": expected object or null");
        } else {
            v.integer(d, p, "order");
            v.complex_list(d, p, "epsilon");
            v.number(d, p, "epsilon_consistency");
            v.complex_list(d, p, "c");
            v.complex_list(d, p, "d");
            v.number(d, p, "residual");
            v.number(d, p, "condition");
            v.boolean(d, p, "flagged");
            v.boolean(d, p, "regularized");
            v.number(d, p, "target_norm");
            if (v.has(d, p, "history")) {
                if (!d["history"].is_array()) errors.push_back(p + ".history: expected array");
                else
                    for (const auto& row : d["history"]) {
                        v.integer(row, p + ".history[]", "M");
                        v.number(row, p + ".history[]", "l2_residual");
                        v.number(row, p + ".history[]", "sup_error");
                    }
            }
        }
    }
    if (v.has(doc, root, "checks")) {
        if (!doc["checks"].is_array()) {
            errors.push_back("report.checks: expected array");
        } else {
            std::set<std::string> ids;
            for (const auto& c : doc["checks"]) {
                const std::string p = "report.checks[]";
                v.string(c, p, "id");
                v.string(c, p, "anchor");
                v.boolean(c, p, "passed");
                v.number(c, p, "measured");
                v.number(c, p, "threshold");
                v.string(c, p, "detail");
                if (c.contains("id") && c["id"].is_string() && !ids.insert(c["id"].get<std::string>()).second)
                    errors.push_back("report.checks: duplicate id " + c["id"].get<std::string>());
            }
        }
    }
    if (v.has(doc, root, "timings")) {
        const auto& t = doc["timings"];
        v.number(t, "report.timings", "total_seconds");
        v.number(t, "report.timings", "decomposition_seconds");
        v.number(t, "report.timings", "checks_seconds");
    }
    return errors;
}

RunReport report_from_json(const json& doc)
{
    const auto errors = validate_report(doc);
    if (!errors.empty()) throw DomainError("report: " + errors.front());
    RunReport r;
    r.tool = doc["tool"];
    r.version = doc["version"];
    r.config_path = doc["config_path"];
    r.config_echo = doc["config"];
    r.seed = doc["seed"];
    r.strict = doc["strict"];
    r.status = doc["status"];
    r.exit_code = doc["exit_code"];
    r.message = doc["message"];
    if (!doc["decomposition"].is_null()) {
        const auto& dj = doc["decomposition"];
        DecompositionSummary d;
        d.order = dj["order"];
        d.epsilon = complex_vector(dj["epsilon"]);
        d.epsilon_consistency = dj["epsilon_consistency"];
        d.c = complex_vector(dj["c"]);
        d.d = complex_vector(dj["d"]);
        d.residual = dj["residual"];
        d.condition = dj["condition"];
        d.flagged = dj["flagged"];
        d.regularized = dj["regularized"];
        d.target_norm = dj["target_norm"];
        for (const auto& row : dj["history"]) d.history.push_back({row["M"], row["l2_residual"], row["sup_error"]});
        r.decomposition = d;
    }
    for (const auto& c : doc["checks"])
        r.checks.push_back({c["id"], c["anchor"], c["passed"], c["measured"], c["threshold"], c["detail"]});
    r.total_seconds = doc["timings"]["total_seconds"];
    r.decomposition_seconds = doc["timings"]["decomposition_seconds"];
    r.checks_seconds = doc["timings"]["checks_seconds"];
    return r;
}

} // namespace tietz::io
