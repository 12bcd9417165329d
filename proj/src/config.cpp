#include "tietz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "tietz/faber.hpp"

namespace tietz::io {

namespace {

using Block = std::map<std::string, std::string>;

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& message)
{
    throw ConfigError(field + ": " + message);
}

double parse_double(std::string_view text, const std::string& field)
{
    const std::string s = trim(text);
    if (s.empty()) fail(field, "empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) fail(field, "not a finite number: '" + s + "'");
    return v;
}

long parse_integer(std::string_view text, const std::string& field)
{
    const std::string s = trim(text);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) fail(field, "not an integer: '" + s + "'");
    return v;
}

bool parse_bool(std::string_view text, const std::string& field)
{
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(field, "expected true or false, got '" + s + "'");
}

cplx complex_field(std::string_view text, const std::string& field)
{
    try {
        return parse_complex(text);
    } catch (const DomainError& e) {
        fail(field, e.what());
    }
}

std::vector<cplx> complex_list(std::string_view text, const std::string& field)
{
    std::vector<cplx> out;
    for (const auto& tok : split_ws(text)) out.push_back(complex_field(tok, field));
    return out;
}

class BlockReader {
public:
    BlockReader(const Block& block, std::string name) : block_(block), name_(std::move(name)) {}

    std::optional<std::string> take(const std::string& key)
    {
        auto it = block_.find(key);
        if (it == block_.end()) return std::nullopt;
        used_.push_back(key);
        return it->second;
    }
    std::string field(const std::string& key) const { return name_ + "." + key; }
    std::string require(const std::string& key)
    {
        auto v = take(key);
        if (!v) fail(field(key), "missing required key");
        return *v;
    }
    void finish() const
    {
        for (const auto& [key, value] : block_)
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) fail(field(key), "unknown key");
    }

private:
    const Block& block_;
    std::string name_;
    std::vector<std::string> used_;
};

CapSpec read_cap(BlockReader& r, const std::string& prefix)
{
    CapSpec c;
    const std::string kind = r.require(prefix + "kind");
    try {
        c.kind = conformal::parse_map_kind(kind);
    } catch (const DomainError&) {
        fail(r.field(prefix + "kind"), "unknown map kind '" + kind + "'");
    }
    if (c.kind == conformal::MapKind::moebius_composed) {
        if (!prefix.empty()) fail(r.field(prefix + "kind"), "nested moebius-composed maps are not supported");
        const auto coeffs = complex_list(r.require("moebius"), r.field("moebius"));
        if (coeffs.size() != 4) fail(r.field("moebius"), "expected four complex numbers a b c d");
        c.moebius = {coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
        c.inner = std::make_shared<CapSpec>(read_cap(r, "inner."));
        return c;
    }
    c.center = complex_field(r.require(prefix + "center"), r.field(prefix + "center"));
    if (auto v = r.take(prefix + "scale")) c.scale = complex_field(*v, r.field(prefix + "scale"));
    if (c.kind == conformal::MapKind::joukowski_ellipse)
        c.a = complex_field(r.require(prefix + "a"), r.field(prefix + "a"));
    if (c.kind == conformal::MapKind::polynomial_perturbation)
        c.higher = complex_list(r.require(prefix + "coefficients"), r.field(prefix + "coefficients"));
    return c;
}

} // namespace

cplx parse_complex(std::string_view text)
{
    const std::string s = trim(text);
    if (s == "inf") return {std::numeric_limits<double>::infinity(), 0.0};
    const auto comma = s.find(',');
    auto num = [](const std::string& t) {
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
            throw DomainError("not a complex number '" + t + "' (expected re,im)");
        return v;
    };
    if (comma == std::string::npos) return {num(s), 0.0};
    return {num(trim(s.substr(0, comma))), num(trim(s.substr(comma + 1)))};
}

std::string format_complex(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    if (std::isinf(z.real())) return "inf";
    os << z.real() << "," << z.imag();
    return os.str();
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, Block>> blocks;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail("line " + std::to_string(lineno), "malformed block header");
            blocks.emplace_back(trim(std::string_view(t).substr(1, t.size() - 2)), Block{});
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("line " + std::to_string(lineno), "expected key = value");
        if (blocks.empty()) fail("line " + std::to_string(lineno), "key outside of a block");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        auto& block = blocks.back().second;
        if (block.count(key)) fail(blocks.back().first + "." + key, "duplicate key");
        block[key] = value;
    }
    cfg.echo = blocks;

    bool seen_surface = false, seen_target = false, seen_run = false, seen_output = false;
    int cap_index = 0;
    for (const auto& [name, block] : blocks) {
        if (name == "surface") {
            if (seen_surface) fail("surface", "duplicate block");
            seen_surface = true;
            BlockReader r(block, "surface");
            const long genus = parse_integer(r.require("genus"), r.field("genus"));
            if (genus != 0 && genus != 1) fail(r.field("genus"), "only genus 0 (sphere) and 1 (torus) are supported");
            cfg.genus = static_cast<int>(genus);
            cfg.w0 = complex_field(r.require("w0"), r.field("w0"));
            if (std::isinf(cfg.w0.real())) fail(r.field("w0"), "must be finite");
            if (auto v = r.take("q")) {
                const cplx q = complex_field(*v, r.field("q"));
                if (!std::isinf(q.real())) cfg.q = q;
            }
            if (cfg.genus == 1) {
                cfg.tau = complex_field(r.require("tau"), r.field("tau"));
                if (!(cfg.tau.imag() > 0.0)) fail(r.field("tau"), "Im tau must be positive");
                if (!cfg.q) fail(r.field("q"), "the torus needs a finite base point");
            } else if (r.take("tau")) {
                fail(r.field("tau"), "only meaningful for genus 1");
            }
            if (auto v = r.take("margin")) {
                cfg.margin = parse_double(*v, r.field("margin"));
                if (!(cfg.margin >= 0.0 && cfg.margin < 0.5)) fail(r.field("margin"), "must lie in [0, 0.5)");
            }
            if (auto v = r.take("separation")) {
                cfg.separation = parse_double(*v, r.field("separation"));
                if (cfg.separation < 0.0) fail(r.field("separation"), "must be non-negative");
            }
            r.finish();
        } else if (name == "cap") {
            ++cap_index;
            BlockReader r(block, "cap[" + std::to_string(cap_index) + "]");
            cfg.caps.push_back(read_cap(r, ""));
            r.finish();
        } else if (name == "target") {
            if (seen_target) fail("target", "duplicate block");
            seen_target = true;
            BlockReader r(block, "target");
            auto& t = cfg.target;
            t.family = r.require("family");
            if (auto v = r.take("cap")) {
                const long k = parse_integer(*v, r.field("cap"));
                if (k < 1) fail(r.field("cap"), "cap indices start at 1");
                t.cap = static_cast<std::size_t>(k - 1);
            }
            if (t.family == "alpha") {
                t.m = static_cast<int>(parse_integer(r.require("m"), r.field("m")));
                if (t.m < 1) fail(r.field("m"), "must be positive");
            } else if (t.family == "double-pole") {
                if (auto v = r.take("a")) t.a = complex_field(*v, r.field("a"));
                if (auto v = r.take("preimage")) t.preimage = complex_field(*v, r.field("preimage"));
                if (t.a.has_value() == t.preimage.has_value()) fail(r.field("a"), "give exactly one of a and preimage");
                if (t.preimage && !(std::abs(*t.preimage) < 1.0)) fail(r.field("preimage"), "must lie in the unit disk");
            } else if (t.family == "combination") {
                if (auto v = r.take("beta")) t.beta = complex_list(*v, r.field("beta"));
                if (auto v = r.take("gamma")) t.gamma = complex_list(*v, r.field("gamma"));
                if (auto v = r.take("alpha")) {
                    for (const auto& tok : split_ws(*v)) {
                        const auto c1 = tok.find(':');
                        const auto c2 = c1 == std::string::npos ? c1 : tok.find(':', c1 + 1);
                        if (c2 == std::string::npos) fail(r.field("alpha"), "expected entries k:m:re,im");
                        const long k = parse_integer(tok.substr(0, c1), r.field("alpha"));
                        const long m = parse_integer(tok.substr(c1 + 1, c2 - c1 - 1), r.field("alpha"));
                        if (k < 1 || m < 1) fail(r.field("alpha"), "k and m start at 1");
                        t.alpha.push_back({static_cast<std::size_t>(k - 1), static_cast<int>(m),
                                           complex_field(tok.substr(c2 + 1), r.field("alpha"))});
                    }
                }
            } else {
                fail(r.field("family"), "unknown target family '" + t.family + "' (alpha, double-pole, combination)");
            }
            r.finish();
        } else if (name == "run") {
            if (seen_run) fail("run", "duplicate block");
            seen_run = true;
            BlockReader r(block, "run");
            auto& run = cfg.run;
            auto positive_int = [&](const std::string& key, int& out, int min) {
                if (auto v = r.take(key)) {
                    const long x = parse_integer(*v, r.field(key));
                    if (x < min) fail(r.field(key), "must be at least " + std::to_string(min));
                    out = static_cast<int>(x);
                }
            };
            auto positive_double = [&](const std::string& key, double& out) {
                if (auto v = r.take(key)) {
                    out = parse_double(*v, r.field(key));
                    if (!(out > 0.0)) fail(r.field(key), "must be positive");
                }
            };
            bool history_given = false;
            positive_int("order", run.order, 1);
            if (auto v = r.take("history")) {
                history_given = true;
                run.history.clear();
                for (const auto& tok : split_ws(*v)) {
                    const long m = parse_integer(tok, r.field("history"));
                    if (m < 1) fail(r.field("history"), "orders must be positive");
                    run.history.push_back(static_cast<int>(m));
                }
                if (!std::is_sorted(run.history.begin(), run.history.end()) ||
                    std::adjacent_find(run.history.begin(), run.history.end()) != run.history.end())
                    fail(r.field("history"), "orders must be strictly increasing");
            }
            positive_int("boundary_nodes", run.boundary_nodes, 32);
            if (run.boundary_nodes % 2 != 0) fail(r.field("boundary_nodes"), "must be even");
            positive_int("edge_nodes", run.edge_nodes, 32);
            positive_int("contour_nodes", run.contour_nodes, 32);
            positive_int("max_order", run.max_order, 1);
            positive_int("samples", run.samples, 1);
            positive_int("pole_orders", run.pole_orders, 1);
            positive_int("uniform_points", run.uniform_points, 4);
            if (auto v = r.take("radius_factor")) {
                run.radius_factor = parse_double(*v, r.field("radius_factor"));
                if (!(run.radius_factor > 0.0 && run.radius_factor < 1.0)) fail(r.field("radius_factor"), "must lie in (0, 1)");
            }
            if (auto v = r.take("condition_limit")) {
                run.condition_limit = parse_double(*v, r.field("condition_limit"));
                if (!(run.condition_limit >= 1.0)) fail(r.field("condition_limit"), "must be at least 1");
            }
            if (auto v = r.take("residual_tol")) {
                run.residual_tol = parse_double(*v, r.field("residual_tol"));
                if (run.residual_tol < 0.0) fail(r.field("residual_tol"), "must be non-negative");
            }
            if (auto v = r.take("uniform_tol")) {
                run.uniform_tol = parse_double(*v, r.field("uniform_tol"));
                if (run.uniform_tol < 0.0) fail(r.field("uniform_tol"), "must be non-negative");
            }
            positive_double("uniform_distance", run.uniform_distance);
            if (auto v = r.take("strict")) run.strict = parse_bool(*v, r.field("strict"));
            if (auto v = r.take("checks")) run.checks = split_ws(*v);
            if (auto v = r.take("invariance_shift")) run.invariance_shift = complex_field(*v, r.field("invariance_shift"));
            if (auto v = r.take("seed")) {
                const long s = parse_integer(*v, r.field("seed"));
                if (s < 0) fail(r.field("seed"), "must be non-negative");
                run.seed = static_cast<std::uint64_t>(s);
            }
            if (run.order > run.max_order) fail(r.field("order"), "exceeds run.max_order");
            if (!history_given) {
                std::vector<int> h;
                for (int m : run.history)
                    if (m <= run.order) h.push_back(m);
                run.history = h;
            }
            for (int m : run.history)
                if (m > run.order) fail(r.field("history"), "orders must not exceed run.order");
            if (2 * run.max_order > run.contour_nodes) fail(r.field("contour_nodes"), "must be at least 2 * max_order");
            r.finish();
        } else if (name == "output") {
            if (seen_output) fail("output", "duplicate block");
            seen_output = true;
            BlockReader r(block, "output");
            if (auto v = r.take("directory")) cfg.output_directory = *v;
            if (auto v = r.take("formats")) {
                cfg.formats = split_ws(*v);
                for (const auto& f : cfg.formats)
                    if (f != "csv" && f != "json") fail(r.field("formats"), "unknown format '" + f + "'");
            }
            r.finish();
        } else {
            fail(name, "unknown block (surface, cap, target, run, output)");
        }
    }
    if (!seen_surface) fail("surface", "missing block");
    if (!seen_target) fail("target", "missing block");
    if (cfg.caps.empty()) fail("cap", "at least one [cap] block is required");
    if (cfg.target.cap >= cfg.caps.size()) fail("target.cap", "no such cap");
    for (const auto& term : cfg.target.alpha) {
        if (term.cap >= cfg.caps.size()) fail("target.alpha", "no such cap");
        if (term.m > cfg.run.max_order) fail("target.alpha", "order exceeds run.max_order");
    }
    if (cfg.target.family == "combination") {
        if (cfg.target.beta.size() > (cfg.caps.size() > 0 ? cfg.caps.size() - 1 : 0))
            fail("target.beta", "at most n - 1 coefficients");
        if (cfg.target.gamma.size() > static_cast<std::size_t>(cfg.genus)) fail("target.gamma", "at most genus coefficients");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

conformal::ConformalMap build_map(const CapSpec& spec)
{
    using conformal::ConformalMap;
    switch (spec.kind) {
    case conformal::MapKind::affine: return ConformalMap::affine(spec.center, spec.scale);
    case conformal::MapKind::joukowski_ellipse: return ConformalMap::joukowski_ellipse(spec.center, spec.scale, spec.a);
    case conformal::MapKind::polynomial_perturbation:
        return ConformalMap::polynomial_perturbation(spec.center, spec.scale, spec.higher);
    case conformal::MapKind::moebius_composed: return ConformalMap::moebius_composed(spec.moebius, build_map(*spec.inner));
    }
    throw ConfigError("cap: unknown map kind");
}

surface::SurfaceSpec build_surface(const ExperimentConfig& config)
{
    std::vector<conformal::ConformalMap> maps;
    for (std::size_t k = 0; k < config.caps.size(); ++k) {
        try {
            maps.push_back(build_map(config.caps[k]));
        } catch (const DomainError& e) {
            fail("cap[" + std::to_string(k + 1) + "]", e.what());
        }
    }
    try {
        conformal::CapFamily family(std::move(maps), config.separation);
        if (config.genus == 0) return surface::SurfaceSpec::sphere(std::move(family), config.w0, config.q);
        return surface::SurfaceSpec::torus(config.tau, std::move(family), *config.q, config.w0, config.margin);
    } catch (const DomainError& e) {
        fail("surface", e.what());
    }
}

series::TargetForm build_target(const ExperimentConfig& config, const surface::SurfaceSpec& surface)
{
    const auto& t = config.target;
    if (t.family == "alpha") {
        faber::FaberOptions opts;
        opts.contour_nodes = config.run.contour_nodes;
        opts.radius_factor = config.run.radius_factor;
        opts.max_order = config.run.max_order;
        auto e = faber::faber_tietz_form(surface, t.cap, t.m, opts);
        return {e.form, "alpha", "alpha^" + std::to_string(t.m) + "_" + std::to_string(t.cap + 1)};
    }
    if (t.family == "double-pole") {
        cplx a = t.a ? *t.a : surface.cap(t.cap).evaluate(*t.preimage);
        if (!surface.in_closed_cap(a)) fail("target.a", "the pole must lie strictly inside a cap");
        return series::double_pole_target(a);
    }
    // combination
    OneForm form([](cplx) { return cplx{0.0, 0.0}; });
    for (std::size_t k = 0; k < t.beta.size(); ++k) form = form + t.beta[k] * surface::beta_form(surface, k);
    const auto gammas = surface::gamma_basis(surface);
    for (std::size_t j = 0; j < t.gamma.size(); ++j) form = form + t.gamma[j] * gammas[j];
    if (!t.alpha.empty()) {
        int order = 0;
        for (const auto& term : t.alpha) order = std::max(order, term.m);
        numerics::CMatrix h = numerics::CMatrix::Zero(order, static_cast<Eigen::Index>(surface.cap_count()));
        for (const auto& term : t.alpha) h(term.m - 1, static_cast<Eigen::Index>(term.cap)) += term.value;
        faber::FaberOptions opts;
        opts.contour_nodes = config.run.contour_nodes;
        opts.radius_factor = config.run.radius_factor;
        opts.max_order = config.run.max_order;
        form = form + faber::faber_combination(surface, h, opts);
    }
    return {form, "combination", "finite Faber-Tietz combination"};
}

series::SeriesOptions build_series_options(const ExperimentConfig& config)
{
    series::SeriesOptions o;
    o.boundary_nodes = config.run.boundary_nodes;
    o.edge_nodes = config.run.edge_nodes;
    o.faber.contour_nodes = config.run.contour_nodes;
    o.faber.radius_factor = config.run.radius_factor;
    o.faber.max_order = config.run.max_order;
    o.least_squares.condition_limit = config.run.condition_limit;
    o.history_orders = config.run.history;
    return o;
}

} // namespace tietz::io
