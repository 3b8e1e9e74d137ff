#include "fenchel/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fenchel {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

InstanceError::InstanceError(std::vector<std::string> msgs)
    : std::runtime_error(msgs.empty() ? std::string("instance validation failed")
                                      : join(msgs, "\n")),
      messages(std::move(msgs)) {}

const std::vector<std::string>& run_op_vocabulary() {
    static const std::vector<std::string> ops = {
        "conjugate",      "regularize",    "biconjugate", "supcl",
        "infconv",        "geometry",      "laws.algebraic", "laws.analytic",
        "laws.young",     "laws.composition", "laws.closure", "laws.interplay",
        "laws.midpoint",
    };
    return ops;
}

const ExtFn& InstanceFile::function(const std::string& name) const {
    auto it = functions.find(name);
    if (it == functions.end()) throw std::logic_error("unresolved function '" + name + "'");
    return it->second;
}
const TestFamily& InstanceFile::family(const std::string& name) const {
    auto it = families.find(name);
    if (it == families.end()) throw std::logic_error("unresolved family '" + name + "'");
    return it->second;
}
const CarrierMap& InstanceFile::carrier_map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw std::logic_error("unresolved map '" + name + "'");
    return it->second;
}
const GridSpec& InstanceFile::grid(const std::string& name) const {
    auto it = grids.find(name);
    if (it == grids.end()) throw std::logic_error("unresolved grid '" + name + "'");
    return it->second;
}
const GroupSpec& InstanceFile::group(const std::string& name) const {
    auto it = groups.find(name);
    if (it == groups.end()) throw std::logic_error("unresolved group '" + name + "'");
    return it->second;
}

namespace {

class Parser {
public:
    Parser(const json& root, std::string origin) : root_(root), origin_(std::move(origin)) {}

    InstanceFile run() {
        if (!root_.is_object()) {
            err("top level must be a JSON object");
            throw InstanceError(std::move(errors_));
        }
        static const std::set<std::string> sections = {
            "carriers", "functions", "families", "maps", "grids", "groups", "runs",
            "description"};
        for (auto it = root_.begin(); it != root_.end(); ++it)
            if (!sections.count(it.key())) err("unknown top-level section '" + it.key() + "'");

        parse_carriers();
        parse_grids();
        parse_groups();
        parse_functions();
        parse_families();
        parse_maps();
        parse_runs();

        if (!errors_.empty()) throw InstanceError(std::move(errors_));
        return std::move(out_);
    }

private:
    const json& root_;
    std::string origin_;
    std::vector<std::string> errors_;
    InstanceFile out_;

    void err(const std::string& m) { errors_.push_back(origin_ + ": " + m); }

    const json* section(const char* name, json::value_t kind) {
        auto it = root_.find(name);
        if (it == root_.end()) return nullptr;
        if (it->type() != kind) {
            err(std::string("section '") + name + "' has the wrong JSON type");
            return nullptr;
        }
        return &*it;
    }

    // Carrier-name resolution across carriers, groups, and grids.
    struct ResolvedCarrier {
        const Carrier* carrier = nullptr;
        bool is_group = false;
    };
    std::optional<ResolvedCarrier> resolve_carrier(const std::string& name,
                                                   const std::string& context) {
        ResolvedCarrier r;
        int hits = 0;
        if (auto it = out_.carriers.find(name); it != out_.carriers.end()) {
            r.carrier = &it->second;
            ++hits;
        }
        if (auto it = out_.groups.find(name); it != out_.groups.end()) {
            r.carrier = &it->second.carrier();
            r.is_group = true;
            ++hits;
        }
        if (auto it = out_.grids.find(name); it != out_.grids.end()) {
            r.carrier = &it->second.carrier();
            ++hits;
        }
        if (hits == 0) {
            err(context + ": unknown carrier '" + name + "'");
            return std::nullopt;
        }
        if (hits > 1) {
            err(context + ": carrier name '" + name + "' is ambiguous across sections");
            return std::nullopt;
        }
        return r;
    }

    std::optional<Rational> parse_rational(const json& j, const std::string& context) {
        if (!j.is_string()) {
            err(context + ": numeric values must be decimal/rational strings");
            return std::nullopt;
        }
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            err(context + ": " + e.what());
            return std::nullopt;
        }
    }

    std::optional<ExtReal> parse_extreal(const json& j, const std::string& context) {
        if (!j.is_string()) {
            err(context + ": values must be strings (decimals, rationals, or inf literals)");
            return std::nullopt;
        }
        try {
            return ExtReal::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            err(context + ": " + e.what());
            return std::nullopt;
        }
    }

    void parse_carriers() {
        const json* sec = section("carriers", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "carrier '" + it.key() + "'";
            if (!it->is_array()) {
                err(ctx + ": must be an array of point ids");
                continue;
            }
            std::vector<std::string> ids;
            bool ok = true;
            for (const auto& v : *it) {
                if (!v.is_string()) {
                    err(ctx + ": point ids must be strings");
                    ok = false;
                    break;
                }
                ids.push_back(v.get<std::string>());
            }
            if (!ok) continue;
            try {
                out_.carriers.emplace(it.key(), Carrier(std::move(ids)));
            } catch (const std::exception& e) {
                err(ctx + ": " + e.what());
            }
        }
    }

    void parse_grids() {
        const json* sec = section("grids", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "grid '" + it.key() + "'";
            if (!it->is_object()) {
                err(ctx + ": must be an object");
                continue;
            }
            const bool has_circle = it->contains("circle");
            const bool has_interval = it->contains("interval");
            if (has_circle == has_interval) {
                err(ctx + ": must contain exactly one of 'circle' or 'interval'");
                continue;
            }
            GridSpec spec;
            if (has_circle) {
                const json& c = (*it)["circle"];
                if (!c.is_object() || !c.contains("n") || !c["n"].is_number_unsigned()) {
                    err(ctx + ": 'circle' needs an unsigned sample count 'n'");
                    continue;
                }
                try {
                    spec.kind = GridSpec::Kind::Circle;
                    spec.circle.emplace(c["n"].get<std::size_t>());
                } catch (const std::exception& e) {
                    err(ctx + ": " + e.what());
                    continue;
                }
            } else {
                const json& c = (*it)["interval"];
                if (!c.is_object() || !c.contains("points") || !c["points"].is_array()) {
                    err(ctx + ": 'interval' needs a 'points' array");
                    continue;
                }
                std::vector<Rational> pts;
                bool ok = true;
                for (const auto& p : c["points"]) {
                    auto r = parse_rational(p, ctx + " point");
                    if (!r) {
                        ok = false;
                        break;
                    }
                    pts.push_back(*r);
                }
                if (!ok) continue;
                try {
                    spec.kind = GridSpec::Kind::Interval;
                    spec.interval.emplace(std::move(pts));
                } catch (const std::exception& e) {
                    err(ctx + ": " + e.what());
                    continue;
                }
            }
            out_.grids.emplace(it.key(), std::move(spec));
        }
    }

    void parse_groups() {
        const json* sec = section("groups", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "group '" + it.key() + "'";
            if (!it->is_object() || !it->contains("kind") || !(*it)["kind"].is_string()) {
                err(ctx + ": needs a string 'kind'");
                continue;
            }
            const std::string kind = (*it)["kind"].get<std::string>();
            try {
                if (kind == "Zd") {
                    if (!it->contains("d") || !(*it)["d"].is_number_unsigned() ||
                        !it->contains("radius") || !(*it)["radius"].is_number_integer()) {
                        err(ctx + ": Zd needs unsigned 'd' and integer 'radius'");
                        continue;
                    }
                    out_.groups.emplace(it.key(),
                                        GroupSpec::zd((*it)["d"].get<std::size_t>(),
                                                      (*it)["radius"].get<long>()));
                } else if (kind == "Dyadic") {
                    if (!it->contains("depth") || !(*it)["depth"].is_number_unsigned() ||
                        !it->contains("window")) {
                        err(ctx + ": Dyadic needs unsigned 'depth' and a 'window' bound");
                        continue;
                    }
                    auto w = parse_rational((*it)["window"], ctx + " window");
                    if (!w) continue;
                    out_.groups.emplace(it.key(),
                                        GroupSpec::dyadic((*it)["depth"].get<unsigned>(), *w));
                } else {
                    err(ctx + ": unknown kind '" + kind + "' (use Zd or Dyadic)");
                }
            } catch (const std::exception& e) {
                err(ctx + ": " + e.what());
            }
        }
    }

    void parse_functions() {
        const json* sec = section("functions", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "function '" + it.key() + "'";
            if (!it->is_object() || !it->contains("carrier") ||
                !(*it)["carrier"].is_string() || !it->contains("values") ||
                !(*it)["values"].is_object()) {
                err(ctx + ": needs a string 'carrier' and an object 'values'");
                continue;
            }
            auto rc = resolve_carrier((*it)["carrier"].get<std::string>(), ctx);
            if (!rc) continue;
            const Carrier& carrier = *rc->carrier;
            // Functions on group windows default unnamed elements to +inf
            // (the outside-window convention applied inside the window);
            // plain carriers and grids require a total assignment.
            std::vector<ExtReal> vals(carrier.size(),
                                      rc->is_group ? ExtReal::pos_inf() : ExtReal(0));
            std::vector<bool> seen(carrier.size(), false);
            bool ok = true;
            for (auto v = (*it)["values"].begin(); v != (*it)["values"].end(); ++v) {
                if (!carrier.contains(v.key())) {
                    err(ctx + ": value for unknown point '" + v.key() + "'");
                    ok = false;
                    continue;
                }
                auto ev = parse_extreal(*v, ctx + " at '" + v.key() + "'");
                if (!ev) {
                    ok = false;
                    continue;
                }
                const std::size_t i = carrier.index_of(v.key());
                vals[i] = *ev;
                seen[i] = true;
            }
            if (!rc->is_group)
                for (std::size_t i = 0; i < carrier.size(); ++i)
                    if (!seen[i]) {
                        err(ctx + ": missing value at point '" + carrier.id(i) + "'");
                        ok = false;
                    }
            if (!ok) continue;
            out_.functions.emplace(it.key(), ExtFn(carrier, std::move(vals)));
        }
    }

    void parse_families() {
        const json* sec = section("families", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "family '" + it.key() + "'";
            if (!it->is_object() || !it->contains("carrier") ||
                !(*it)["carrier"].is_string() || !it->contains("members") ||
                !(*it)["members"].is_array()) {
                err(ctx + ": needs a string 'carrier' and a 'members' array");
                continue;
            }
            auto rc = resolve_carrier((*it)["carrier"].get<std::string>(), ctx);
            if (!rc) continue;
            std::vector<ExtFn> members;
            bool ok = true;
            for (const auto& m : (*it)["members"]) {
                if (!m.is_string()) {
                    err(ctx + ": members must be function names");
                    ok = false;
                    break;
                }
                auto fit = out_.functions.find(m.get<std::string>());
                if (fit == out_.functions.end()) {
                    err(ctx + ": unknown member function '" + m.get<std::string>() + "'");
                    ok = false;
                    break;
                }
                if (!(fit->second.carrier() == *rc->carrier)) {
                    err(ctx + ": member '" + m.get<std::string>() +
                        "' lives on a different carrier");
                    ok = false;
                    break;
                }
                members.push_back(fit->second);
            }
            if (!ok) continue;
            bool cone = false;
            if (it->contains("convex_cone")) {
                if (!(*it)["convex_cone"].is_boolean()) {
                    err(ctx + ": 'convex_cone' must be a boolean");
                    continue;
                }
                cone = (*it)["convex_cone"].get<bool>();
            }
            TestFamily fam =
                TestFamily::with_computed_flags(*rc->carrier, std::move(members), cone);
            if (it->contains("real_valued")) fam.all_real_valued = (*it)["real_valued"].get<bool>();
            if (it->contains("lower_extended"))
                fam.all_lower_extended = (*it)["lower_extended"].get<bool>();
            out_.families.emplace(it.key(), std::move(fam));
        }
    }

    void parse_maps() {
        const json* sec = section("maps", json::value_t::object);
        if (!sec) return;
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string ctx = "map '" + it.key() + "'";
            if (!it->is_object() || !it->contains("source") || !(*it)["source"].is_string() ||
                !it->contains("target") || !(*it)["target"].is_string() ||
                !it->contains("values") || !(*it)["values"].is_object()) {
                err(ctx + ": needs 'source', 'target', and an object 'values'");
                continue;
            }
            auto src = resolve_carrier((*it)["source"].get<std::string>(), ctx);
            auto tgt = resolve_carrier((*it)["target"].get<std::string>(), ctx);
            if (!src || !tgt) continue;
            std::map<std::string, std::string> assignment;
            bool ok = true;
            for (auto v = (*it)["values"].begin(); v != (*it)["values"].end(); ++v) {
                if (!v->is_string()) {
                    err(ctx + ": image points must be strings");
                    ok = false;
                    break;
                }
                assignment.emplace(v.key(), v->get<std::string>());
            }
            if (!ok) continue;
            try {
                out_.maps.emplace(it.key(), CarrierMap(*src->carrier, *tgt->carrier, assignment));
            } catch (const std::exception& e) {
                err(ctx + ": " + e.what());
            }
        }
    }

    // -- runs ---------------------------------------------------------------

    const ExtFn* run_function(const json& run, const std::string& key, const std::string& ctx,
                              bool required = true) {
        auto it = run.find(key);
        if (it == run.end()) {
            if (required) err(ctx + ": missing function binding '" + key + "'");
            return nullptr;
        }
        if (!it->is_string()) {
            err(ctx + ": binding '" + key + "' must be a function name");
            return nullptr;
        }
        auto fit = out_.functions.find(it->get<std::string>());
        if (fit == out_.functions.end()) {
            err(ctx + ": unknown function '" + it->get<std::string>() + "'");
            return nullptr;
        }
        return &fit->second;
    }

    bool same_carrier(const ExtFn* a, const ExtFn* b, const std::string& ctx,
                      const std::string& what) {
        if (!a || !b) return false;
        if (!(a->carrier() == b->carrier())) {
            err(ctx + ": " + what + " must share one carrier");
            return false;
        }
        return true;
    }

    std::optional<std::vector<Rational>> rational_list(const json& run, const std::string& key,
                                                       const std::string& ctx) {
        auto it = run.find(key);
        if (it == run.end()) return std::nullopt;
        if (!it->is_array()) {
            err(ctx + ": '" + key + "' must be an array of numeric strings");
            return std::nullopt;
        }
        std::vector<Rational> out;
        for (const auto& v : *it) {
            auto r = parse_rational(v, ctx + " " + key);
            if (!r) return std::nullopt;
            out.push_back(*r);
        }
        return out;
    }

    void parse_expect(const json& j, const std::string& ctx, Expect& expect) {
        if (!j.is_object()) {
            err(ctx + ": 'expect' must be an object");
            return;
        }
        expect.present = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            if (key == "values") {
                if (!it->is_object()) {
                    err(ctx + ": expect.values must be an object");
                    continue;
                }
                for (auto v = it->begin(); v != it->end(); ++v) {
                    auto ev = parse_extreal(*v, ctx + " expect.values['" + v.key() + "']");
                    if (ev) expect.values.emplace(v.key(), *ev);
                }
            } else if (key == "geo_values") {
                if (!it->is_object()) {
                    err(ctx + ": expect.geo_values must be an object");
                    continue;
                }
                for (auto v = it->begin(); v != it->end(); ++v) {
                    if (!v->is_string()) {
                        err(ctx + ": expect.geo_values entries must be strings");
                        continue;
                    }
                    expect.geo_values.emplace(v.key(), v->get<std::string>());
                }
            } else if (key == "attainers") {
                if (!it->is_object()) {
                    err(ctx + ": expect.attainers must be an object");
                    continue;
                }
                for (auto v = it->begin(); v != it->end(); ++v) {
                    if (!v->is_array()) {
                        err(ctx + ": expect.attainers entries must be arrays");
                        continue;
                    }
                    std::vector<std::string> ids;
                    for (const auto& s : *v)
                        if (s.is_string()) ids.push_back(s.get<std::string>());
                    expect.attainers.emplace(v.key(), std::move(ids));
                }
            } else if (key == "certificates") {
                if (!it->is_object()) {
                    err(ctx + ": expect.certificates must be an object");
                    continue;
                }
                for (auto v = it->begin(); v != it->end(); ++v)
                    if (v->is_string())
                        expect.certificates.emplace(v.key(), v->get<std::string>());
            } else if (key == "member") {
                if (!it->is_boolean()) {
                    err(ctx + ": expect.member must be a boolean");
                    continue;
                }
                expect.member = it->get<bool>();
            } else {
                err(ctx + ": unknown expect key '" + key + "'");
            }
        }
    }

    void parse_runs() {
        const json* sec = section("runs", json::value_t::array);
        if (!sec) return;
        std::set<std::string> labels;
        for (std::size_t idx = 0; idx < sec->size(); ++idx) {
            const json& run = (*sec)[idx];
            const std::string ctx = "runs[" + std::to_string(idx) + "]";
            if (!run.is_object()) {
                err(ctx + ": must be an object");
                continue;
            }
            if (!run.contains("op") || !run["op"].is_string()) {
                err(ctx + ": missing string 'op'");
                continue;
            }
            RunSpec spec;
            spec.index = idx;
            spec.op = run["op"].get<std::string>();
            const auto& vocab = run_op_vocabulary();
            if (std::find(vocab.begin(), vocab.end(), spec.op) == vocab.end()) {
                err(ctx + ": unknown operation '" + spec.op + "'");
                continue;
            }
            spec.label = "run" + std::to_string(idx);
            if (run.contains("name")) {
                if (!run["name"].is_string()) {
                    err(ctx + ": 'name' must be a string");
                    continue;
                }
                spec.label = run["name"].get<std::string>();
                if (spec.label.empty() ||
                    spec.label.find_first_not_of(
                        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
                        std::string::npos) {
                    err(ctx + ": 'name' must match [A-Za-z0-9_-]+");
                    continue;
                }
            }
            if (!labels.insert(spec.label).second) {
                err(ctx + ": duplicate run name '" + spec.label + "'");
                continue;
            }

            const std::size_t errors_before = errors_.size();
            parse_run_bindings(run, ctx, spec);
            if (run.contains("expect")) parse_expect(run["expect"], ctx, spec.expect);
            if (errors_.size() == errors_before) out_.runs.push_back(std::move(spec));
        }
    }

    void parse_run_bindings(const json& run, const std::string& ctx, RunSpec& spec) {
        const auto bind_name = [&](const char* key) -> std::string {
            return run.contains(key) && run[key].is_string() ? run[key].get<std::string>()
                                                            : std::string();
        };

        if (spec.op == "conjugate") {
            const ExtFn* f = run_function(run, "f", ctx);
            spec.f = bind_name("f");
            if (run.contains("phi")) {
                const ExtFn* phi = run_function(run, "phi", ctx);
                if (phi && f && same_carrier(f, phi, ctx, "f and phi"))
                    spec.phis.push_back(bind_name("phi"));
            }
            if (run.contains("phis")) {
                if (!run["phis"].is_array()) {
                    err(ctx + ": 'phis' must be an array of function names");
                    return;
                }
                for (const auto& p : run["phis"]) {
                    if (!p.is_string()) {
                        err(ctx + ": 'phis' entries must be function names");
                        return;
                    }
                    auto fit = out_.functions.find(p.get<std::string>());
                    if (fit == out_.functions.end()) {
                        err(ctx + ": unknown function '" + p.get<std::string>() + "'");
                        return;
                    }
                    if (f && !(fit->second.carrier() == f->carrier())) {
                        err(ctx + ": test function '" + p.get<std::string>() +
                            "' lives on a different carrier than f");
                        return;
                    }
                    spec.phis.push_back(p.get<std::string>());
                }
            }
            if (spec.phis.empty()) err(ctx + ": needs 'phi' or a nonempty 'phis'");
        } else if (spec.op == "regularize" || spec.op == "biconjugate" || spec.op == "supcl") {
            const ExtFn* f = run_function(run, "f", ctx);
            spec.f = bind_name("f");
            spec.family = resolve_family(run, "family", ctx, f);
        } else if (spec.op == "infconv") {
            const GroupSpec* grp = resolve_group(run, "group", ctx);
            spec.group = bind_name("group");
            const ExtFn* f = run_function(run, "f", ctx);
            const ExtFn* g = run_function(run, "g", ctx);
            spec.f = bind_name("f");
            spec.g = bind_name("g");
            if (grp && f && !(f->carrier() == grp->carrier()))
                err(ctx + ": f must live on the group window");
            if (grp && g && !(g->carrier() == grp->carrier()))
                err(ctx + ": g must live on the group window");
            if (run.contains("coeffs")) {
                if (!run["coeffs"].is_array()) {
                    err(ctx + ": 'coeffs' must be an array of coefficient arrays");
                    return;
                }
                for (const auto& cs : run["coeffs"]) {
                    if (!cs.is_array()) {
                        err(ctx + ": 'coeffs' must be an array of coefficient arrays");
                        return;
                    }
                    std::vector<Rational> coeffs;
                    for (const auto& c : cs) {
                        auto r = parse_rational(c, ctx + " coeffs");
                        if (!r) return;
                        coeffs.push_back(*r);
                    }
                    if (grp && coeffs.size() != grp->hom_count()) {
                        err(ctx + ": coefficient vector length must match the hom basis");
                        return;
                    }
                    spec.coeff_sets.push_back(std::move(coeffs));
                }
            }
        } else if (spec.op == "geometry") {
            parse_geometry_bindings(run, ctx, spec);
        } else if (spec.op == "laws.algebraic") {
            const ExtFn* f = run_function(run, "f", ctx);
            const ExtFn* g = run_function(run, "g", ctx);
            const ExtFn* phi = run_function(run, "phi", ctx);
            const ExtFn* psi = run_function(run, "psi", ctx);
            spec.f = bind_name("f");
            spec.g = bind_name("g");
            spec.phi = bind_name("phi");
            spec.psi = bind_name("psi");
            same_carrier(f, g, ctx, "f and g");
            same_carrier(f, phi, ctx, "f and phi");
            same_carrier(f, psi, ctx, "f and psi");
            if (run.contains("alpha")) {
                auto a = parse_rational(run["alpha"], ctx + " alpha");
                if (!a) return;
                spec.alpha = *a;
            }
            if (spec.alpha.sign() <= 0) err(ctx + ": alpha must be positive");
            if (run.contains("beta")) {
                auto b = parse_rational(run["beta"], ctx + " beta");
                if (!b) return;
                spec.beta = *b;
            }
        } else if (spec.op == "laws.analytic" || spec.op == "laws.young") {
            const ExtFn* f = run_function(run, "f", ctx);
            spec.f = bind_name("f");
            if (run.contains("family")) {
                spec.family = resolve_family(run, "family", ctx, f);
            } else if (run.contains("phis")) {
                if (!run["phis"].is_array()) {
                    err(ctx + ": 'phis' must be an array of function names");
                    return;
                }
                for (const auto& p : run["phis"]) {
                    if (!p.is_string()) {
                        err(ctx + ": 'phis' entries must be function names");
                        return;
                    }
                    auto fit = out_.functions.find(p.get<std::string>());
                    if (fit == out_.functions.end()) {
                        err(ctx + ": unknown function '" + p.get<std::string>() + "'");
                        return;
                    }
                    if (f && !(fit->second.carrier() == f->carrier())) {
                        err(ctx + ": test function '" + p.get<std::string>() +
                            "' lives on a different carrier than f");
                        return;
                    }
                    spec.phis.push_back(p.get<std::string>());
                }
            } else {
                err(ctx + ": needs 'family' or 'phis'");
            }
            if (spec.op == "laws.analytic") {
                if (auto l = rational_list(run, "lambdas", ctx)) spec.lambdas = *l;
                if (spec.lambdas.empty())
                    spec.lambdas = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
                if (auto s = rational_list(run, "shifts", ctx)) spec.shifts = *s;
            }
        } else if (spec.op == "laws.composition") {
            const CarrierMap* A = resolve_map(run, "map", ctx);
            spec.map = bind_name("map");
            const ExtFn* f = run_function(run, "f", ctx);
            const ExtFn* phi = run_function(run, "phi", ctx);
            spec.f = bind_name("f");
            spec.phi = bind_name("phi");
            if (A && f && !(f->carrier() == A->source()))
                err(ctx + ": f must live on the map's source carrier");
            if (A && phi && !(phi->carrier() == A->target()))
                err(ctx + ": phi must live on the map's target carrier");
        } else if (spec.op == "laws.closure") {
            const ExtFn* f = run_function(run, "f", ctx);
            const ExtFn* g = run_function(run, "g", ctx);
            spec.f = bind_name("f");
            spec.g = bind_name("g");
            same_carrier(f, g, ctx, "f and g");
            spec.family = resolve_family(run, "family", ctx, f);
            spec.family2 = resolve_family(run, "family2", ctx, f);
            if (auto a = rational_list(run, "alphas", ctx)) spec.alphas = *a;
            if (spec.alphas.empty()) spec.alphas = {Rational(1, 2), Rational(1), Rational(2)};
            for (const auto& a : spec.alphas)
                if (a.sign() <= 0) err(ctx + ": alphas must be positive");
        } else if (spec.op == "laws.interplay") {
            const ExtFn* f = run_function(run, "f", ctx);
            const ExtFn* g = run_function(run, "g", ctx);
            const ExtFn* phi = run_function(run, "phi", ctx);
            spec.f = bind_name("f");
            spec.g = bind_name("g");
            spec.phi = bind_name("phi");
            same_carrier(f, g, ctx, "f and g");
            same_carrier(f, phi, ctx, "f and phi");
            spec.family = resolve_family(run, "family", ctx, f);
            const CarrierMap* A = resolve_map(run, "map", ctx);
            spec.map = bind_name("map");
            if (A && f && !(A->target() == f->carrier()))
                err(ctx + ": the map must land in f's carrier");
        } else if (spec.op == "laws.midpoint") {
            const GroupSpec* grp = resolve_group(run, "group", ctx);
            spec.group = bind_name("group");
            const ExtFn* psi = run_function(run, "psi", ctx);
            const ExtFn* fd = run_function(run, "f_on_dual", ctx);
            spec.psi = bind_name("psi");
            spec.f_on_dual = bind_name("f_on_dual");
            if (grp && psi && !(psi->carrier() == grp->carrier()))
                err(ctx + ": psi must live on the group window");
            if (grp && fd && !(fd->carrier() == grp->carrier()))
                err(ctx + ": f_on_dual must live on the group window");
        }
    }

    void parse_geometry_bindings(const json& run, const std::string& ctx, RunSpec& spec) {
        auto it = run.find("grid");
        if (it == run.end() || !it->is_string()) {
            err(ctx + ": needs a string 'grid'");
            return;
        }
        auto git = out_.grids.find(it->get<std::string>());
        if (git == out_.grids.end()) {
            err(ctx + ": unknown grid '" + it->get<std::string>() + "'");
            return;
        }
        spec.grid = it->get<std::string>();
        const GridSpec& grid = git->second;
        if (grid.kind == GridSpec::Kind::Circle) {
            const ExtFn* f = run_function(run, "f", ctx);
            spec.f = run.contains("f") && run.at("f").is_string() ? run.at("f").get<std::string>()
                                                                  : std::string();
            if (f && !(f->carrier() == grid.carrier()))
                err(ctx + ": f must live on the grid carrier");
            if (!run.contains("items") || !run["items"].is_array() || run["items"].empty()) {
                err(ctx + ": circle geometry needs a nonempty 'items' array");
                return;
            }
            for (const auto& item : run["items"]) {
                if (!item.is_object() || !item.contains("x") ||
                    !item["x"].is_number_unsigned() || !item.contains("x_star")) {
                    err(ctx + ": items need unsigned 'x' and 'x_star'");
                    return;
                }
                GeometryItem gi;
                gi.x = item["x"].get<std::size_t>();
                if (gi.x >= grid.circle->n()) {
                    err(ctx + ": item base x out of range");
                    return;
                }
                auto xs = parse_rational(item["x_star"], ctx + " x_star");
                if (!xs) return;
                gi.x_star = *xs;
                if (item.contains("radius")) {
                    if (!item["radius"].is_number_unsigned() ||
                        item["radius"].get<std::size_t>() == 0) {
                        err(ctx + ": item radius must be a positive integer");
                        return;
                    }
                    gi.radius = item["radius"].get<std::size_t>();
                }
                spec.items.push_back(std::move(gi));
            }
        } else {
            const ExtFn* g = run_function(run, "g", ctx);
            spec.g = run.contains("g") && run.at("g").is_string() ? run.at("g").get<std::string>()
                                                                  : std::string();
            if (g && !(g->carrier() == grid.carrier()))
                err(ctx + ": g must live on the grid carrier");
            auto slopes = rational_list(run, "slopes", ctx);
            if (!slopes || slopes->empty()) {
                err(ctx + ": interval geometry needs a nonempty 'slopes' array");
                return;
            }
            spec.slopes = *slopes;
        }
    }

    std::string resolve_family(const json& run, const char* key, const std::string& ctx,
                               const ExtFn* f) {
        auto it = run.find(key);
        if (it == run.end() || !it->is_string()) {
            err(ctx + ": missing family binding '" + std::string(key) + "'");
            return {};
        }
        auto fit = out_.families.find(it->get<std::string>());
        if (fit == out_.families.end()) {
            err(ctx + ": unknown family '" + it->get<std::string>() + "'");
            return {};
        }
        if (f && !(fit->second.carrier == f->carrier()))
            err(ctx + ": family '" + it->get<std::string>() + "' lives on a different carrier");
        return it->get<std::string>();
    }

    const GroupSpec* resolve_group(const json& run, const char* key, const std::string& ctx) {
        auto it = run.find(key);
        if (it == run.end() || !it->is_string()) {
            err(ctx + ": missing group binding '" + std::string(key) + "'");
            return nullptr;
        }
        auto git = out_.groups.find(it->get<std::string>());
        if (git == out_.groups.end()) {
            err(ctx + ": unknown group '" + it->get<std::string>() + "'");
            return nullptr;
        }
        return &git->second;
    }

    const CarrierMap* resolve_map(const json& run, const char* key, const std::string& ctx) {
        auto it = run.find(key);
        if (it == run.end() || !it->is_string()) {
            err(ctx + ": missing map binding '" + std::string(key) + "'");
            return nullptr;
        }
        auto mit = out_.maps.find(it->get<std::string>());
        if (mit == out_.maps.end()) {
            err(ctx + ": unknown map '" + it->get<std::string>() + "'");
            return nullptr;
        }
        return &mit->second;
    }
};

}  // namespace

InstanceFile parse_instance(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InstanceError({origin + ": JSON parse error: " + e.what()});
    }
    Parser p(root, origin);
    return p.run();
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceError({path + ": cannot open instance file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path);
}

}  // namespace fenchel
