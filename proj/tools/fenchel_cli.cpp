// fenchel_cli — loads an instance file, dispatches computations and law
// suites, and emits deterministic reports and plot data.
//
// Exit codes: 0 success, 2 validation failure (bad input), 3 law or golden
// failure (some report carries a fail verdict).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fenchel/conjugate.hpp"
#include "fenchel/dualmap.hpp"
#include "fenchel/extfn.hpp"
#include "fenchel/fuzz.hpp"
#include "fenchel/geometry.hpp"
#include "fenchel/group.hpp"
#include "fenchel/instance.hpp"
#include "fenchel/regclose.hpp"
#include "fenchel/report.hpp"

namespace {

using namespace fenchel;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitLawFailure = 3;

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += ids[i];
    }
    return out;
}

std::vector<std::string> attainer_ids(const Carrier& carrier,
                                      const std::vector<std::size_t>& idx) {
    std::vector<std::string> ids;
    ids.reserve(idx.size());
    for (auto i : idx) ids.push_back(carrier.id(i));
    return ids;
}

// Per-run products that golden "expect" blocks can pin.
struct Produced {
    std::map<std::string, ExtReal> values;
    std::map<std::string, std::string> geo_values;
    std::map<std::string, std::vector<std::string>> attainers;
    std::map<std::string, std::string> certificates;
    std::optional<bool> member;
};

void check_expectations(const RunSpec& run, const Produced& got,
                        std::vector<LawReport>& reports) {
    if (!run.expect.present) return;
    const Expect& e = run.expect;
    for (const auto& [key, want] : e.values) {
        auto it = got.values.find(key);
        if (it == got.values.end())
            reports.push_back(LawReport{"expect.value", run.label + " " + key, Relation::Eq,
                                        ExtReal(0), want, Verdict::Fail,
                                        "no output under this key"});
        else
            reports.push_back(checked_report("expect.value", run.label + " " + key,
                                             Relation::Eq, it->second, want));
    }
    for (const auto& [key, want] : e.geo_values) {
        auto it = got.geo_values.find(key);
        const bool ok = it != got.geo_values.end() && it->second == want;
        reports.push_back(equiv_report(
            "expect.geo-value", run.label + " " + key, ok, true,
            "got " + (it == got.geo_values.end() ? std::string("<none>") : it->second) +
                ", want " + want));
    }
    for (const auto& [key, want] : e.attainers) {
        auto it = got.attainers.find(key);
        const bool ok = it != got.attainers.end() && it->second == want;
        reports.push_back(equiv_report(
            "expect.attainers", run.label + " " + key, ok, true,
            "got {" + (it == got.attainers.end() ? std::string() : join_ids(it->second)) +
                "}, want {" + join_ids(want) + "}"));
    }
    for (const auto& [key, want] : e.certificates) {
        auto it = got.certificates.find(key);
        const bool ok = it != got.certificates.end() && it->second == want;
        reports.push_back(equiv_report(
            "expect.certificate", run.label + " " + key, ok, true,
            "got " + (it == got.certificates.end() ? std::string("<none>") : it->second) +
                ", want " + want));
    }
    if (e.member) {
        const bool ok = got.member && *got.member == *e.member;
        reports.push_back(equiv_report("expect.member", run.label, ok, true,
                                       std::string("want ") + (*e.member ? "1" : "0")));
    }
}

// -- per-op executors -------------------------------------------------------

void exec_conjugate(const InstanceFile& inst, const RunSpec& run,
                    std::vector<LawReport>& reports) {
    const ExtFn& f = inst.function(run.f);
    Produced got;
    for (const auto& phi_name : run.phis) {
        const ExtFn& phi = inst.function(phi_name);
        const ConjugateAll all = conjugate_all(f, phi);
        const std::string where = run.label + " phi=" + phi_name;
        const auto ids = attainer_ids(f.carrier(), all.restricted.attainers);
        reports.push_back(equiv_report("conj.formulations", where, all.all_equal(), true));
        reports.push_back(checked_report("conj.value", where, Relation::Value,
                                         all.restricted.value, all.restricted.value,
                                         "attainers = {" + join_ids(ids) + "}"));
        got.values.emplace(phi_name, all.restricted.value);
        got.attainers.emplace(phi_name, ids);
    }
    check_expectations(run, got, reports);
}

void exec_regularize(const InstanceFile& inst, const RunSpec& run,
                     std::vector<LawReport>& reports) {
    const ExtFn& f = inst.function(run.f);
    const TestFamily& F = inst.family(run.family);
    const bool bicon = run.op == "biconjugate";
    const ExtFn reg = bicon ? biconjugate(f, F) : regularize(f, F);
    const char* law = bicon ? "biconjugate.value" : "regularize.value";
    Produced got;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const std::string& id = f.carrier().id(i);
        reports.push_back(checked_report(law, run.label + " @ " + id, Relation::Value,
                                         reg.at(i), reg.at(i)));
        got.values.emplace(id, reg.at(i));
    }
    if (bicon)
        reports.push_back(equiv_report("biconjugate.matches-regularize", run.label,
                                       reg == regularize(f, F), true));
    check_expectations(run, got, reports);
}

void exec_supcl(const InstanceFile& inst, const RunSpec& run,
                std::vector<LawReport>& reports) {
    const ExtFn& f = inst.function(run.f);
    const TestFamily& F = inst.family(run.family);
    const bool member = supcl_member(f, F);
    reports.push_back(checked_report("supcl.member", run.label, Relation::Value,
                                     ExtReal(member ? 1 : 0), ExtReal(member ? 1 : 0)));
    Produced got;
    got.member = member;
    check_expectations(run, got, reports);
}

void exec_infconv(const InstanceFile& inst, const RunSpec& run,
                  std::vector<LawReport>& reports) {
    const GroupSpec& G = inst.group(run.group);
    const ExtFn& f = inst.function(run.f);
    const ExtFn& g = inst.function(run.g);
    const ExtFn conv = inf_convolution(G, f, g);
    Produced got;
    for (std::size_t i = 0; i < conv.size(); ++i) {
        const std::string& id = G.carrier().id(i);
        reports.push_back(checked_report("infconv.value", run.label + " @ " + id,
                                         Relation::Value, conv.at(i), conv.at(i)));
        got.values.emplace(id, conv.at(i));
    }
    for (const auto& coeffs : run.coeff_sets) {
        std::vector<std::string> parts;
        for (const auto& c : coeffs) parts.push_back(c.to_string());
        const std::string where = run.label + " coeffs=(" + join_ids(parts) + ")";
        for (auto& r : check_infconv_formula(G, f, g, coeffs, where))
            reports.push_back(std::move(r));
    }
    check_expectations(run, got, reports);
}

void write_plot_csv(const std::filesystem::path& out_dir, const std::string& label,
                    std::size_t item_index, const CircleGrid& grid, const ExtFn& f,
                    std::size_t base, const ExpConjugateResult& result) {
    std::ofstream out(out_dir / ("plot_" + label + "_" + std::to_string(item_index) + ".csv"),
                      std::ios::binary);
    out << "point,f,conjugate_value,attainer\n";
    const bool even = grid.n() % 2 == 0;
    const std::size_t antipode = (base + grid.n() / 2) % grid.n();
    std::set<std::size_t> attain(result.attainers.begin(), result.attainers.end());
    for (std::size_t y = 0; y < grid.n(); ++y) {
        if (even && y == antipode) continue;
        out << grid.angle(y).decimal() << ',' << f.at(y).to_string() << ','
            << result.value_manifold.decimal() << ',' << (attain.count(y) ? 1 : 0) << '\n';
    }
}

void exec_geometry(const InstanceFile& inst, const RunSpec& run,
                   const std::filesystem::path& out_dir, bool write_plots,
                   std::vector<LawReport>& reports) {
    const GridSpec& grid = inst.grid(run.grid);
    Produced got;
    if (grid.kind == GridSpec::Kind::Circle) {
        const CircleGrid& circle = *grid.circle;
        const ExtFn& f = inst.function(run.f);
        for (std::size_t j = 0; j < run.items.size(); ++j) {
            const GeometryItem& item = run.items[j];
            const std::string where = run.label + " x=" + std::to_string(item.x) +
                                      " x_star=" + item.x_star.to_string();
            const ExpConjugateResult res =
                exp_local_conjugate(circle, f, item.x, item.x_star);
            const auto ids = attainer_ids(circle.carrier(), res.attainers);
            reports.push_back(equiv_report(
                "geo.tangent-manifold-agree", where,
                res.value_tangent == res.value_manifold, true,
                "value = " + res.value_manifold.to_string() + "; attainers = {" +
                    join_ids(ids) + "}"));

            // Rational pairing phi(y) = x_star·(2k/n): the log in units of
            // pi.  Certificates for the base x against it line up exactly
            // with conjugate attainment at x.
            std::vector<ExtReal> phi_vals;
            phi_vals.reserve(circle.n());
            for (std::size_t y = 0; y < circle.n(); ++y)
                phi_vals.emplace_back(item.x_star *
                                      circle_log(circle, item.x, y).pi_part());
            const ExtFn phi(circle.carrier(), std::move(phi_vals));
            const Certificate cert =
                frechet_certificate(circle, f, phi, item.x, item.radius);
            const ConjugateResult conj = conjugate(f, phi, Formulation::Restricted);
            const bool base_attains =
                std::find(conj.attainers.begin(), conj.attainers.end(), item.x) !=
                conj.attainers.end();
            reports.push_back(equiv_report("geo.attain-cert", where,
                                           cert == Certificate::GlobalMin, base_attains,
                                           std::string("certificate = ") + to_string(cert)));

            const std::string key = std::to_string(j);
            got.geo_values.emplace(key, res.value_manifold.to_string());
            got.attainers.emplace(key, ids);
            got.certificates.emplace(key, to_string(cert));
            if (write_plots) write_plot_csv(out_dir, run.label, j, circle, f, item.x, res);
        }
    } else {
        const IntervalGrid& interval = *grid.interval;
        const ExtFn& g = inst.function(run.g);
        const auto brute = discrete_legendre_1d(interval, g, run.slopes, LegendreMethod::Brute);
        const auto fast = discrete_legendre_1d(interval, g, run.slopes, LegendreMethod::Fast);
        reports.push_back(equiv_report("geo.legendre-agree", run.label, brute == fast, true));
        for (std::size_t s = 0; s < run.slopes.size(); ++s) {
            const std::string key = run.slopes[s].to_string();
            reports.push_back(checked_report("geo.legendre.value",
                                             run.label + " slope=" + key, Relation::Value,
                                             fast[s], fast[s]));
            got.values.emplace(key, fast[s]);
        }
    }
    check_expectations(run, got, reports);
}

void exec_laws(const InstanceFile& inst, const RunSpec& run,
               std::vector<LawReport>& reports) {
    std::vector<LawReport> out;
    if (run.op == "laws.algebraic") {
        out = verify_algebraic_laws(inst.function(run.f), inst.function(run.g),
                                    inst.function(run.phi), inst.function(run.psi), run.alpha,
                                    run.beta, run.label);
    } else if (run.op == "laws.analytic" || run.op == "laws.young") {
        std::vector<ExtFn> family;
        if (!run.family.empty()) {
            family = inst.family(run.family).members;
        } else {
            for (const auto& name : run.phis) family.push_back(inst.function(name));
        }
        out = run.op == "laws.analytic"
                  ? verify_analytic_laws(inst.function(run.f), family, run.lambdas,
                                         run.shifts, run.label)
                  : verify_young_laws(inst.function(run.f), family, run.label);
    } else if (run.op == "laws.composition") {
        out = check_composition_rule(inst.function(run.f), inst.carrier_map(run.map),
                                     inst.function(run.phi), run.label);
    } else if (run.op == "laws.closure") {
        out = verify_closure_laws(inst.function(run.f), inst.function(run.g),
                                  inst.family(run.family), inst.family(run.family2),
                                  run.alphas, run.label);
    } else if (run.op == "laws.interplay") {
        out = verify_conjugate_interplay(inst.function(run.f), inst.function(run.g),
                                         inst.family(run.family), inst.function(run.phi),
                                         inst.carrier_map(run.map), run.label);
    } else if (run.op == "laws.midpoint") {
        const GroupSpec& G = inst.group(run.group);
        const ExtFn& fd = inst.function(run.f_on_dual);
        std::map<std::string, ExtReal> f_on_dual;
        for (std::size_t i = 0; i < G.size(); ++i)
            f_on_dual.emplace(G.carrier().id(i), fd.at(i));
        out = midpoint_checks(G, inst.function(run.psi), f_on_dual, run.label);
    }
    for (auto& r : out) reports.push_back(std::move(r));
}

void execute_run(const InstanceFile& inst, const RunSpec& run,
                 const std::filesystem::path& out_dir, bool write_plots,
                 std::vector<LawReport>& reports) {
    if (run.op == "conjugate")
        exec_conjugate(inst, run, reports);
    else if (run.op == "regularize" || run.op == "biconjugate")
        exec_regularize(inst, run, reports);
    else if (run.op == "supcl")
        exec_supcl(inst, run, reports);
    else if (run.op == "infconv")
        exec_infconv(inst, run, reports);
    else if (run.op == "geometry")
        exec_geometry(inst, run, out_dir, write_plots, reports);
    else
        exec_laws(inst, run, reports);
}

// -- fuzz mode --------------------------------------------------------------

void run_fuzz_round(Fuzzer& fuzz, std::size_t round, std::vector<LawReport>& reports) {
    const std::string label = "fuzz" + std::to_string(round);
    const Carrier M = fuzz.carrier(1, 12);
    const ExtFn f = fuzz.function(M, Fuzzer::Profile::Any);
    const ExtFn g = fuzz.function(M, Fuzzer::Profile::Any);
    const ExtFn phi = fuzz.function(M, Fuzzer::Profile::Any);
    const ExtFn psi = fuzz.function(M, Fuzzer::Profile::Any);

    reports.push_back(equiv_report("conj.formulations", label,
                                   conjugate_all(f, phi).all_equal(), true));
    for (auto& r : verify_algebraic_laws(f, g, phi, psi, fuzz.positive_value(),
                                         fuzz.finite_value(), label))
        reports.push_back(std::move(r));
    for (auto& r : verify_young_laws(f, fuzz.family(M, 4, Fuzzer::Profile::Any), label))
        reports.push_back(std::move(r));

    const Carrier N = fuzz.carrier(1, 8);
    const CarrierMap A = fuzz.carrier_map(N, M);
    for (auto& r : check_composition_rule(fuzz.function(N, Fuzzer::Profile::Any), A, phi, label))
        reports.push_back(std::move(r));
}

// -- output -----------------------------------------------------------------

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_csv(const std::vector<LawReport>& reports) {
    std::string out = "law,instance,relation,lhs,rhs,verdict,note\n";
    for (const auto& r : reports) {
        out += csv_quote(r.law) + ',' + csv_quote(r.instance) + ',' + to_string(r.relation) +
               ',' + csv_quote(r.lhs.to_string()) + ',' + csv_quote(r.rhs.to_string()) + ',' +
               to_string(r.verdict) + ',' + csv_quote(r.note) + '\n';
    }
    return out;
}

struct Options {
    std::string instance_path;
    std::string out_dir = ".";
    std::string format = "text";
    std::uint64_t seed = 0;
    std::size_t fuzz = 0;
};

int dispatch(const std::string& subcommand, const Options& opts) {
    InstanceFile inst;
    try {
        inst = load_instance(opts.instance_path);
    } catch (const InstanceError& e) {
        for (const auto& m : e.messages) std::cerr << "error: " << m << '\n';
        return kExitValidation;
    }

    std::vector<const RunSpec*> selected;
    for (const auto& run : inst.runs)
        if (subcommand == "check" || run.op == subcommand) selected.push_back(&run);
    if (selected.empty() && opts.fuzz == 0) {
        std::cerr << "error: no runs in " << opts.instance_path << " match subcommand '"
                  << subcommand << "'\n";
        return kExitValidation;
    }

    const std::filesystem::path out_dir(opts.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << out_dir << '\n';
        return kExitValidation;
    }

    std::vector<LawReport> reports;
    try {
        for (const RunSpec* run : selected)
            execute_run(inst, *run, out_dir, /*write_plots=*/true, reports);
        if (subcommand == "check" && opts.fuzz > 0) {
            Fuzzer fuzz(opts.seed);
            for (std::size_t round = 0; round < opts.fuzz; ++round)
                run_fuzz_round(fuzz, round, reports);
        }
    } catch (const WindowOverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    {
        std::ofstream txt(out_dir / "report.txt", std::ios::binary);
        txt << render_text(reports);
        std::ofstream js(out_dir / "report.json", std::ios::binary);
        js << render_json(reports);
    }
    if (opts.format == "json")
        std::cout << render_json(reports);
    else if (opts.format == "csv")
        std::cout << render_csv(reports);
    else
        std::cout << render_text(reports);

    const ReportSummary summary = summarize(reports);
    return summary.fail == 0 ? kExitOk : kExitLawFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact conjugation toolkit: conjugates, regularization, sup-closure,\n"
        "dual maps, circle geometry, group infimal convolution, and law checks\n"
        "over finite carriers."};
    app.require_subcommand(1);

    Options opts;
    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"conjugate", "Conjugate values and attainers for each bound test function"},
        {"regularize", "Family regularization values"},
        {"biconjugate", "Biconjugate values (validated against regularization)"},
        {"supcl", "Sup-closure membership"},
        {"infconv", "Group infimal convolution and its conjugation formula"},
        {"geometry", "Exp-map conjugates, certificates, Legendre transforms, plot CSV"},
        {"check", "Every run in the instance plus optional fuzzed law rounds"},
    };
    for (const auto& [name, help] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--instance", opts.instance_path, "Instance JSON file")
            ->required();
        sub->add_option("--out", opts.out_dir, "Output directory (default: .)");
        sub->add_option("--format", opts.format, "Stdout format: text|json|csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--seed", opts.seed, "Seed for fuzzed law rounds");
        if (name == "check")
            sub->add_option("--fuzz", opts.fuzz, "Number of fuzzed law rounds to append");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return dispatch(sub, opts);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitValidation;
    }
}
