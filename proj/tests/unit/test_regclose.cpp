#include <doctest.h>

#include <map>
#include <stdexcept>

#include "fenchel/conjugate.hpp"
#include "fenchel/fuzz.hpp"
#include "fenchel/regclose.hpp"
#include "test_util.hpp"

using namespace fenchel;
using testutil::carrier;
using testutil::ext;
using testutil::fn;
using testutil::rat;

namespace {

TestFamily family_of(const Carrier& c, std::vector<ExtFn> members, bool cone = false) {
    return TestFamily::with_computed_flags(c, std::move(members), cone);
}

/// Brute-force regularization oracle, independent of tightest_shift: per
/// member, candidate shifts are the defined finite pointwise differences
/// phi(x) - f(x); feasibility of a shift c means phi - c <= f.  When a
/// feasible candidate exists the largest one is the optimal shift; when no
/// candidate exists at all a single feasibility probe decides between
/// "every shift works" (sup over shifts diverges where phi > -inf) and
/// "no shift works" (no contribution).
ExtFn oracle_regularize(const ExtFn& f, const TestFamily& F) {
    std::vector<ExtFn> minorants;
    for (const ExtFn& phi : F.members) {
        std::vector<Rational> candidates;
        for (std::size_t x = 0; x < f.size(); ++x)
            if (phi.at(x).is_finite() && f.at(x).is_finite())
                candidates.push_back(phi.at(x).value() - f.at(x).value());
        if (!candidates.empty()) {
            Rational best = candidates[0];
            for (const Rational& c : candidates)
                if (c > best) best = c;
            if (leq_fn(add_const_fn(phi, -best), f)) minorants.push_back(add_const_fn(phi, -best));
            continue;  // infeasible best candidate: no shift of phi minorizes f
        }
        // No finite-finite point: feasibility does not depend on the shift.
        if (!leq_fn(phi, f)) continue;
        std::vector<ExtReal> diverged;
        for (const ExtReal& v : phi.values())
            diverged.push_back(v.is_neg_inf() ? ExtReal::neg_inf() : ExtReal::pos_inf());
        minorants.emplace_back(phi.carrier(), std::move(diverged));
    }
    return pointwise_extremum(f.carrier(), minorants, ExtremumMode::Sup);
}

std::vector<LawReport> with_law(const std::vector<LawReport>& reports, const std::string& law) {
    std::vector<LawReport> out;
    for (const auto& r : reports)
        if (r.law == law) out.push_back(r);
    return out;
}

bool has_na_note(const std::vector<LawReport>& reports, const std::string& law,
                 const std::string& note) {
    for (const auto& r : reports)
        if (r.law == law && r.verdict == Verdict::NotApplicable && r.note == note) return true;
    return false;
}

/// Indicator family closed under sums and positive scaling: a verified
/// lower-extended convex cone on {a,b,c}.
TestFamily indicator_cone(const Carrier& M) {
    return family_of(M,
                     {indicator_fn(M, {"a", "b", "c"}), indicator_fn(M, {"a", "b"}),
                      indicator_fn(M, {"b", "c"}), indicator_fn(M, {"b"})},
                     /*cone=*/true);
}

}  // namespace

TEST_SUITE("regclose") {
    TEST_CASE("tightest shift frozen values") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"1", "3"});
        CHECK(tightest_shift(f, f) == ext("0"));
        CHECK(tightest_shift(ExtFn::constant(M, ExtReal::pos_inf()), fn(M, {"0", "4"})) ==
              ExtReal::neg_inf());
        CHECK(tightest_shift(fn(M, {"0", "0"}), fn(M, {"1", "3"})) == ext("3"));
    }

    TEST_CASE("family flags are computed from members") {
        const Carrier M = carrier({"a", "b"});
        const TestFamily real = family_of(M, {fn(M, {"1", "0"})});
        CHECK(real.all_real_valued);
        CHECK(real.all_lower_extended);
        const TestFamily upper = family_of(M, {fn(M, {"1", "inf"})});
        CHECK(!upper.all_real_valued);
        CHECK(upper.all_lower_extended);
        const TestFamily lower = family_of(M, {fn(M, {"1", "-inf"})});
        CHECK(!lower.check_lower_extended());
    }

    TEST_CASE("sampled convex-cone verification") {
        const Carrier M = carrier({"a", "b", "c"});
        const std::vector<Rational> grid = {rat("1/2"), rat("1"), rat("2")};
        CHECK(indicator_cone(M).check_convex_cone(grid));
        // The singleton {constant 1} is not closed under 1*m + 1*m = 2.
        CHECK(!family_of(M, {ExtFn::constant(M, ext("1"))}).check_convex_cone(grid));
    }

    TEST_CASE("member-list inclusion") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn zero = fn(M, {"0", "0"});
        const ExtFn one = fn(M, {"0", "1"});
        CHECK(family_of(M, {zero}).included_in(family_of(M, {one, zero})));
        CHECK(!family_of(M, {one}).included_in(family_of(M, {zero})));
    }

    TEST_CASE("regularize frozen instances") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"0", "5"});
        const TestFamily F0 = family_of(M, {fn(M, {"0", "0"})});
        CHECK(regularize(f, F0) == fn(M, {"0", "0"}));
        // A member function is its own regularization.
        const ExtFn g = fn(M, {"1", "3"});
        CHECK(regularize(g, family_of(M, {g, fn(M, {"0", "0"})})) == g);
        // Empty family: no minorants at all.
        CHECK(regularize(f, family_of(M, {})) == ExtFn::constant(M, ExtReal::neg_inf()));
    }

    TEST_CASE("unbounded-shift convention keeps +inf closed") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn top = ExtFn::constant(M, ExtReal::pos_inf());
        const TestFamily F0 = family_of(M, {fn(M, {"0", "0"})});
        CHECK(regularize(top, F0) == top);
        CHECK(supcl_member(top, F0));
        // Member with a -inf value: the diverging contribution stays -inf there.
        const TestFamily Fm = family_of(M, {fn(M, {"0", "-inf"})});
        CHECK(regularize(top, Fm) == fn(M, {"inf", "-inf"}));
    }

    TEST_CASE("biconjugate frozen instances and validation") {
        const Carrier M = carrier({"a", "b"});
        const TestFamily F0 = family_of(M, {fn(M, {"0", "0"})});
        CHECK(biconjugate(ExtFn::constant(M, ExtReal::pos_inf()), F0) ==
              ExtFn::constant(M, ExtReal::pos_inf()));
        CHECK(biconjugate(fn(M, {"0", "5"}), F0) == fn(M, {"0", "0"}));
        const ExtFn g = fn(M, {"1", "3"});
        CHECK(biconjugate(g, family_of(M, {g})) == g);

        TestFamily bad = family_of(M, {fn(M, {"0", "inf"})});
        CHECK_THROWS_AS(biconjugate(g, bad), std::invalid_argument);
        bad.all_real_valued = true;  // flag lies; the re-verification catches it
        CHECK_THROWS_AS(biconjugate(g, bad), std::invalid_argument);
    }

    TEST_CASE("sup-closure membership frozen instances") {
        const Carrier M = carrier({"a", "b"});
        const TestFamily F0 = family_of(M, {fn(M, {"0", "0"})});
        CHECK(supcl_member(ExtFn::constant(M, ExtReal::neg_inf()), F0));
        CHECK(supcl_member(fn(M, {"0", "0"}), F0));
        CHECK(!supcl_member(fn(M, {"0", "5"}), F0));
    }

    TEST_CASE("regularize matches the brute-force shift oracle") {
        Fuzzer fz(160914);
        for (int round = 0; round < 300; ++round) {
            const Carrier M = fz.carrier(1, 6);
            const ExtFn f = fz.function(M, Fuzzer::Profile::Any);
            const TestFamily F = fz.test_family(M, 4, Fuzzer::Profile::Any);
            CHECK(regularize(f, F) == oracle_regularize(f, F));
        }
    }

    TEST_CASE("biconjugate equals regularize for real-valued families") {
        Fuzzer fz(271828);
        for (int round = 0; round < 300; ++round) {
            const Carrier M = fz.carrier(1, 6);
            const ExtFn f = fz.function(M, Fuzzer::Profile::Any);
            const TestFamily F = fz.test_family(M, 4, Fuzzer::Profile::RealValued);
            CHECK(biconjugate(f, F) == regularize(f, F));
            CHECK(supcl_member(regularize(f, F), F));
        }
    }
}

TEST_SUITE("regclose.laws") {
    TEST_CASE("closure laws on the nested frozen instance") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"2", "5"});
        const TestFamily F = family_of(M, {fn(M, {"0", "0"})});
        const TestFamily G = family_of(M, {fn(M, {"0", "0"}), fn(M, {"0", "1"})});
        REQUIRE(F.included_in(G));
        CHECK(regularize(f, F) == fn(M, {"2", "2"}));
        CHECK(regularize(f, G) == fn(M, {"2", "3"}));
        CHECK(regularize(regularize(f, G), F) == fn(M, {"2", "2"}));

        const auto reports = verify_closure_laws(f, f, F, G, {rat("1")}, "nested");
        for (const char* law : {"reg.minorant", "reg.monotone", "reg.shift-equivariance",
                                "reg.idempotent", "reg.idempotent-nested", "hull.extensive",
                                "hull.monotone", "hull.idempotent", "hull.sup-closed-reg",
                                "hull.sup-closed-members", "hull.liminf-closed"}) {
            const auto found = with_law(reports, law);
            REQUIRE_MESSAGE(!found.empty(), law);
            for (const auto& r : found) CHECK_MESSAGE(r.verdict == Verdict::Pass, law);
        }
        // Cone laws are out of scope without the verified cone flag.
        CHECK(has_na_note(reports, "reg.cone-scaling",
                          "family is not a verified lower-extended convex cone"));
        CHECK(has_na_note(reports, "reg.cone-combination",
                          "family is not a verified lower-extended convex cone"));
    }

    TEST_CASE("cone laws pass on the verified indicator cone") {
        const Carrier M = carrier({"a", "b", "c"});
        const TestFamily F = indicator_cone(M);
        const auto reports = verify_closure_laws(fn(M, {"1", "0", "2"}), fn(M, {"2", "1", "4"}),
                                                 F, F, {rat("1/2"), rat("1"), rat("2")}, "cone");
        for (const char* law :
             {"reg.cone-scaling", "reg.cone-comb-lower", "reg.cone-comb-upper"}) {
            const auto found = with_law(reports, law);
            REQUIRE_MESSAGE(found.size() == 1, law);
            CHECK_MESSAGE(found[0].verdict == Verdict::Pass, law);
        }
    }

    TEST_CASE("not-applicable screens for unmet closure hypotheses") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"3", "0"});
        const ExtFn g = fn(M, {"0", "0"});  // f !<= g
        const TestFamily F = family_of(M, {fn(M, {"0", "1"})});
        const TestFamily G = family_of(M, {fn(M, {"0", "0"})});  // F not in G
        const auto reports = verify_closure_laws(f, g, F, G, {rat("1")}, "na");
        CHECK(has_na_note(reports, "reg.monotone", "f !<= g"));
        CHECK(has_na_note(reports, "reg.idempotent-nested", "F not included in G"));
        CHECK(has_na_note(reports, "hull.monotone", "F not included in G"));

        // Shift equivariance needs dom(f + phi) = M.
        const auto shifted =
            verify_closure_laws(fn(M, {"inf", "0"}), fn(M, {"inf", "0"}),
                                family_of(M, {fn(M, {"-inf", "0"})}),
                                family_of(M, {fn(M, {"-inf", "0"})}), {rat("1")}, "na2");
        CHECK(has_na_note(shifted, "reg.shift-equivariance", "dom(f+phi) != M"));

        // A non-constant member does not keep the family inside its own
        // constant-shift classes under translation, and the equivariance
        // identity genuinely fails there: with H = {(0,1)} and f = (0,0),
        // reg(f + phi) = (0,1) but reg(f) + phi = (-1,1).  The checker must
        // therefore screen it out rather than report a failure.
        const TestFamily H = family_of(M, {fn(M, {"0", "1"})});
        const ExtFn flat = fn(M, {"0", "0"});
        CHECK(regularize(add_fn_checked(flat, H.members[0]).value(), H) == fn(M, {"0", "1"}));
        CHECK(add_fn_checked(regularize(flat, H), H.members[0]).value() == fn(M, {"-1", "1"}));
        const auto inv = verify_closure_laws(flat, flat, H, H, {rat("1")}, "na3");
        CHECK(has_na_note(inv, "reg.shift-equivariance", "F +- phi not inside aff(F)"));

        CHECK_THROWS_AS(verify_closure_laws(f, g, F, G, {rat("0")}, "bad"),
                        std::invalid_argument);
    }

    TEST_CASE("closure laws never fail under fuzz") {
        Fuzzer fz(665544);
        const std::vector<Rational> alphas = {rat("1/2"), rat("1"), rat("2")};
        for (int round = 0; round < 100; ++round) {
            const Carrier M = fz.carrier(1, 5);
            const ExtFn f = fz.function(M, Fuzzer::Profile::Any);
            const ExtFn g = max_fn(f, fz.function(M, Fuzzer::Profile::Any));
            const TestFamily F = fz.test_family(M, 3, Fuzzer::Profile::Any);
            TestFamily G = F;
            G.members.push_back(fz.function(M, Fuzzer::Profile::Any));
            for (const auto& r : verify_closure_laws(f, g, F, G, alphas, "fuzz"))
                CHECK(r.verdict != Verdict::Fail);
        }
    }

    TEST_CASE("interplay laws on the frozen instance") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"0", "5"});
        const ExtFn zero = fn(M, {"0", "0"});
        const TestFamily F = family_of(M, {zero});
        const CarrierMap id(M, M, {{"a", "a"}, {"b", "b"}});
        const auto reports = verify_conjugate_interplay(f, f, F, zero, id, "frozen");
        REQUIRE(reports.size() == 7);
        for (const auto& r : reports) CHECK_MESSAGE(r.verdict == Verdict::Pass, r.law);

        // (reg f)*(0) and f*(0) both evaluate to 0 on this instance.
        const auto inv = with_law(reports, "interplay.reg-invariance");
        REQUIRE(inv.size() == 1);
        CHECK(inv[0].lhs == ext("0"));
        CHECK(inv[0].rhs == ext("0"));
        const auto conj_reg = with_law(reports, "interplay.conj-of-reg");
        REQUIRE(conj_reg.size() == 1);
        CHECK(conj_reg[0].lhs == ext("0"));
    }

    TEST_CASE("interplay hypothesis screens") {
        const Carrier M = carrier({"a", "b"});
        const ExtFn f = fn(M, {"0", "5"});
        const CarrierMap id(M, M, {{"a", "a"}, {"b", "b"}});

        // phi_lsc outside the sup-closure of F.
        const TestFamily F = family_of(M, {fn(M, {"0", "0"})});
        auto reports = verify_conjugate_interplay(f, f, F, fn(M, {"0", "5"}), id, "na1");
        CHECK(has_na_note(reports, "interplay.reg-invariance",
                          "phi_lsc not certified in the sup-closure"));
        CHECK(has_na_note(reports, "interplay.triconjugate",
                          "phi_lsc not certified in the sup-closure"));

        // Family with a -inf member value is not lower-extended; a +inf value
        // is not real-valued.
        const TestFamily Fm = family_of(M, {fn(M, {"0", "-inf"})});
        reports = verify_conjugate_interplay(f, f, Fm, regularize(f, Fm), id, "na2");
        CHECK(has_na_note(reports, "interplay.reg-invariance", "family not lower-extended"));
        const TestFamily Fu = family_of(M, {fn(M, {"0", "inf"})});
        reports = verify_conjugate_interplay(f, f, Fu, regularize(f, Fu), id, "na3");
        CHECK(has_na_note(reports, "interplay.triconjugate", "family not real-valued"));
    }

    TEST_CASE("interplay laws never fail under fuzz") {
        Fuzzer fz(909090);
        for (int round = 0; round < 100; ++round) {
            const Carrier M = fz.carrier(1, 5);
            const Carrier S = fz.carrier(1, 5);
            const ExtFn f = fz.function(M, Fuzzer::Profile::Any);
            const ExtFn g = fz.function(M, Fuzzer::Profile::Any);
            const TestFamily F = fz.test_family(M, 3, Fuzzer::Profile::RealValued);
            // Certified sup-closure member by construction.
            const ExtFn phi_lsc = regularize(fz.function(M, Fuzzer::Profile::Any), F);
            const CarrierMap A = fz.carrier_map(S, M);
            for (const auto& r : verify_conjugate_interplay(f, g, F, phi_lsc, A, "fuzz"))
                CHECK(r.verdict != Verdict::Fail);
        }
    }
}
