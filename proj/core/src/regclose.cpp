#include "fenchel/regclose.hpp"

#include <cassert>
#include <stdexcept>

#include "fenchel/conjugate.hpp"

namespace fenchel {

TestFamily TestFamily::with_computed_flags(Carrier carrier, std::vector<ExtFn> members,
                                           bool convex_cone) {
    TestFamily F{std::move(carrier), std::move(members), true, true, convex_cone};
    for (const auto& m : F.members) {
        require_same_carrier(F.carrier, m.carrier(), "TestFamily");
        if (!m.real_valued()) F.all_real_valued = false;
        if (!m.lower_extended()) F.all_lower_extended = false;
    }
    return F;
}

bool TestFamily::check_real_valued() const {
    for (const auto& m : members)
        if (!m.real_valued()) return false;
    return true;
}

bool TestFamily::check_lower_extended() const {
    for (const auto& m : members)
        if (!m.lower_extended()) return false;
    return true;
}

bool TestFamily::check_convex_cone(const std::vector<Rational>& coeff_grid) const {
    auto is_member = [&](const ExtFn& h) {
        for (const auto& m : members)
            if (m == h) return true;
        return false;
    };
    for (const auto& a1 : coeff_grid)
        for (const auto& a2 : coeff_grid) {
            if (a1.sign() <= 0 || a2.sign() <= 0) return false;
            for (const auto& m1 : members)
                for (const auto& m2 : members) {
                    auto comb = add_fn_checked(scale_fn(a1, m1), scale_fn(a2, m2));
                    if (!comb || !is_member(*comb)) return false;
                }
        }
    return true;
}

bool TestFamily::included_in(const TestFamily& other) const {
    for (const auto& m : members) {
        bool found = false;
        for (const auto& o : other.members)
            if (m == o) found = true;
        if (!found) return false;
    }
    return true;
}

ExtReal tightest_shift(const ExtFn& f, const ExtFn& phi) {
    return conjugate_value(f, phi);
}

namespace {

// Optimally shifted minorant of f obtained from one member, or nothing when
// no real shift of the member minorizes f.
std::optional<ExtFn> member_contribution(const ExtFn& f, const ExtFn& phi) {
    const ExtReal c = tightest_shift(f, phi);
    if (c.is_pos_inf()) return std::nullopt;
    if (c.is_finite()) return add_const_fn(phi, -c.value());
    // c = -inf: every real shift minorizes f, so the sup over shifts is +inf
    // wherever the member exceeds -inf.
    std::vector<ExtReal> vals;
    vals.reserve(phi.size());
    for (const auto& v : phi.values())
        vals.push_back(v.is_neg_inf() ? ExtReal::neg_inf() : ExtReal::pos_inf());
    return ExtFn(phi.carrier(), std::move(vals));
}

// a == b + c for some real c: the infinity patterns must agree and the
// finite gaps must all share one value.
bool equal_up_to_constant(const ExtFn& a, const ExtFn& b) {
    std::optional<Rational> gap;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const ExtReal& x = a.at(i);
        const ExtReal& y = b.at(i);
        if (!x.is_finite() || !y.is_finite()) {
            if (x.is_pos_inf() != y.is_pos_inf() || x.is_neg_inf() != y.is_neg_inf()) return false;
            continue;
        }
        const Rational d = x.value() - y.value();
        if (!gap)
            gap = d;
        else if (!(*gap == d))
            return false;
    }
    return true;
}

bool in_affine_family(const ExtFn& h, const TestFamily& F) {
    for (const auto& m : F.members)
        if (equal_up_to_constant(h, m)) return true;
    return false;
}

// Adding phi must permute the constant-shift classes of the family: for
// every member mu, both mu + phi and mu - phi stay inside the family up to
// constants (and are defined everywhere).  Without this absorption the
// minorant sets of f and f + phi + c need not correspond and the
// equivariance identity genuinely fails.
bool translation_invariant(const TestFamily& F, const ExtFn& phi) {
    const ExtFn neg_phi = negate_fn(phi);
    for (const auto& mu : F.members) {
        const auto up = add_fn_checked(mu, phi);
        if (!up || !in_affine_family(*up, F)) return false;
        const auto down = add_fn_checked(mu, neg_phi);
        if (!down || !in_affine_family(*down, F)) return false;
    }
    return true;
}

}  // namespace

ExtFn regularize(const ExtFn& f, const TestFamily& F) {
    require_same_carrier(f.carrier(), F.carrier, "regularize");
    std::vector<ExtFn> contributions;
    contributions.reserve(F.members.size());
    for (const auto& phi : F.members)
        if (auto c = member_contribution(f, phi)) contributions.push_back(std::move(*c));
    ExtFn reg = pointwise_extremum(f.carrier(), contributions, ExtremumMode::Sup);
    assert(leq_fn(reg, f));
    return reg;
}

ExtFn biconjugate(const ExtFn& f, const TestFamily& F) {
    require_same_carrier(f.carrier(), F.carrier, "biconjugate");
    if (!F.all_real_valued || !F.check_real_valued())
        throw std::invalid_argument("biconjugate: family must be flagged and real-valued");
    std::vector<ExtFn> terms;
    terms.reserve(F.members.size());
    for (const auto& phi : F.members) {
        const ExtReal c = conjugate_value(f, phi);
        if (c.is_pos_inf()) continue;
        if (c.is_finite())
            terms.push_back(add_const_fn(phi, -c.value()));
        else  // real-valued member: phi(x) - (-inf) = +inf everywhere
            terms.push_back(ExtFn::constant(f.carrier(), ExtReal::pos_inf()));
    }
    ExtFn bicon = pointwise_extremum(f.carrier(), terms, ExtremumMode::Sup);
    if (!(bicon == regularize(f, F)))
        throw std::logic_error("biconjugate: disagreement with regularize");
    return bicon;
}

bool supcl_member(const ExtFn& f, const TestFamily& F) {
    return regularize(f, F) == f;
}

std::vector<LawReport> verify_closure_laws(const ExtFn& f, const ExtFn& g, const TestFamily& F,
                                           const TestFamily& G,
                                           const std::vector<Rational>& alpha_grid,
                                           const std::string& instance) {
    require_same_carrier(f.carrier(), g.carrier(), "verify_closure_laws");
    require_same_carrier(f.carrier(), F.carrier, "verify_closure_laws");
    require_same_carrier(f.carrier(), G.carrier, "verify_closure_laws");
    for (const auto& a : alpha_grid)
        if (a.sign() <= 0)
            throw std::invalid_argument("verify_closure_laws: alpha grid must be positive");

    std::vector<LawReport> out;
    const ExtFn reg_f = regularize(f, F);
    const ExtFn reg_g = regularize(g, F);
    const bool f_le_g = leq_fn(f, g);
    const bool F_in_G = F.included_in(G);

    out.push_back(equiv_report("reg.minorant", instance, leq_fn(reg_f, f), true));

    if (!f_le_g)
        out.push_back(na_report("reg.monotone", instance, "f !<= g"));
    else if (!F_in_G)
        out.push_back(na_report("reg.monotone", instance, "F not included in G"));
    else
        out.push_back(
            equiv_report("reg.monotone", instance, leq_fn(reg_f, regularize(g, G)), true));

    // Shift equivariance reg(f + phi + c) = reg(f) + phi + c for members phi.
    {
        std::vector<Rational> cs{Rational(0)};
        cs.insert(cs.end(), alpha_grid.begin(), alpha_grid.end());
        for (std::size_t k = 0; k < F.members.size(); ++k) {
            const ExtFn& phi = F.members[k];
            const std::string inst = instance + "[member=" + std::to_string(k) + "]";
            const auto fp = add_fn_checked(f, phi);
            const auto rp = add_fn_checked(reg_f, phi);
            if (!fp) {
                out.push_back(na_report("reg.shift-equivariance", inst, "dom(f+phi) != M"));
                continue;
            }
            if (!rp) {
                out.push_back(na_report("reg.shift-equivariance", inst, "dom(reg(f)+phi) != M"));
                continue;
            }
            if (!translation_invariant(F, phi)) {
                out.push_back(na_report("reg.shift-equivariance", inst,
                                        "F +- phi not inside aff(F)"));
                continue;
            }
            bool ok = true;
            for (const auto& c : cs)
                if (!(regularize(add_const_fn(*fp, c), F) == add_const_fn(*rp, c))) ok = false;
            out.push_back(equiv_report("reg.shift-equivariance", inst, ok, true));
        }
    }

    out.push_back(equiv_report("reg.idempotent", instance, supcl_member(reg_f, F), true));
    if (!F_in_G)
        out.push_back(na_report("reg.idempotent-nested", instance, "F not included in G"));
    else
        out.push_back(equiv_report("reg.idempotent-nested", instance,
                                   regularize(regularize(f, G), F) == reg_f, true));

    // Cone laws need a declared-and-verified convex cone of lower-extended
    // members.
    {
        const bool cone_ok = F.is_convex_cone && F.all_lower_extended &&
                             F.check_lower_extended() && F.check_convex_cone(alpha_grid);
        if (!cone_ok) {
            out.push_back(na_report("reg.cone-scaling", instance,
                                    "family is not a verified lower-extended convex cone"));
            out.push_back(na_report("reg.cone-combination", instance,
                                    "family is not a verified lower-extended convex cone"));
        } else {
            bool scaling_ok = true;
            for (const auto& a : alpha_grid)
                if (!(scale_fn(a, reg_f) == regularize(scale_fn(a, f), F))) scaling_ok = false;
            out.push_back(equiv_report("reg.cone-scaling", instance, scaling_ok, true));

            const bool nontrivial =
                !(reg_f == ExtFn::constant(f.carrier(), ExtReal::neg_inf())) &&
                !(reg_g == ExtFn::constant(f.carrier(), ExtReal::neg_inf()));
            if (!nontrivial) {
                out.push_back(na_report("reg.cone-combination", instance,
                                        "a regularization is identically -inf"));
            } else {
                bool lower_ok = true, upper_ok = true;
                for (const auto& a1 : alpha_grid)
                    for (const auto& a2 : alpha_grid) {
                        // Under the hypotheses every piece is lower-extended,
                        // so the pointwise sums below are defined.
                        const auto comb = add_fn_checked(scale_fn(a1, reg_f), scale_fn(a2, reg_g));
                        const auto fg = add_fn_checked(scale_fn(a1, f), scale_fn(a2, g));
                        assert(comb && fg);
                        const ExtFn reg_comb = regularize(*fg, F);
                        if (!leq_fn(*comb, reg_comb)) lower_ok = false;
                        if (!leq_fn(reg_comb, *fg)) upper_ok = false;
                    }
                out.push_back(equiv_report("reg.cone-comb-lower", instance, lower_ok, true));
                out.push_back(equiv_report("reg.cone-comb-upper", instance, upper_ok, true));
            }
        }
    }

    // Hull-operator probes of the sup-closure.
    {
        bool extensive = true;
        for (const auto& m : F.members)
            if (!supcl_member(m, F)) extensive = false;
        out.push_back(equiv_report("hull.extensive", instance, extensive, true));
    }
    if (!F_in_G) {
        out.push_back(na_report("hull.monotone", instance, "F not included in G"));
    } else {
        bool mono = true;
        std::vector<ExtFn> probes = F.members;
        probes.push_back(reg_f);
        for (const auto& h : probes)
            if (supcl_member(h, F) && !supcl_member(h, G)) mono = false;
        out.push_back(equiv_report("hull.monotone", instance, mono, true));
    }
    out.push_back(equiv_report("hull.idempotent", instance,
                               supcl_member(reg_f, F) && supcl_member(reg_g, F), true));
    {
        const ExtFn sup_regs =
            pointwise_extremum(f.carrier(), std::vector<ExtFn>{reg_f, reg_g}, ExtremumMode::Sup);
        out.push_back(
            equiv_report("hull.sup-closed-reg", instance, supcl_member(sup_regs, F), true));
        const ExtFn sup_members = pointwise_extremum(f.carrier(), F.members, ExtremumMode::Sup);
        out.push_back(
            equiv_report("hull.sup-closed-members", instance, supcl_member(sup_members, F), true));
    }
    {
        // Periodic liminf of the member sequence = pointwise min; the zero
        // certificate requires the min to be attained by a single member.
        const ExtFn min_members = pointwise_extremum(f.carrier(), F.members, ExtremumMode::Inf);
        bool cert = false;
        for (const auto& m : F.members)
            if (m == min_members) cert = true;
        if (!cert)
            out.push_back(na_report("hull.liminf-closed", instance,
                                    "pointwise min not attained by a single member"));
        else
            out.push_back(equiv_report("hull.liminf-closed", instance,
                                       supcl_member(min_members, F), true));
    }

    return out;
}

std::vector<LawReport> verify_conjugate_interplay(const ExtFn& f, const ExtFn& g,
                                                  const TestFamily& F, const ExtFn& phi_lsc,
                                                  const CarrierMap& A,
                                                  const std::string& instance) {
    require_same_carrier(f.carrier(), g.carrier(), "verify_conjugate_interplay");
    require_same_carrier(f.carrier(), F.carrier, "verify_conjugate_interplay");
    require_same_carrier(f.carrier(), phi_lsc.carrier(), "verify_conjugate_interplay");
    require_same_carrier(f.carrier(), A.target(), "verify_conjugate_interplay");

    std::vector<LawReport> out;
    const ExtFn reg_f = regularize(f, F);

    // g*(reg_F(f)) = sup over optimally shifted minorants of f of their
    // g-conjugates; per member the sup over feasible shifts collapses to
    // g*(phi) - f*(phi) with the usual infinite-shift conventions.
    {
        std::vector<ExtReal> terms;
        for (const auto& phi : F.members) {
            const ExtReal cf = conjugate_value(f, phi);
            const ExtReal cg = conjugate_value(g, phi);
            if (cf.is_pos_inf()) continue;
            if (cf.is_finite())
                terms.push_back(*sub_checked(cg, cf));
            else
                terms.push_back(cg.is_neg_inf() ? ExtReal::neg_inf() : ExtReal::pos_inf());
        }
        out.push_back(checked_report("interplay.conj-of-reg", instance, Relation::Eq,
                                     conjugate_value(g, reg_f),
                                     extremum(terms, ExtremumMode::Sup)));
    }

    const bool lsc_certified = supcl_member(phi_lsc, F);

    if (!F.all_lower_extended || !F.check_lower_extended())
        out.push_back(na_report("interplay.reg-invariance", instance,
                                "family not lower-extended"));
    else if (!lsc_certified)
        out.push_back(na_report("interplay.reg-invariance", instance,
                                "phi_lsc not certified in the sup-closure"));
    else
        out.push_back(checked_report("interplay.reg-invariance", instance, Relation::Eq,
                                     conjugate_value(reg_f, phi_lsc),
                                     conjugate_value(f, phi_lsc)));

    if (!F.all_real_valued || !F.check_real_valued())
        out.push_back(na_report("interplay.triconjugate", instance, "family not real-valued"));
    else if (!lsc_certified)
        out.push_back(na_report("interplay.triconjugate", instance,
                                "phi_lsc not certified in the sup-closure"));
    else
        out.push_back(checked_report("interplay.triconjugate", instance, Relation::Eq,
                                     conjugate_value(biconjugate(f, F), phi_lsc),
                                     conjugate_value(f, phi_lsc)));

    // Pullback laws along A (source carrier = A.source()).
    std::vector<ExtFn> pulled;
    pulled.reserve(F.members.size());
    for (const auto& m : F.members) pulled.push_back(pullback(A, m));
    const TestFamily F_A =
        TestFamily::with_computed_flags(A.source(), pulled, F.is_convex_cone);
    const ExtFn lhs_pull = pullback(A, reg_f);
    const ExtFn rhs_pull = regularize(pullback(A, f), F_A);
    out.push_back(equiv_report("interplay.pullback-reg", instance, leq_fn(lhs_pull, rhs_pull),
                               true));
    if (A.surjective())
        out.push_back(
            equiv_report("interplay.pullback-reg-surj", instance, lhs_pull == rhs_pull, true));

    // Sup-closure transport: certified members pull back to certified
    // members ...
    {
        bool fwd = true;
        std::vector<ExtFn> probes{reg_f};
        if (lsc_certified) probes.push_back(phi_lsc);
        for (const auto& h : probes)
            if (!supcl_member(pullback(A, h), F_A)) fwd = false;
        out.push_back(equiv_report("interplay.pullback-supcl", instance, fwd, true));
    }
    // ... and every sup-closure member downstairs is the pullback of one
    // upstairs: rebuild the upstairs witness from the tightest shifts of the
    // downstairs function against the pulled-back members.
    {
        const ExtFn g_down = regularize(pullback(A, f), F_A);
        std::vector<ExtFn> lift_terms;
        for (const auto& psi : F.members) {
            const ExtReal d = conjugate_value(g_down, pullback(A, psi));
            if (d.is_pos_inf()) continue;
            if (d.is_finite()) {
                lift_terms.push_back(add_const_fn(psi, -d.value()));
            } else {
                std::vector<ExtReal> vals;
                vals.reserve(psi.size());
                for (const auto& v : psi.values())
                    vals.push_back(v.is_neg_inf() ? ExtReal::neg_inf() : ExtReal::pos_inf());
                lift_terms.push_back(ExtFn(F.carrier, std::move(vals)));
            }
        }
        const ExtFn lifted = pointwise_extremum(F.carrier, lift_terms, ExtremumMode::Sup);
        const bool ok = pullback(A, lifted) == g_down && supcl_member(lifted, F);
        out.push_back(equiv_report("interplay.pullback-supcl-rev", instance, ok, true));
    }

    return out;
}

}  // namespace fenchel
