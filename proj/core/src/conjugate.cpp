#include "fenchel/conjugate.hpp"

#include <cassert>
#include <stdexcept>

namespace fenchel {

namespace {

ExtReal value_def(const ExtFn& f, const ExtFn& phi) {
    std::vector<ExtReal> terms;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (auto d = sub_checked(phi.at(i), f.at(i))) terms.push_back(*d);
    return extremum(terms, ExtremumMode::Sup);
}

ConjugateResult value_restricted(const ExtFn& f, const ExtFn& phi) {
    ConjugateResult res;
    res.formulation = Formulation::Restricted;
    res.value = ExtReal::neg_inf();
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (phi.at(i).is_neg_inf() || f.at(i).is_pos_inf()) continue;
        const ExtReal term = *sub_checked(phi.at(i), f.at(i));
        if (!any || term > res.value) res.value = term;
        any = true;
    }
    if (any) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (phi.at(i).is_neg_inf() || f.at(i).is_pos_inf()) continue;
            if (*sub_checked(phi.at(i), f.at(i)) == res.value) res.attainers.push_back(i);
        }
    }
    return res;
}

// inf { c in R : phi <= f + c }, by per-point feasibility analysis:
// a point with f = -inf forbids every c unless phi = -inf there; a point
// with phi = +inf forbids every c unless f = +inf; points with both finite
// bound c from below by phi - f; the remaining points accept any c.
ExtReal value_shift(const ExtFn& f, const ExtFn& phi) {
    bool infeasible = false;
    std::vector<ExtReal> lower_bounds;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const ExtReal& fv = f.at(i);
        const ExtReal& pv = phi.at(i);
        if (fv.is_neg_inf()) {
            if (!pv.is_neg_inf()) infeasible = true;
            continue;
        }
        if (pv.is_pos_inf()) {
            if (!fv.is_pos_inf()) infeasible = true;
            continue;
        }
        if (fv.is_finite() && pv.is_finite())
            lower_bounds.push_back(ExtReal(pv.value() - fv.value()));
    }
    if (infeasible) return ExtReal::pos_inf();          // inf over the empty set
    if (lower_bounds.empty()) return ExtReal::neg_inf();  // every real c works
    return extremum(lower_bounds, ExtremumMode::Sup);
}

// sup { phi(x) - c : c >= f(x) }, with the best level c = f(x) taken
// analytically; a point with f = -inf admits arbitrarily low levels.
ExtReal value_epigraph(const ExtFn& f, const ExtFn& phi) {
    std::vector<ExtReal> terms;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const ExtReal& fv = f.at(i);
        if (fv.is_pos_inf()) continue;  // no epigraph pairs above this point
        if (fv.is_neg_inf()) {
            terms.push_back(phi.at(i).is_neg_inf() ? ExtReal::neg_inf() : ExtReal::pos_inf());
            continue;
        }
        terms.push_back(*sub_checked(phi.at(i), fv));
    }
    return extremum(terms, ExtremumMode::Sup);
}

std::string idx_pair(std::size_t i, std::size_t j) {
    return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace

ConjugateResult conjugate(const ExtFn& f, const ExtFn& phi, Formulation form) {
    require_same_carrier(f.carrier(), phi.carrier(), "conjugate");
    ConjugateResult restricted = value_restricted(f, phi);
    ConjugateResult res;
    res.formulation = form;
    res.attainers = restricted.attainers;
    switch (form) {
        case Formulation::Def: res.value = value_def(f, phi); break;
        case Formulation::Restricted: res.value = restricted.value; break;
        case Formulation::Shift: res.value = value_shift(f, phi); break;
        case Formulation::Epigraph: res.value = value_epigraph(f, phi); break;
    }
    return res;
}

ConjugateAll conjugate_all(const ExtFn& f, const ExtFn& phi) {
    require_same_carrier(f.carrier(), phi.carrier(), "conjugate_all");
    ConjugateAll all{{value_def(f, phi), ExtReal(), value_shift(f, phi), value_epigraph(f, phi)},
                     value_restricted(f, phi)};
    all.by_formulation[1] = all.restricted.value;
    return all;
}

ExtReal conjugate_value(const ExtFn& f, const ExtFn& phi) {
    require_same_carrier(f.carrier(), phi.carrier(), "conjugate_value");
    return value_restricted(f, phi).value;
}

std::optional<ExtReal> young_gap_with(const ExtReal& fstar, const ExtFn& f, const ExtFn& phi,
                                      std::size_t x) {
    auto s = add_checked(f.at(x), fstar);
    if (!s) return std::nullopt;
    return sub_checked(*s, phi.at(x));
}

std::optional<ExtReal> young_gap(const ExtFn& f, const ExtFn& phi, std::size_t x) {
    return young_gap_with(conjugate_value(f, phi), f, phi, x);
}

std::vector<LawReport> verify_algebraic_laws(const ExtFn& f, const ExtFn& g, const ExtFn& phi,
                                             const ExtFn& psi, const Rational& alpha,
                                             const Rational& beta, const std::string& instance) {
    require_same_carrier(f.carrier(), g.carrier(), "verify_algebraic_laws");
    require_same_carrier(f.carrier(), phi.carrier(), "verify_algebraic_laws");
    require_same_carrier(f.carrier(), psi.carrier(), "verify_algebraic_laws");
    if (alpha.sign() <= 0)
        throw std::invalid_argument("verify_algebraic_laws: alpha must be positive");

    std::vector<LawReport> out;
    const std::size_t n = f.size();
    const ExtReal conj_f_phi = conjugate_value(f, phi);
    const ExtReal conj_f_f = conjugate_value(f, f);

    // Characterization of f*(phi) = -inf: max{-phi, f} identically +inf,
    // equivalently an empty restricted domain.
    {
        const bool lhs = conj_f_phi.is_neg_inf();
        const ExtFn m = max_fn(negate_fn(phi), f);
        bool max_all_inf = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!m.at(i).is_pos_inf()) max_all_inf = false;
        bool rdom_empty = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!phi.at(i).is_neg_inf() && !f.at(i).is_pos_inf()) rdom_empty = false;
        out.push_back(equiv_report("elem.neginf-max", instance, lhs, max_all_inf));
        out.push_back(equiv_report("elem.neginf-rdom", instance, lhs, rdom_empty));
    }

    // f*(f) is 0 when f takes a finite value and -inf otherwise.
    {
        bool has_finite = false;
        for (std::size_t i = 0; i < n; ++i)
            if (f.at(i).is_finite()) has_finite = true;
        out.push_back(checked_report("elem.self-conj", instance, Relation::Eq, conj_f_f,
                                     has_finite ? ExtReal(0) : ExtReal::neg_inf()));
    }

    // Negation symmetries.
    out.push_back(checked_report("elem.symmetry-neg-arg", instance, Relation::Eq,
                                 conjugate_value(negate_fn(f), phi),
                                 conjugate_value(negate_fn(phi), f)));
    out.push_back(checked_report("elem.symmetry-swap", instance, Relation::Eq,
                                 conjugate_value(f, negate_fn(phi)),
                                 conjugate_value(phi, negate_fn(f))));

    // phi <= f  <=>  f*(phi) <= f*(f)  <=>  f*(phi) <= 0.
    {
        const bool ord = leq_fn(phi, f);
        out.push_back(equiv_report("elem.order-equiv-selfconj", instance, ord,
                                   conj_f_phi <= conj_f_f));
        out.push_back(equiv_report("elem.order-equiv-zero", instance, ord,
                                   conj_f_phi <= ExtReal(0)));
    }

    // Positive scaling with shifts:
    //   alpha·f*(phi) + beta = (alpha f)*(alpha phi + beta) = (alpha f - beta)*(alpha phi).
    {
        const ExtReal lhs = *add_checked(scale(alpha, conj_f_phi), ExtReal(beta));
        const ExtFn af = scale_fn(alpha, f);
        const ExtFn aphi = scale_fn(alpha, phi);
        const ExtReal mid = conjugate_value(af, add_const_fn(aphi, beta));
        const ExtReal rhs = conjugate_value(add_const_fn(af, -beta), aphi);
        out.push_back(checked_report("trans.scale-shift-a", instance, Relation::Eq, lhs, mid));
        out.push_back(checked_report("trans.scale-shift-b", instance, Relation::Eq, mid, rhs));
    }

    // Test-function shift: (f - psi)*(phi) = f*(phi + psi)
    // under dom(f - psi) = dom(phi + psi) = M.
    {
        const ExtFn neg_psi = negate_fn(psi);
        const bool dom1 = sum_domains(f, neg_psi).dom.size() == n;
        const bool dom2 = sum_domains(phi, psi).dom.size() == n;
        if (!dom1)
            out.push_back(na_report("trans.arg-shift", instance, "dom(f-psi) != M"));
        else if (!dom2)
            out.push_back(na_report("trans.arg-shift", instance, "dom(phi+psi) != M"));
        else
            out.push_back(checked_report("trans.arg-shift", instance, Relation::Eq,
                                         conjugate_value(*add_fn_checked(f, neg_psi), phi),
                                         conjugate_value(f, *add_fn_checked(phi, psi))));
    }

    // Sum subadditivity: (f+g)*(phi+psi) <= f*(phi) + g*(psi)
    // under dom(f+g) = dom(phi+psi) = M and a defined right-hand side.
    {
        const bool dom1 = sum_domains(f, g).dom.size() == n;
        const bool dom2 = sum_domains(phi, psi).dom.size() == n;
        const auto rhs = add_checked(conj_f_phi, conjugate_value(g, psi));
        if (!dom1)
            out.push_back(na_report("trans.sum-subadd", instance, "dom(f+g) != M"));
        else if (!dom2)
            out.push_back(na_report("trans.sum-subadd", instance, "dom(phi+psi) != M"));
        else if (!rhs)
            out.push_back(na_report("trans.sum-subadd", instance, "f*(phi) + g*(psi) undefined"));
        else
            out.push_back(checked_report("trans.sum-subadd", instance, Relation::Le,
                                         conjugate_value(*add_fn_checked(f, g),
                                                         *add_fn_checked(phi, psi)),
                                         *rhs));
    }

    return out;
}

std::vector<LawReport> verify_analytic_laws(const ExtFn& f, const std::vector<ExtFn>& family,
                                            const std::vector<Rational>& lambda_grid,
                                            const std::vector<Rational>& shifts,
                                            const std::string& instance) {
    for (const auto& m : family)
        require_same_carrier(f.carrier(), m.carrier(), "verify_analytic_laws");
    for (const auto& l : lambda_grid)
        if (!(l > Rational(0) && l < Rational(1)))
            throw std::invalid_argument("verify_analytic_laws: lambda grid must lie in (0,1)");
    for (const auto& e : shifts)
        if (e.sign() < 0)
            throw std::invalid_argument("verify_analytic_laws: shifts must be nonnegative");

    std::vector<LawReport> out;
    if (family.empty()) return out;

    std::vector<ExtReal> fstar;
    fstar.reserve(family.size());
    for (const auto& m : family) fstar.push_back(conjugate_value(f, m));

    // Argument monotonicity on ordered pairs.
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j || !leq_fn(family[j], family[i])) continue;
            out.push_back(checked_report("cont.monotone", instance + idx_pair(i, j), Relation::Ge,
                                         fstar[i], fstar[j]));
        }

    // Sup-norm Lipschitz bound on real-valued pairs.  On a finite carrier the
    // two conjugates are either both finite or equal infinities (an infinite
    // conjugate against a real-valued test function forces f = +inf
    // everywhere, resp. a -inf value of f, which affects both members), so an
    // undefined difference means equal infinities: counted as gap 0, flagged.
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const std::string inst = instance + idx_pair(i, j);
            if (!family[i].real_valued() || !family[j].real_valued()) {
                out.push_back(na_report("cont.lipschitz", inst, "test functions not real-valued"));
                continue;
            }
            const Rational bound = sup_norm(*add_fn_checked(family[i], negate_fn(family[j])));
            const auto diff = sub_checked(fstar[i], fstar[j]);
            if (!diff) {
                out.push_back(checked_report("cont.lipschitz", inst, Relation::Le, ExtReal(0),
                                             ExtReal(bound),
                                             std::string("both conjugates ") +
                                                 (fstar[i].is_neg_inf() ? "-inf" : "+inf") +
                                                 "; gap counted as 0"));
                continue;
            }
            out.push_back(checked_report("cont.lipschitz", inst, Relation::Le, ext_abs(*diff),
                                         ExtReal(bound)));
        }

    // Convexity of phi -> f*(phi) over lower-extended pairs.
    for (const auto& lam : lambda_grid) {
        const Rational co = Rational(1) - lam;
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                const std::string inst =
                    instance + idx_pair(i, j) + "[lambda=" + lam.to_string() + "]";
                if (!family[i].lower_extended() || !family[j].lower_extended()) {
                    out.push_back(
                        na_report("cont.convexity", inst, "test functions not lower-extended"));
                    continue;
                }
                const auto blend =
                    add_fn_checked(scale_fn(lam, family[i]), scale_fn(co, family[j]));
                assert(blend);  // lower-extended summands: no opposite infinities
                const auto rhs = add_checked(scale(lam, fstar[i]), scale(co, fstar[j]));
                if (!rhs) {
                    out.push_back(LawReport{"cont.convexity", inst, Relation::Le, ExtReal(0),
                                            ExtReal(0), Verdict::Fail,
                                            "right-hand side undefined despite hypotheses"});
                    continue;
                }
                out.push_back(checked_report("cont.convexity", inst, Relation::Le,
                                             conjugate_value(f, *blend), *rhs));
            }
    }

    // Exact sup exchange.
    const Carrier& M = f.carrier();
    {
        const ExtFn sup_fam = pointwise_extremum(M, family, ExtremumMode::Sup);
        out.push_back(checked_report("cont.sup-exchange", instance, Relation::Eq,
                                     conjugate_value(f, sup_fam),
                                     extremum(fstar, ExtremumMode::Sup)));
    }

    // Inf / liminf bounds.  The member list is read as one period of a
    // periodic sequence, so its pointwise liminf is the pointwise min.
    const ExtFn inf_fam = pointwise_extremum(M, family, ExtremumMode::Inf);
    const ExtReal conj_inf = conjugate_value(f, inf_fam);
    const ExtReal inf_conj = extremum(fstar, ExtremumMode::Inf);
    out.push_back(checked_report("cont.inf-bound", instance, Relation::Le, conj_inf, inf_conj));
    out.push_back(checked_report("cont.liminf-bound", instance, Relation::Le, conj_inf, inf_conj,
                                 "pointwise liminf of the periodic member sequence"));

    // Per-epsilon equality certificates for the inf bound: a member within
    // eps of the pointwise inf yields inf_i f*(phi_i) <= f*(inf) + eps.
    for (const auto& eps : shifts) {
        const std::string inst = instance + "[eps=" + eps.to_string() + "]";
        const ExtFn inf_eps = add_const_fn(inf_fam, eps);
        bool cert = false;
        for (const auto& m : family)
            if (leq_fn(m, inf_eps)) cert = true;
        if (!cert) {
            out.push_back(na_report("cont.inf-eq-cert", inst,
                                    "no member within eps of the pointwise inf"));
            continue;
        }
        out.push_back(checked_report("cont.inf-eq-cert", inst, Relation::Le, inf_conj,
                                     *add_checked(conj_inf, ExtReal(eps))));
    }

    // Liminf equality under aligned certificates eps_k with liminf eps_k = 0
    // (periodic reading: min eps_k = 0) and phi_k <= liminf + eps_k.
    {
        if (shifts.size() != family.size()) {
            out.push_back(na_report("cont.liminf-eq-cert", instance,
                                    "shift list not aligned with member list"));
        } else {
            bool zero = false, bounded = true;
            for (std::size_t k = 0; k < family.size(); ++k) {
                if (shifts[k].sign() == 0) zero = true;
                if (!leq_fn(family[k], add_const_fn(inf_fam, shifts[k]))) bounded = false;
            }
            if (!zero)
                out.push_back(na_report("cont.liminf-eq-cert", instance,
                                        "liminf of certificate shifts is nonzero"));
            else if (!bounded)
                out.push_back(na_report("cont.liminf-eq-cert", instance,
                                        "some member exceeds liminf + eps_k"));
            else
                out.push_back(checked_report("cont.liminf-eq-cert", instance, Relation::Eq,
                                             conj_inf, inf_conj));
        }
    }

    return out;
}

std::vector<LawReport> verify_young_laws(const ExtFn& f, const std::vector<ExtFn>& family,
                                         const std::string& instance) {
    for (const auto& m : family)
        require_same_carrier(f.carrier(), m.carrier(), "verify_young_laws");

    std::vector<LawReport> out;
    const std::size_t n = f.size();

    std::vector<ConjugateResult> conick;
    conick.reserve(family.size());
    for (const auto& m : family) conick.push_back(conjugate(f, m, Formulation::Restricted));

    for (std::size_t k = 0; k < family.size(); ++k) {
        const ExtFn& phi = family[k];
        const ConjugateResult& c = conick[k];
        const std::string inst = instance + "[phi=" + std::to_string(k) + "]";

        std::vector<bool> is_attainer(n, false);
        for (auto i : c.attainers) is_attainer[i] = true;

        // Gap sign and the gap-zero/attainer equivalence over defined gaps.
        bool have_gap = false;
        ExtReal min_gap = ExtReal::pos_inf();
        bool agree = true;
        std::string mismatch;
        for (std::size_t x = 0; x < n; ++x) {
            const auto gap = young_gap_with(c.value, f, phi, x);
            if (!gap) continue;
            have_gap = true;
            min_gap = ext_min(min_gap, *gap);
            const bool zero = (*gap == ExtReal(0));
            if (zero != is_attainer[x] && mismatch.empty()) {
                agree = false;
                mismatch = "mismatch at " + f.carrier().id(x);
            }
        }
        out.push_back(have_gap
                          ? checked_report("fy.gap-sign", inst, Relation::Ge, min_gap, ExtReal(0))
                          : checked_report("fy.gap-sign", inst, Relation::Ge, ExtReal(0),
                                           ExtReal(0), "no defined gaps"));
        out.push_back(equiv_report("fy.gap-zero-attain", inst, agree, true, mismatch));

        // Dual-side attainment against the supplied family, at defined-gap
        // points: f(x) + f*(phi) = phi(x) holds iff psi -> psi(x) - f*(psi)
        // attains the value f(x) at phi and no family member exceeds it.
        bool dual_agree = true;
        std::string dual_note;
        for (std::size_t x = 0; x < n; ++x) {
            const auto gap = young_gap_with(c.value, f, phi, x);
            if (!gap) continue;
            const bool primal = (*gap == ExtReal(0));
            const auto t_phi = sub_checked(phi.at(x), c.value);
            bool dual = t_phi.has_value() && *t_phi == f.at(x);
            if (dual)
                for (std::size_t m = 0; m < family.size(); ++m) {
                    const auto t = sub_checked(family[m].at(x), conick[m].value);
                    if (t && !(*t <= f.at(x))) dual = false;
                }
            if (primal != dual && dual_note.empty()) {
                dual_agree = false;
                dual_note = "mismatch at " + f.carrier().id(x);
            }
        }
        out.push_back(equiv_report("fy.dual-attain", inst, dual_agree, true, dual_note));
    }
    return out;
}

}  // namespace fenchel
