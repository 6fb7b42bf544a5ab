#include "diracspace/suites.hpp"

#include "diracspace/graded.hpp"
#include "diracspace/lagrangian.hpp"

#include <algorithm>

namespace diracspace {

std::vector<int> random_degrees(Sampler& rng, int m, int top) {
    std::vector<int> out;
    for (int k = 0; k < m; ++k) out.push_back(rng.coin() ? 0 : -static_cast<int>(rng.uniform(0, top - 1)));
    return out;
}

namespace {

template <class Draw>
RelationTally tally(const MultibracketFamily& F, int m, int trials, Sampler& rng, Draw&& draw) {
    RelationTally out;
    for (int t = 0; t < trials; ++t) {
        std::vector<GradedElem> xs;
        for (int deg : random_degrees(rng, m, F.top)) xs.push_back(draw(deg));
        GradedElem res = check_relation(F, m, xs);
        if (!res.is_zero()) {
            ++out.failures;
            if (!out.first) out.first = res;
        }
    }
    return out;
}

} // namespace

RelationTally getzler_relation_tally(const MultibracketFamily& F, int r, int m, int trials, Sampler& rng) {
    return tally(F, m, trials, rng, [&](int deg) { return random_getzler_elem(rng, F.dim, r, deg); });
}

RelationTally observables_relation_tally(const MultibracketFamily& F, const std::vector<HamiltonianDatum>& basis,
                                         int m, int trials, Sampler& rng) {
    return tally(F, m, trials, rng, [&](int deg) { return random_observable(rng, F.dim, F.top, deg, basis); });
}

RelationTally oracle_mismatch_tally(int r, const Form& H, int m, int trials, Sampler& rng) {
    auto F = getzler_family(r, H);
    RelationTally out;
    for (int t = 0; t < trials; ++t) {
        std::vector<GradedElem> xs;
        for (int deg : random_degrees(rng, m, r)) xs.push_back(random_getzler_elem(rng, F.dim, r, deg));
        GradedElem a = F.bracket(xs), b = oracle_multibracket(r, H, xs);
        if (!(a == b)) {
            ++out.failures;
            if (!out.first) {
                GradedElem diff = a + Rat(-1) * b;
                out.first = diff;
            }
        }
    }
    return out;
}

LinSubspace fiber_at(const Presentation& P, const std::vector<Rat>& point) {
    std::vector<SectionEp> at;
    for (auto& g : P.generators()) at.emplace_back(g.X.at(point), g.alpha.at(point));
    return LinSubspace::ep(P.dim(), P.p(), at);
}

namespace {

std::string residual_text(const RelationTally& t) { return t.first ? t.first->str() : "0"; }

CheckRecord relation_record(const std::string& family, int m, std::uint64_t seed, const RelationTally& t) {
    CheckRecord rec{"relation", t.failures == 0, false, {}, {}};
    rec.fields = {{"family", family},       {"arity", long(m)},
                  {"sample_seed", seed}, {"failures", long(t.failures)},
                  {"residual", residual_text(t)}};
    return rec;
}

CheckRecord from_report(const Report& rep, const std::string& name) {
    CheckRecord rec{name, rep.pass, false, {}, rep.witnesses};
    return rec;
}

Presentation need_presentation(const CheckSpec& s) {
    if (!s.presentation) throw std::invalid_argument(s.command + " needs a presentation file (--file)");
    return parse_presentation(*s.presentation);
}

std::vector<Rat> point_for(const CheckSpec& s, int n) {
    if (s.point.empty()) return std::vector<Rat>(n, Rat(0));
    if (static_cast<int>(s.point.size()) != n) throw std::invalid_argument("point must have dim coordinates");
    return s.point;
}

Form form_arg(const std::string& text, int n, int degree) { return parse_form(text, n, degree); }

std::vector<CheckRecord> check_linfty(const CheckSpec& s) {
    std::vector<CheckRecord> out;
    if (s.family == "getzler") {
        Form H = form_arg(s.H, s.dim, s.r + 1);
        GetzlerOptions opts;
        opts.allow_nonclosed = s.allow_nonclosed;
        auto F = getzler_family(s.r, H, opts);
        int top = s.arity_max ? s.arity_max : s.r + 2;
        for (int m = 1; m <= top; ++m) {
            std::uint64_t seed = s.seed + static_cast<std::uint64_t>(m);
            Sampler rng(seed);
            out.push_back(relation_record("getzler", m, seed, getzler_relation_tally(F, s.r, m, s.trials, rng)));
        }
    } else if (s.family == "observables") {
        Presentation P = need_presentation(s);
        auto F = observables_family(P);
        auto basis = hamiltonian_basis(P, 2, 1);
        int top = s.arity_max ? s.arity_max : P.p() + 2;
        for (int m = 1; m <= top; ++m) {
            std::uint64_t seed = s.seed + static_cast<std::uint64_t>(m);
            Sampler rng(seed);
            out.push_back(
                relation_record("observables", m, seed, observables_relation_tally(F, basis, m, s.trials, rng)));
        }
    } else {
        throw std::invalid_argument("unknown family '" + s.family + "' (getzler or observables)");
    }
    return out;
}

std::vector<CheckRecord> check_dirac(const CheckSpec& s) {
    Presentation P = need_presentation(s);
    std::vector<CheckRecord> out;
    out.push_back(from_report(verify_isotropic(P), "isotropic"));
    out.push_back(from_report(verify_involutive(P), "involutive"));
    LinSubspace L = fiber_at(P, point_for(s, P.dim()));
    Classification c = classify(L);
    CheckRecord lag{"lagrangian-at-point", c.lagrangian, false, {{"fiber_dim", long(L.dim())}}, {}};
    if (!c.lagrangian) lag.witnesses.push_back("the fiber at the point is not its own orthogonal");
    out.push_back(lag);
    NambuDiracCheck nd = nambu_dirac_check(L);
    out.push_back({"nambu-iso-weak", nd.iso_weak, true, {}, {}});
    CheckRecord hm{"nambu-maximal", nd.maximal, true, {}, {}};
    if (!nd.maximal) hm.witnesses.push_back("the fiber is not maximal among subspaces with weak Nambu isotropy");
    out.push_back(hm);
    return out;
}

std::vector<CheckRecord> check_morphism(const CheckSpec& s) {
    std::vector<CheckRecord> out;
    Sampler rng(s.seed);
    int n = s.dim;
    auto with_seed = [&](CheckRecord r) {
        r.fields.insert(r.fields.begin(), {"sample_seed", s.seed});
        return r;
    };
    if (s.B) {
        Form H = form_arg(s.H, n, s.r + 1);
        Form B = form_arg(*s.B, n, s.r);
        auto F = getzler_family(s.r, H);
        std::vector<std::vector<GradedElem>> tuples;
        for (int t = 0; t < s.trials; ++t)
            for (int m = 1; m <= F.max_arity; ++m) {
                std::vector<GradedElem> xs;
                for (int deg : random_degrees(rng, m, F.top)) xs.push_back(random_getzler_elem(rng, n, s.r, deg));
                tuples.push_back(xs);
            }
        out.push_back(with_seed(from_report(gauge_intertwining(s.r, H, B, tuples), "gauge-intertwining")));
        return out;
    }
    if (s.lambda) {
        Presentation P = need_presentation(s);
        Rat lambda = Rat::parse(*s.lambda);
        auto F = observables_family(P);
        auto basis = hamiltonian_basis(P, 2, 1);
        std::vector<std::vector<GradedElem>> tuples;
        for (int t = 0; t < s.trials; ++t)
            for (int m = 1; m <= F.max_arity; ++m) {
                std::vector<GradedElem> xs;
                for (int deg : random_degrees(rng, m, F.top))
                    xs.push_back(random_observable(rng, P.dim(), P.p(), deg, basis));
                tuples.push_back(xs);
            }
        out.push_back(with_seed(from_report(lambda_intertwining(P, lambda, tuples), "lambda-intertwining")));
        return out;
    }
    if (!s.sigma) throw std::invalid_argument("check-morphism needs --sigma, --lambda or --B");
    Form sigma = form_arg(*s.sigma, n, 2);
    if (s.prequantize) {
        std::vector<std::pair<Poly, Poly>> pairs;
        for (int t = 0; t < s.trials; ++t) pairs.emplace_back(rng.poly(n, 3, 3), rng.poly(n, 3, 3));
        out.push_back(with_seed(from_report(p1_prequantization(sigma, pairs), "prequantization")));
        return out;
    }
    auto src = twisted_e0_family(sigma);
    auto dst = getzler_family(2, Form(n, 3));
    auto M = canonical_morphism_sigma(sigma, s.allow_nonclosed);
    long fails[4] = {0, 0, 0, 0};
    long ternary_matches = 0, ternary_nonzero = 0;
    std::vector<std::string> wit[4];
    Form ds = d(sigma);
    for (int t = 0; t < s.trials; ++t) {
        Lie2Sample smp{random_e0_elem(rng, n), random_e0_elem(rng, n), random_e0_elem(rng, n), std::nullopt};
        Lie2Residuals res = lie2_residuals(M, src, dst, smp);
        const GradedElem* parts[4] = {&res.chain_map, &res.binary, &res.binary_degree1, &res.ternary};
        for (int k = 0; k < 4; ++k)
            if (!parts[k]->is_zero()) {
                ++fails[k];
                if (wit[k].size() < 3) wit[k].push_back("sample " + std::to_string(t) + ": " + parts[k]->str());
            }
        if (!res.ternary.is_zero()) ++ternary_nonzero;
        if (res.ternary.form.as_poly() == evaluate(ds, {smp.x.X, smp.y.X, smp.z.X})) ++ternary_matches;
    }
    const char* names[4] = {"morphism-chain-map", "morphism-binary", "morphism-binary-degree-1", "morphism-ternary"};
    for (int k = 0; k < 4; ++k) {
        CheckRecord rec{names[k], fails[k] == 0, false, {{"failures", fails[k]}}, wit[k]};
        out.push_back(with_seed(rec));
    }
    if (!ds.is_zero()) {
        CheckRecord rec{"ternary-residual-is-dsigma", ternary_matches == s.trials && ternary_nonzero > 0, false,
                        {{"matches", ternary_matches}, {"nonzero", ternary_nonzero}}, {}};
        out.push_back(with_seed(rec));
    }
    return out;
}

std::vector<CheckRecord> lagrangian_roundtrip(const CheckSpec& s) {
    int p = s.p.value_or(1);
    if (p < 1 || p > s.dim) throw std::invalid_argument("need 1 <= p <= dim");
    Sampler rng(s.seed);
    long bad_trip = 0, bad_class = 0;
    std::vector<std::string> wit_trip, wit_class;
    for (int t = 0; t < s.trials; ++t) {
        LinSubspace L = random_lagrangian(rng, s.dim, p);
        if (!(from_pair(to_pair(L)) == L)) {
            ++bad_trip;
            if (wit_trip.size() < 3) wit_trip.push_back("trial " + std::to_string(t));
        }
        Classification c = classify(L);
        if (!(c.lagrangian && c.lagrangian_by_annihilator)) {
            ++bad_class;
            if (wit_class.size() < 3) wit_class.push_back("trial " + std::to_string(t));
        }
    }
    std::vector<CheckRecord> out;
    out.push_back({"roundtrip", bad_trip == 0, false,
                   {{"sample_seed", s.seed}, {"p", long(p)}, {"failures", bad_trip}}, wit_trip});
    out.push_back({"classify-agreement", bad_class == 0, false,
                   {{"sample_seed", s.seed}, {"p", long(p)}, {"failures", bad_class}}, wit_class});
    return out;
}

std::vector<CheckRecord> multidirac_tiers(const CheckSpec& s) {
    std::vector<LinSubspace> Ls;
    if (s.presentation) {
        Presentation P = need_presentation(s);
        Ls.push_back(fiber_at(P, point_for(s, P.dim())));
    } else {
        Sampler rng(s.seed);
        int p = s.p.value_or(1);
        for (int t = 0; t < s.trials; ++t) Ls.push_back(random_lagrangian(rng, s.dim, p));
    }
    int p = Ls.front().fdeg();
    std::vector<CheckRecord> out;
    for (int r = 1; r <= p; ++r) {
        long bad = 0;
        std::vector<std::string> wit;
        long dim_first = 0;
        for (std::size_t i = 0; i < Ls.size(); ++i) {
            LinSubspace a = multidirac_tier_formula(Ls[i], r), b = perp(Ls[i], r);
            if (i == 0) dim_first = a.dim();
            if (!(a == b)) {
                ++bad;
                if (wit.size() < 3) wit.push_back("subspace " + std::to_string(i) + ": formula dim " +
                                                  std::to_string(a.dim()) + ", perp dim " + std::to_string(b.dim()));
            }
        }
        out.push_back({"tier-formula", bad == 0, false,
                       {{"r", long(r)}, {"subspaces", long(Ls.size())}, {"dim", dim_first}, {"failures", bad}}, wit});
    }
    return out;
}

std::vector<CheckRecord> oracle_compare(const CheckSpec& s) {
    Form H = form_arg(s.H, s.dim, s.r + 1);
    std::vector<CheckRecord> out;
    int top = s.arity_max ? s.arity_max : 5;
    for (int m = 1; m <= top; ++m) {
        std::uint64_t seed = s.seed + static_cast<std::uint64_t>(m);
        Sampler rng(seed);
        RelationTally t = oracle_mismatch_tally(s.r, H, m, s.trials, rng);
        CheckRecord rec{"oracle", t.failures == 0, false, {}, {}};
        rec.fields = {{"pipeline", std::string("derived-bracket")}, {"family", std::string("getzler")},
                      {"arity", long(m)}, {"sample_seed", seed}, {"failures", long(t.failures)},
                      {"residual", residual_text(t)}};
        out.push_back(rec);
    }
    Sampler rng(s.seed);
    CheckRecord facts = from_report(derived_check(s.r, H, "abcdH", rng, s.trials), "derived-facts");
    facts.fields = {{"pipeline", std::string("derived-bracket")}, {"sample_seed", s.seed}};
    out.push_back(facts);
    return out;
}

std::vector<CheckRecord> parse_command(const CheckSpec& s) {
    if (!s.expr) throw std::invalid_argument("parse needs an expression");
    ParseContext ctx{s.dim, s.p};
    Parsed a = parse_expression(*s.expr, ctx);
    CheckRecord rec{"parse", true, false, {}, a.warnings};
    rec.fields = {{"kind", expr_kind(a.value)}, {"value", print_expression(a.value)}};
    return {rec};
}

} // namespace

std::vector<CheckRecord> run_suite(const CheckSpec& spec) {
    if (spec.trials < 0) throw std::invalid_argument("trials must be nonnegative");
    if (spec.dim < 1 || spec.dim > kMaxVars) throw std::invalid_argument("dim out of range");
    std::vector<CheckRecord> recs;
    const std::string& c = spec.command;
    if (c == "check-linfty") recs = check_linfty(spec);
    else if (c == "check-dirac") recs = check_dirac(spec);
    else if (c == "check-morphism") recs = check_morphism(spec);
    else if (c == "lagrangian-roundtrip") recs = lagrangian_roundtrip(spec);
    else if (c == "multidirac-tiers") recs = multidirac_tiers(spec);
    else if (c == "oracle-compare") recs = oracle_compare(spec);
    else if (c == "parse") recs = parse_command(spec);
    else throw std::invalid_argument("unknown command '" + c + "'");
    return recs;
}

bool suite_passed(const std::vector<CheckRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass || r.informational; });
}

} // namespace diracspace
