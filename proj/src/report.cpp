#include "mcat/report.hpp"

#include <algorithm>
#include <sstream>

#include "mcat/analysis.hpp"
#include "mcat/fixtures.hpp"
#include "mcat/models.hpp"

namespace mcat {

using nlohmann::json;

namespace {

json familymap_json(const FamilyMap& s) {
    return json{{"map", s.map}, {"source", s.source}, {"target", s.target}};
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::counterexample: return "counterexample";
        case Outcome::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

// 1 dominates 3 dominates 0
int worse(int a, int b) {
    const auto rank = [](int e) { return e == kExitCounterexample ? 2 : e == kExitBudget ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

}  // namespace

json budget_json(const Budget& b) {
    return json{{"arity", b.max_arity}, {"depth", b.max_depth}, {"enum", b.max_enum}};
}

json arrow_json(const Arrow& f) {
    return json{{"domain", f.sig.domain}, {"codomain", f.sig.codomain}, {"code", f.code}};
}

Arrow arrow_from_json(const json& j) {
    Arrow f;
    f.sig.domain = j.at("domain").get<std::vector<ObjId>>();
    f.sig.codomain = j.at("codomain").get<ObjId>();
    f.code = j.at("code").get<std::vector<std::uint64_t>>();
    return f;
}

json counterexample_json(const Counterexample& ce) {
    json arrows = json::array();
    for (const Arrow& a : ce.arrows) arrows.push_back(arrow_json(a));
    json maps = json::array();
    for (const FamilyMap& s : ce.maps) maps.push_back(familymap_json(s));
    return json{{"law", ce.law},
                {"note", ce.note},
                {"sig", json{{"domain", ce.sig.domain}, {"codomain", ce.sig.codomain}}},
                {"arrows", arrows},
                {"maps", maps},
                {"lhs", arrow_json(ce.lhs)},
                {"rhs", arrow_json(ce.rhs)}};
}

Counterexample counterexample_from_json(const json& j) {
    Counterexample ce;
    ce.law = j.at("law").get<std::string>();
    ce.note = j.at("note").get<std::string>();
    ce.sig.domain = j.at("sig").at("domain").get<std::vector<ObjId>>();
    ce.sig.codomain = j.at("sig").at("codomain").get<ObjId>();
    for (const json& a : j.at("arrows")) ce.arrows.push_back(arrow_from_json(a));
    for (const json& s : j.at("maps")) {
        FamilyMap fm;
        fm.map = s.at("map").get<std::vector<std::size_t>>();
        fm.source = s.at("source").get<std::vector<ObjId>>();
        fm.target = s.at("target").get<std::vector<ObjId>>();
        ce.maps.push_back(std::move(fm));
    }
    ce.lhs = arrow_from_json(j.at("lhs"));
    ce.rhs = arrow_from_json(j.at("rhs"));
    return ce;
}

json report_json(const ValidationReport& rep) {
    json laws = json::array();
    for (const LawResult& lr : rep.laws) {
        json entry{{"law", lr.law},
                   {"outcome", outcome_name(lr.outcome)},
                   {"instances", lr.instances},
                   {"skipped", lr.skipped},
                   {"truncated", lr.truncated}};
        if (lr.witness) entry["witness"] = counterexample_json(*lr.witness);
        laws.push_back(std::move(entry));
    }
    return json{{"schema_version", kSchemaVersion},
                {"kind", "validation"},
                {"backend", rep.backend},
                {"budget", budget_json(rep.budget)},
                {"ok", rep.ok()},
                {"truncated", rep.any_truncated()},
                {"laws", std::move(laws)}};
}

json iso_json(const std::string& title, const IsoReport& rep) {
    return json{{"schema_version", kSchemaVersion},
                {"kind", "iso"},
                {"title", title},
                {"ok", rep.ok},
                {"detail", rep.detail}};
}

int exit_code_of(const ValidationReport& rep) {
    bool budget = false;
    for (const LawResult& lr : rep.laws) {
        if (lr.outcome == Outcome::counterexample) return kExitCounterexample;
        budget = budget || lr.outcome == Outcome::budget_exhausted;
    }
    return budget ? kExitBudget : kExitPass;
}

std::string report_text(const ValidationReport& rep) {
    std::ostringstream os;
    os << rep.backend << "  (arity " << rep.budget.max_arity << ", depth "
       << rep.budget.max_depth << ", enum " << rep.budget.max_enum << ")\n";
    for (const LawResult& lr : rep.laws) {
        os << "  " << lr.law << ": " << outcome_name(lr.outcome) << "  instances="
           << lr.instances << " skipped=" << lr.skipped;
        if (lr.truncated) os << " truncated";
        os << "\n";
        if (lr.witness) {
            os << "    witness: " << lr.witness->note << "\n";
        }
    }
    os << (rep.ok() ? "OK" : "FAIL") << "\n";
    return os.str();
}

// --- suites ----------------------------------------------------------------

namespace {

json doc_head(const std::string& id, const Budget& b) {
    return json{{"schema_version", kSchemaVersion}, {"kind", "theorem"}, {"id", id},
                {"budget", budget_json(b)}};
}

TheoremOutcome thm_char(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("char-equivalences", b);
    json fixtures = json::array();
    for (const std::string name : {"W", "Z2seq", "Z2", "FS2t"}) {
        const ValidationReport rep = sequentiality_report(fixture(name, b), b);
        // the first four laws are the decidable conditions; the closed-form
        // law is informational
        std::size_t passed = 0, failed = 0, open = 0;
        for (std::size_t i = 0; i < 4 && i < rep.laws.size(); ++i) {
            switch (rep.laws[i].outcome) {
                case Outcome::pass: ++passed; break;
                case Outcome::counterexample: ++failed; break;
                case Outcome::budget_exhausted: ++open; break;
            }
        }
        const bool agree = open == 0 && (passed == 4 || failed == 4);
        json entry{{"fixture", name},
                   {"agreement", agree},
                   {"report", report_json(rep)}};
        if (open == 0)
            entry["sequential"] = passed == 4;
        else
            entry["sequential"] = nullptr;
        fixtures.push_back(std::move(entry));
        if (!agree) out.exit_code = worse(out.exit_code, open ? kExitBudget : kExitCounterexample);
    }
    out.doc["fixtures"] = std::move(fixtures);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_cart1(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("cart1-products", b);
    json fixtures = json::array();
    for (const std::string name : {"FS2", "CM2"}) {
        const ValidationReport rep = product_equivalence_report(*fixture(name, b), b);
        out.exit_code = worse(out.exit_code, exit_code_of(rep));
        fixtures.push_back(json{{"fixture", name}, {"report", report_json(rep)}});
    }
    out.doc["fixtures"] = std::move(fixtures);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_rep_pointwise(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("rep-pointwise", b);
    const BackendPtr one = fixture("One", b);
    const BackendPtr sets = fixture("FS2", b);
    const std::vector<MFunctor> objs = enumerate_functors(one, sets, b, false);
    json rows = json::array();
    std::size_t built = 0, skipped = 0, failed = 0;
    const auto attempt = [&](const std::vector<std::size_t>& pick) {
        std::vector<MFunctor> family;
        for (std::size_t i : pick) family.push_back(objs[i]);
        json row{{"family", pick}};
        try {
            const PointwiseHom ph = pointwise_universal(one, sets, family, b);
            row["ok"] = ph.ok;
            row["detail"] = ph.detail;
            if (ph.ok)
                ++built;
            else
                ++failed;
        } catch (const InputError&) {
            row["ok"] = nullptr;
            row["detail"] = "no designated representation within the carrier cap";
            ++skipped;
        }
        rows.push_back(std::move(row));
    };
    attempt({});
    for (std::size_t i = 0; i < objs.size(); ++i) attempt({i});
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j < objs.size(); ++j) attempt({i, j});
    out.doc["families"] = std::move(rows);
    out.doc["built"] = built;
    out.doc["skipped"] = skipped;
    out.doc["failed"] = failed;
    if (failed > 0)
        out.exit_code = kExitCounterexample;
    else if (built == 0)
        out.exit_code = kExitBudget;
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_seqexp(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("seqexp-iso", b);
    json rows = json::array();
    const auto run = [&](const std::string& title, const FiniteCategory& c,
                         const BackendPtr& m) {
        const IsoReport rep = iso_unaryhom_seqexp(c, m, b);
        if (!rep.ok) out.exit_code = kExitCounterexample;
        rows.push_back(iso_json(title, rep));
    };
    run("walking arrow into symmetric finite sets", walking_arrow(), fixture("FS2t", b));
    run("walking arrow into the one-object sequential backend", walking_arrow(),
        fixture("One", b));
    run("two-element group into its discrete backend", z2_category(), fixture("Z2", b));
    out.doc["pairs"] = std::move(rows);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_frobenius(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("frobenius", b);
    json rows = json::array();
    const auto run = [&](const std::string& title, const BackendPtr& m,
                         const FiniteCategory& c) {
        const IsoReport rep = frobenius_check(m, c, b);
        if (!rep.ok) out.exit_code = kExitCounterexample;
        rows.push_back(iso_json(title, rep));
    };
    run("sequential walking arrow with the two-element group", fixture("W", b),
        z2_category());
    run("one-object sequential backend with the walking arrow", fixture("One", b),
        walking_arrow());
    out.doc["pairs"] = std::move(rows);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_corefsum(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("corefsum", b);
    json rows = json::array();
    const auto run = [&](const std::string& lname, const std::string& mname, bool fp) {
        const BackendPtr l = fixture(lname, b);
        const BackendPtr m = fixture(mname, b);
        const ValidationReport rep =
            fp ? fp_coreflection_check(l, m, b) : coreflection_check(l, m, b);
        out.exit_code = worse(out.exit_code, exit_code_of(rep));
        rows.push_back(json{{"left", lname}, {"right", mname}, {"fp", fp},
                            {"report", report_json(rep)}});
    };
    run("One", "FS2", false);
    run("W", "W", false);
    run("Nat", "FS2", true);
    out.doc["pairs"] = std::move(rows);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_cart8(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("cart8-biproducts", b);
    const auto sweep = [&](const std::string& name) {
        const BackendPtr m = fixture(name, b);
        json pairs = json::array();
        std::size_t found = 0;
        bool agree = true;
        for (ObjId x = 0; x < m->object_count(); ++x) {
            for (ObjId y = 0; y < m->object_count(); ++y) {
                const auto bp = biproduct_view(*m, x, y, b);
                const auto aw = algebraic_product_search(*m, {x, y}, b);
                const bool same = bp.has_value() == aw.has_value();
                agree = agree && same;
                if (bp) ++found;
                pairs.push_back(json{{"x", m->object_name(x)},
                                     {"y", m->object_name(y)},
                                     {"biproduct", bp.has_value()},
                                     {"product", aw.has_value()},
                                     {"agree", same}});
            }
        }
        return json{{"fixture", name}, {"pairs", std::move(pairs)}, {"found", found},
                    {"agree", agree}};
    };
    json cm2 = sweep("CM2");
    json bl = sweep("Bool");
    const bool ok = cm2["agree"].get<bool>() && bl["agree"].get<bool>() &&
                    cm2["found"].get<std::size_t>() > 0 &&
                    bl["found"].get<std::size_t>() == 0;
    out.doc["fixtures"] = json::array({std::move(cm2), std::move(bl)});
    out.doc["ok"] = ok;
    out.exit_code = ok ? kExitPass : kExitCounterexample;
    return out;
}

// slot parts of an arrow over the free backend: [len, ids...] per slot
std::vector<std::size_t> slot_sizes(const Arrow& f) {
    std::vector<std::size_t> sizes;
    std::size_t i = 0;
    while (i < f.code.size()) {
        const std::size_t len = static_cast<std::size_t>(f.code[i]);
        sizes.push_back(len);
        i += 1 + len;
    }
    return sizes;
}

TheoremOutcome thm_free_nat(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("free-nat-rig", b);
    const BackendPtr nat = nat_rig_seq();
    const BackendPtr fre = free_preadditive_seq(terminal_category());
    ValidationReport rep;
    rep.backend = fre->describe() + " against " + nat->describe();
    rep.budget = b;
    // formal sums over the one-arrow category carry over to arithmetic
    // tuples slotwise; phi reads each slot's term count
    const auto phi = [&](const Arrow& f) {
        const std::vector<std::size_t> sizes = slot_sizes(f);
        Arrow g;
        g.sig = f.sig;
        for (std::size_t s : sizes) g.code.push_back(s);
        return g;
    };

    LawResult grading{"grading-bijection", Outcome::pass, 0, 0, false, std::nullopt};
    for (std::size_t n = 0; n <= b.max_arity; ++n) {
        const Signature sig{std::vector<ObjId>(n, 0), 0};
        const HomSet hf = fre->hom(sig, b.max_enum);
        const HomSet hn = nat->hom(sig, b.max_enum);
        ++grading.instances;
        grading.truncated = grading.truncated || hf.truncated || hn.truncated;
        bool same = hf.arrows.size() == hn.arrows.size() && hf.truncated == hn.truncated;
        for (std::size_t i = 0; same && i < hf.arrows.size(); ++i)
            same = phi(hf.arrows[i]) == hn.arrows[i];
        if (!same && grading.outcome != Outcome::counterexample) {
            grading.outcome = Outcome::counterexample;
            Counterexample ce;
            ce.law = grading.law;
            ce.sig = sig;
            ce.note = "enumerations disagree at arity " + std::to_string(n);
            grading.witness = std::move(ce);
        }
    }

    LawResult compose{"compose-transport", Outcome::pass, 0, 0, false, std::nullopt};
    LawResult symmetry{"symmetry-transport", Outcome::pass, 0, 0, false, std::nullopt};
    HomCache cache(*fre, b);
    for (const Signature& sig : all_signatures(*fre, b.max_arity)) {
        for (const Arrow& f : cache.get(sig).arrows) {
            if (compose.instances >= b.max_enum) {
                compose.truncated = true;
                break;
            }
            each_arrow_tuple(cache, f.sig.domain, b.max_arity,
                             [&](std::span<const Arrow> gs) {
                if (compose.instances >= b.max_enum) {
                    compose.truncated = true;
                    return false;
                }
                ++compose.instances;
                std::vector<Arrow> ngs;
                for (const Arrow& g : gs) ngs.push_back(phi(g));
                const Arrow lhs = phi(fre->compose(f, gs));
                const Arrow rhs = nat->compose(phi(f), ngs);
                if (lhs != rhs && compose.outcome != Outcome::counterexample) {
                    compose.outcome = Outcome::counterexample;
                    Counterexample ce;
                    ce.law = compose.law;
                    ce.arrows.assign(gs.begin(), gs.end());
                    ce.arrows.insert(ce.arrows.begin(), f);
                    ce.lhs = lhs;
                    ce.rhs = rhs;
                    compose.witness = std::move(ce);
                }
                return true;
            });
            for (const std::vector<std::size_t>& p : all_permutations(f.arity())) {
                bool trivial = true;
                for (std::size_t i = 0; i < p.size(); ++i) trivial = trivial && p[i] == i;
                if (trivial) continue;
                if (symmetry.instances >= b.max_enum) {
                    symmetry.truncated = true;
                    break;
                }
                ++symmetry.instances;
                const FamilyMap fm = permutation_map(p, f.sig.domain);
                const Arrow lhs = phi(fre->sym_act(fm, f));
                const Arrow rhs = nat->sym_act(fm, phi(f));
                if (lhs != rhs && symmetry.outcome != Outcome::counterexample) {
                    symmetry.outcome = Outcome::counterexample;
                    Counterexample ce;
                    ce.law = symmetry.law;
                    ce.arrows = {f};
                    ce.maps = {fm};
                    ce.lhs = lhs;
                    ce.rhs = rhs;
                    symmetry.witness = std::move(ce);
                }
            }
        }
    }
    compose.truncated = compose.truncated || cache.truncated();
    rep.laws = {std::move(grading), std::move(compose), std::move(symmetry)};
    out.doc["report"] = report_json(rep);
    out.exit_code = exit_code_of(rep);
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

TheoremOutcome thm_kronecker(const Budget& b) {
    TheoremOutcome out;
    out.doc = doc_head("models-kronecker", b);
    json rows = json::array();
    const auto run = [&](const std::string& title, const FiniteCategory& c) {
        const ValidationReport rep = kronecker_semantics_check(c, 2, b);
        out.exit_code = worse(out.exit_code, exit_code_of(rep));
        rows.push_back(json{{"category", title}, {"report", report_json(rep)}});
    };
    run("1", terminal_category());
    run("W", walking_arrow());
    out.doc["categories"] = std::move(rows);
    out.doc["arithmetic_models"] = enumerate_models(fixture("Nat", b), 2, b).size();
    out.doc["ok"] = out.exit_code == kExitPass;
    return out;
}

}  // namespace

std::vector<std::string> theorem_ids() {
    return {"char-equivalences", "cart1-products", "rep-pointwise",
            "seqexp-iso",        "frobenius",      "corefsum",
            "cart8-biproducts",  "free-nat-rig",   "models-kronecker"};
}

TheoremOutcome run_theorem(const std::string& id, const Budget& b) {
    if (id == "char-equivalences") return thm_char(b);
    if (id == "cart1-products") return thm_cart1(b);
    if (id == "rep-pointwise") return thm_rep_pointwise(b);
    if (id == "seqexp-iso") return thm_seqexp(b);
    if (id == "frobenius") return thm_frobenius(b);
    if (id == "corefsum") return thm_corefsum(b);
    if (id == "cart8-biproducts") return thm_cart8(b);
    if (id == "free-nat-rig") return thm_free_nat(b);
    if (id == "models-kronecker") return thm_kronecker(b);
    std::string known;
    for (const std::string& nm : theorem_ids()) known += (known.empty() ? "" : ", ") + nm;
    throw InputError("unknown theorem id \"" + id + "\" (known: " + known + ")");
}

}  // namespace mcat
