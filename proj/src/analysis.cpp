#include "mcat/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace mcat {

namespace {

std::string family_label(const Backend& m, const std::vector<ObjId>& family) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < family.size(); ++i)
        os << (i ? "," : "") << m.object_name(family[i]);
    os << ")";
    return os.str();
}

Counterexample note_ce(const std::string& law, const std::string& note) {
    Counterexample ce;
    ce.law = law;
    ce.note = note;
    return ce;
}

void fail(LawResult& law, Counterexample ce) {
    if (law.outcome != Outcome::counterexample) {
        law.outcome = Outcome::counterexample;
        law.witness = std::move(ce);
    }
}

// Arrows of m in sweep order, capped by the enumeration budget.
std::vector<Arrow> probe_arrows(const Backend& m, const Budget& b, bool& truncated) {
    std::vector<Arrow> out;
    HomCache cache(m, b);
    std::uint64_t used = 0;
    for (const Signature& sig : all_signatures(m, b.max_arity)) {
        for (const Arrow& f : cache.get(sig).arrows) {
            if (used++ >= b.max_enum) {
                truncated = true;
                return out;
            }
            out.push_back(f);
        }
    }
    truncated = truncated || cache.truncated();
    return out;
}

// Identity on family[i] with every other slot of the family weakened in.
Arrow slot_identity(const Backend& m, const std::vector<ObjId>& family, std::size_t i) {
    Arrow w = m.identity(family[i]);
    for (std::size_t j = 0; j < family.size(); ++j)
        if (j != i) w = m.weaken(w, j, family[j]);
    return w;
}

}  // namespace

bool preuniversal(const Backend& m, const Arrow& u, const Budget& b) {
    const ObjId p = u.sig.codomain;
    for (ObjId y = 0; y < m.object_count(); ++y) {
        const HomSet dn = hom_checked(m, Signature{{p}, y}, b);
        const HomSet up = hom_checked(m, Signature{u.sig.domain, y}, b);
        if (dn.truncated || up.truncated)
            throw BudgetError(m.describe() + ": preuniversal test needs full hom-sets");
        std::vector<Arrow> image;
        image.reserve(dn.arrows.size());
        for (const Arrow& t : dn.arrows)
            image.push_back(m.compose(t, std::vector<Arrow>{u}));
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
        std::vector<Arrow> want = up.arrows;
        std::sort(want.begin(), want.end());
        if (image != want) return false;
    }
    return true;
}

std::optional<Arrow> find_preuniversal(const Backend& m, const std::vector<ObjId>& family,
                                       const Budget& b) {
    if (const auto u = m.universal_arrow(family))
        if (preuniversal(m, *u, b)) return u;
    bool truncated = false;
    for (ObjId p = 0; p < m.object_count(); ++p) {
        const HomSet cands = hom_checked(m, Signature{family, p}, b);
        truncated = truncated || cands.truncated;
        for (const Arrow& u : cands.arrows)
            if (preuniversal(m, u, b)) return u;
    }
    if (truncated)
        throw BudgetError(m.describe() + ": candidate enumeration truncates, absence of a " +
                          "preuniversal arrow for " + family_label(m, family) +
                          " cannot be certified");
    return std::nullopt;
}

ValidationReport is_representable(const Backend& m, const Budget& b) {
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    LawResult fams{"rep-families", Outcome::pass, 0, 0, false, std::nullopt};
    std::map<std::vector<ObjId>, Arrow> found;
    for (const std::vector<ObjId>& family : all_families(m, b.max_arity)) {
        const auto u = find_preuniversal(m, family, b);
        ++fams.instances;
        if (u) {
            found.emplace(family, *u);
        } else {
            Counterexample ce = note_ce(fams.law, "no preuniversal arrow for " +
                                                      family_label(m, family));
            ce.sig = Signature{family, 0};
            fail(fams, std::move(ce));
        }
    }
    // composites of found witnesses stay preuniversal
    LawResult closure{"rep-closure", Outcome::pass, 0, 0, false, std::nullopt};
    std::vector<std::pair<std::vector<ObjId>, Arrow>> list(found.begin(), found.end());
    const auto composite_at = [&](const std::vector<const Arrow*>& inner) {
        std::vector<ObjId> outer_fam;
        std::vector<Arrow> gs;
        for (const Arrow* w : inner) {
            outer_fam.push_back(w->sig.codomain);
            gs.push_back(*w);
        }
        const auto it = found.find(outer_fam);
        if (it == found.end()) return;  // outer family has no stored witness
        ++closure.instances;
        const Arrow comp = m.compose(it->second, gs);
        if (!preuniversal(m, comp, b)) {
            Counterexample ce = note_ce(closure.law, "composite witness fails at " +
                                                         family_label(m, outer_fam));
            ce.arrows = {it->second, comp};
            fail(closure, std::move(ce));
        }
    };
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (closure.instances + closure.skipped >= b.max_enum) {
            closure.truncated = true;
            break;
        }
        composite_at({&list[i].second});
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (list[i].first.size() + list[j].first.size() > b.max_arity) {
                ++closure.skipped;
                continue;
            }
            if (closure.instances + closure.skipped >= b.max_enum) {
                closure.truncated = true;
                break;
            }
            composite_at({&list[i].second, &list[j].second});
        }
    }
    rep.laws = {std::move(fams), std::move(closure)};
    return rep;
}

std::optional<CentralMonoidWitness> find_central_monoid(const Backend& m, const Budget& b) {
    std::vector<std::vector<MonoidOn>> fams = central_families(m, b);
    if (fams.empty()) return std::nullopt;
    return CentralMonoidWitness{std::move(fams.front())};
}

std::size_t central_monoid_count(const Backend& m, const Budget& b) {
    return central_families(m, b).size();
}

Arrow central_power(const Backend& m, const CentralMonoidWitness& w, ObjId x,
                    std::size_t n) {
    require_input(x < w.per_object.size(), "central power: object out of range");
    return monoid_power(m, w.per_object[x], x, n);
}

ValidationReport hilton_eckmann_check(const Backend& m, const Budget& b) {
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    // unital magma candidates per object: unit laws only
    std::vector<std::vector<MonoidOn>> cand(m.object_count());
    for (ObjId y = 0; y < m.object_count(); ++y) {
        const HomSet units = hom_checked(m, Signature{{}, y}, b);
        const HomSet muls = hom_checked(m, Signature{{y, y}, y}, b);
        const Arrow id = m.identity(y);
        for (const Arrow& u : units.arrows) {
            for (const Arrow& mul : muls.arrows) {
                if (m.compose(mul, std::vector<Arrow>{u, id}) != id) continue;
                if (m.compose(mul, std::vector<Arrow>{id, u}) != id) continue;
                cand[y].push_back(MonoidOn{u, mul});
            }
        }
    }
    std::vector<std::vector<MonoidOn>> magmas;
    bool feasible = true;
    for (const auto& c : cand) feasible = feasible && !c.empty();
    if (m.object_count() == 0) {
        magmas.push_back({});
    } else if (feasible) {
        std::vector<std::size_t> idx(m.object_count(), 0);
        while (true) {
            std::vector<MonoidOn> fam;
            for (ObjId y = 0; y < m.object_count(); ++y) fam.push_back(cand[y][idx[y]]);
            if (central_family(m, fam, b)) magmas.push_back(std::move(fam));
            std::size_t i = idx.size();
            bool moved = false;
            while (i > 0) {
                --i;
                if (++idx[i] < cand[i].size()) {
                    moved = true;
                    break;
                }
                idx[i] = 0;
            }
            if (!moved) break;
        }
    }
    LawResult monoid_law{"magma-extends-to-monoid", Outcome::pass, 0, 0, false, std::nullopt};
    for (const auto& fam : magmas) {
        ++monoid_law.instances;
        for (ObjId y = 0; y < m.object_count(); ++y) {
            if (!commutative_monoid_on(m, y, fam[y])) {
                Counterexample ce = note_ce(monoid_law.law,
                                            "central magma is not a commutative monoid at " +
                                                m.object_name(y));
                ce.arrows = {fam[y].unit, fam[y].mul};
                fail(monoid_law, std::move(ce));
            }
        }
    }
    LawResult match_law{"magma-matches-central-monoid", Outcome::pass, 0, 0, false,
                        std::nullopt};
    const std::vector<std::vector<MonoidOn>> monoids = central_families(m, b);
    match_law.instances = std::max(magmas.size(), monoids.size());
    bool same = magmas.size() == monoids.size();
    for (std::size_t k = 0; same && k < magmas.size(); ++k)
        for (ObjId y = 0; same && y < m.object_count(); ++y)
            same = magmas[k][y].unit == monoids[k][y].unit &&
                   magmas[k][y].mul == monoids[k][y].mul;
    if (!same)
        fail(match_law, note_ce(match_law.law,
                                "central magma families: " + std::to_string(magmas.size()) +
                                    ", central monoid families: " +
                                    std::to_string(monoids.size())));
    rep.laws = {std::move(monoid_law), std::move(match_law)};
    return rep;
}

namespace {

// Full restriction of a backend to a chosen object subset; arrows keep
// their codes, signatures are translated through the kept-object table.
class FullSubBackend final : public Backend {
  public:
    FullSubBackend(BackendPtr inner, std::vector<ObjId> keep, std::string name)
        : inner_(std::move(inner)), keep_(std::move(keep)), name_(std::move(name)) {
        for (ObjId k : keep_)
            require_input(k < inner_->object_count(), name_ + ": object out of range");
    }

    BackendKind kind() const override { return BackendKind::sub; }
    std::string describe() const override { return name_; }
    std::size_t object_count() const override { return keep_.size(); }
    std::string object_name(ObjId x) const override {
        require_input(x < keep_.size(), name_ + ": object out of range");
        return inner_->object_name(keep_[x]);
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        check_signature(*this, sig);
        HomSet inner = inner_->hom(in_sig(sig), max_enum);
        HomSet out;
        out.truncated = inner.truncated;
        for (Arrow& f : inner.arrows) out.arrows.push_back(Arrow{sig, std::move(f.code)});
        return out;
    }

    Arrow identity(ObjId x) const override {
        require_input(x < keep_.size(), name_ + ": object out of range");
        return Arrow{Signature{{x}, x}, inner_->identity(keep_[x]).code};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Signature sig;
        sig.codomain = f.sig.codomain;
        std::vector<Arrow> inner_gs;
        inner_gs.reserve(gs.size());
        for (const Arrow& g : gs) {
            sig.domain.insert(sig.domain.end(), g.sig.domain.begin(), g.sig.domain.end());
            inner_gs.push_back(to_inner(g));
        }
        return Arrow{sig, inner_->compose(to_inner(f), inner_gs).code};
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        check_family_map(s);
        if (s.source != f.sig.domain)
            throw UnsupportedAction(name_ + ": map source differs from the domain");
        FamilyMap in;
        in.map = s.map;
        for (ObjId i : s.source) in.source.push_back(keep_.at(i));
        for (ObjId i : s.target) in.target.push_back(keep_.at(i));
        return Arrow{Signature{s.target, f.sig.codomain},
                     inner_->sym_act(in, to_inner(f)).code};
    }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        require_input(pos + 1 < f.arity() && f.sig.domain[pos] == f.sig.domain[pos + 1],
                      name_ + ": contraction needs equal adjacent positions");
        Signature sig = f.sig;
        sig.domain.erase(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos + 1));
        return Arrow{sig, inner_->contract(to_inner(f), pos).code};
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        require_input(pos <= f.arity() && x < keep_.size(),
                      name_ + ": weakening position or object out of range");
        Signature sig = f.sig;
        sig.domain.insert(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        return Arrow{sig, inner_->weaken(to_inner(f), pos, keep_[x]).code};
    }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        std::vector<ObjId> in;
        in.reserve(family.size());
        for (ObjId i : family) in.push_back(keep_.at(i));
        const auto u = inner_->universal_arrow(in);
        if (!u) return std::nullopt;
        const auto it = std::find(keep_.begin(), keep_.end(), u->sig.codomain);
        if (it == keep_.end()) return std::nullopt;
        return Arrow{Signature{family, static_cast<ObjId>(it - keep_.begin())}, u->code};
    }

    bool cartesian() const override { return inner_->cartesian(); }

    std::string arrow_label(const Arrow& f) const override {
        return inner_->arrow_label(to_inner(f));
    }

  private:
    Signature in_sig(const Signature& sig) const {
        Signature out;
        out.codomain = keep_.at(sig.codomain);
        for (ObjId i : sig.domain) out.domain.push_back(keep_.at(i));
        return out;
    }
    Arrow to_inner(const Arrow& f) const { return Arrow{in_sig(f.sig), f.code}; }

    BackendPtr inner_;
    std::vector<ObjId> keep_;
    std::string name_;
};

}  // namespace

BackendPtr center(BackendPtr m, const Budget& b) {
    require_input(m != nullptr, "center needs a backend");
    BackendPtr ih = internal_hom(m, m, b);
    const std::vector<MFunctor>& objs = *hom_objects_of(*ih);
    bool trunc = false;
    const std::vector<Arrow> probe = probe_arrows(*m, b, trunc);
    std::optional<ObjId> idx;
    for (ObjId i = 0; i < objs.size() && !idx; ++i) {
        bool is_id = true;
        for (ObjId x = 0; x < m->object_count() && is_id; ++x)
            is_id = objs[i].obj(x) == x;
        for (const Arrow& f : probe) {
            if (!is_id) break;
            is_id = objs[i].apply(f) == f;
        }
        if (is_id) idx = i;
    }
    require_input(idx.has_value(), ih->describe() + ": identity functor not enumerated");
    return std::make_shared<FullSubBackend>(std::move(ih), std::vector<ObjId>{*idx},
                                            "center(" + m->describe() + ")");
}

namespace {

FiniteCategory one_point_category() {
    FiniteCategory c;
    c.name = "1";
    c.objects = {"*"};
    c.arrows = {CatArrow{"id", 0, 0}};
    c.identities = {0};
    c.comp = {{0}};
    return c;
}

}  // namespace

ValidationReport sequentiality_report(BackendPtr m, const Budget& b) {
    require_input(m != nullptr, "sequentiality report needs a backend");
    ValidationReport rep;
    rep.backend = m->describe();
    rep.budget = b;

    // hom-sets count like tuples over the arity-one slice
    LawResult tuples{"seq-arity-one-tuples", Outcome::pass, 0, 0, false, std::nullopt};
    const UnarySlice slice = unary_slice(*m, b);
    for (const Signature& sig : all_signatures(*m, b.max_arity)) {
        const HomSet h = m->hom(sig, b.max_enum);
        if (h.truncated) {
            tuples.truncated = true;
            ++tuples.skipped;
            continue;
        }
        std::uint64_t want = 1;
        for (ObjId x : sig.domain) want *= slice.cat.hom(x, sig.codomain).size();
        ++tuples.instances;
        if (h.arrows.size() != want) {
            Counterexample ce = note_ce(tuples.law,
                                        signature_label(*m, sig) + " holds " +
                                            std::to_string(h.arrows.size()) +
                                            " arrows, tuple count " + std::to_string(want));
            ce.sig = sig;
            fail(tuples, std::move(ce));
        }
    }

    LawResult central{"seq-central-monoid", Outcome::pass, 1, 0, false, std::nullopt};
    const auto cm = find_central_monoid(*m, b);
    if (!cm) fail(central, note_ce(central.law, "no central monoid within budget"));

    LawResult magma{"seq-central-magma", Outcome::pass, 1, 0, false, std::nullopt};
    {
        // any central unital magma family counts; reuse the finder's sweep
        const ValidationReport he = hilton_eckmann_check(*m, b);
        const bool any = he.laws.front().instances > 0;
        if (!any) fail(magma, note_ce(magma.law, "no central unital magma within budget"));
    }

    // the monoid backend reproduces m
    LawResult monrep{"seq-monoid-arrows", Outcome::pass, 0, 0, false, std::nullopt};
    {
        const BackendPtr mon = monoid_mcat(m, b);
        const std::vector<MonoidObject>& mobjs = *monoid_objects_of(*mon);
        std::vector<std::size_t> per_carrier(m->object_count(), 0);
        for (const MonoidObject& o : mobjs) ++per_carrier[o.carrier];
        bool objects_match = mobjs.size() == m->object_count();
        for (std::size_t c = 0; c < per_carrier.size(); ++c)
            objects_match = objects_match && per_carrier[c] == 1;
        ++monrep.instances;
        if (!objects_match) {
            fail(monrep, note_ce(monrep.law,
                                 std::to_string(mobjs.size()) + " monoids over " +
                                     std::to_string(m->object_count()) + " objects"));
        } else {
            for (const Signature& sig : all_signatures(*m, b.max_arity)) {
                const HomSet full = m->hom(sig, b.max_enum);
                const HomSet part = mon->hom(sig, b.max_enum);
                if (full.truncated || part.truncated) {
                    monrep.truncated = true;
                    ++monrep.skipped;
                    continue;
                }
                ++monrep.instances;
                if (full.arrows.size() != part.arrows.size()) {
                    Counterexample ce =
                        note_ce(monrep.law, signature_label(*m, sig) + ": " +
                                                std::to_string(part.arrows.size()) +
                                                " monoid arrows of " +
                                                std::to_string(full.arrows.size()));
                    ce.sig = sig;
                    fail(monrep, std::move(ce));
                }
            }
        }
    }

    // closed-form tensor count, meaningful only once the tuple condition holds
    LawResult tensor{"seq-tensor-closed-form", Outcome::pass, 0, 0, false, std::nullopt};
    if (tuples.outcome == Outcome::pass && !tuples.truncated) {
        const IsoReport t = tensor_seq_count_check(one_point_category(), slice.cat, b);
        ++tensor.instances;
        if (!t.ok) fail(tensor, note_ce(tensor.law, t.detail));
    } else {
        tensor.outcome = Outcome::budget_exhausted;
        tensor.skipped = 1;
        tensor.witness = note_ce(tensor.law, "unchecked: no closed form applies");
    }

    rep.laws = {std::move(tuples), std::move(central), std::move(magma), std::move(monrep),
                std::move(tensor)};
    return rep;
}

bool algebraic_product_valid(const Backend& m, const std::vector<ObjId>& family,
                             const AlgebraicProductWitness& w) {
    require_input(m.cartesian(), m.describe() + ": products need contractions and weakenings");
    const std::size_t n = family.size();
    if (w.pairing.sig != Signature{family, w.c}) return false;
    if (w.projections.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (w.projections[i].sig != Signature{{w.c}, family[i]}) return false;
    // the pairing on the projections collapses to the identity
    Arrow t = m.compose(w.pairing, w.projections);
    if (n == 0) t = m.weaken(t, 0, w.c);
    while (t.arity() > 1) t = m.contract(t, 0);
    if (t != m.identity(w.c)) return false;
    // each projection after the pairing is the identity with weakened slots
    for (std::size_t i = 0; i < n; ++i) {
        const Arrow lhs = m.compose(w.projections[i], std::vector<Arrow>{w.pairing});
        if (lhs != slot_identity(m, family, i)) return false;
    }
    return true;
}

namespace {

// Shared engine: deterministic scan over (object, pairing, projections),
// calling sink on every valid witness; sink returns false to stop.
void algebraic_scan(const Backend& m, const std::vector<ObjId>& family, const Budget& b,
                    const std::function<bool(const AlgebraicProductWitness&)>& sink) {
    require_input(m.cartesian(), m.describe() + ": products need contractions and weakenings");
    const std::size_t n = family.size();
    std::uint64_t scanned = 0;
    for (ObjId c = 0; c < m.object_count(); ++c) {
        const HomSet us = hom_checked(m, Signature{family, c}, b);
        std::vector<HomSet> ps;
        ps.reserve(n);
        bool empty = us.arrows.empty();
        for (std::size_t i = 0; i < n; ++i) {
            ps.push_back(hom_checked(m, Signature{{c}, family[i]}, b));
            empty = empty || ps.back().arrows.empty();
        }
        if (us.truncated) throw BudgetError(m.describe() + ": pairing candidates truncate");
        for (const HomSet& h : ps)
            if (h.truncated) throw BudgetError(m.describe() + ": projection candidates truncate");
        if (empty) continue;
        for (const Arrow& u : us.arrows) {
            // filter projection candidates against the pairing first
            std::vector<std::vector<const Arrow*>> ok(n);
            bool feasible = true;
            for (std::size_t i = 0; i < n && feasible; ++i) {
                const Arrow want = slot_identity(m, family, i);
                for (const Arrow& p : ps[i].arrows) {
                    if (++scanned > b.max_enum)
                        throw BudgetError(m.describe() + ": product search exceeds the budget");
                    if (m.compose(p, std::vector<Arrow>{u}) == want) ok[i].push_back(&p);
                }
                feasible = !ok[i].empty();
            }
            if (!feasible) continue;
            std::vector<std::size_t> idx(n, 0);
            while (true) {
                if (++scanned > b.max_enum)
                    throw BudgetError(m.describe() + ": product search exceeds the budget");
                AlgebraicProductWitness w;
                w.c = c;
                w.pairing = u;
                for (std::size_t i = 0; i < n; ++i) w.projections.push_back(*ok[i][idx[i]]);
                if (algebraic_product_valid(m, family, w) && !sink(w)) return;
                if (n == 0) break;
                std::size_t i = n;
                bool moved = false;
                while (i > 0) {
                    --i;
                    if (++idx[i] < ok[i].size()) {
                        moved = true;
                        break;
                    }
                    idx[i] = 0;
                }
                if (!moved) break;
            }
        }
    }
}

}  // namespace

std::optional<AlgebraicProductWitness> algebraic_product_search(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b) {
    std::optional<AlgebraicProductWitness> out;
    algebraic_scan(m, family, b, [&](const AlgebraicProductWitness& w) {
        out = w;
        return false;
    });
    return out;
}

std::vector<AlgebraicProductWitness> algebraic_product_all(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b) {
    std::vector<AlgebraicProductWitness> out;
    algebraic_scan(m, family, b, [&](const AlgebraicProductWitness& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

bool universal_product_valid(const Backend& m, const std::vector<ObjId>& family,
                             ObjId c, const std::vector<Arrow>& projections,
                             const Budget& b) {
    require_input(projections.size() == family.size(),
                  "universal product: one projection per family member");
    HomCache cache(m, b);
    for (const std::vector<ObjId>& ctx : all_families(m, b.max_arity)) {
        const HomSet& into_c = cache.get(Signature{ctx, c});
        if (into_c.truncated || cache.truncated())
            throw BudgetError(m.describe() + ": factorization test needs full hom-sets");
        std::uint64_t want = 1;
        for (ObjId a : family) {
            const HomSet& h = cache.get(Signature{ctx, a});
            if (h.truncated) throw BudgetError(m.describe() + ": factorization test needs full hom-sets");
            want *= h.arrows.size();
        }
        // the tupling map must be a bijection: counts agree and images are
        // pairwise distinct
        if (into_c.arrows.size() != want) return false;
        std::vector<std::vector<Arrow>> images;
        images.reserve(into_c.arrows.size());
        for (const Arrow& t : into_c.arrows) {
            std::vector<Arrow> row;
            row.reserve(family.size());
            for (const Arrow& p : projections)
                row.push_back(m.compose(p, std::vector<Arrow>{t}));
            images.push_back(std::move(row));
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
    return true;
}

std::optional<UniversalProductWitness> universal_product_search(
    const Backend& m, const std::vector<ObjId>& family, const Budget& b) {
    HomCache cache(m, b);
    const std::vector<std::vector<ObjId>> contexts = all_families(m, b.max_arity);
    for (ObjId c = 0; c < m.object_count(); ++c) {
        // counting filter: a bijection is impossible unless every context
        // sees matching cardinalities
        bool counts_ok = true;
        for (const std::vector<ObjId>& ctx : contexts) {
            const HomSet& into_c = cache.get(Signature{ctx, c});
            if (into_c.truncated || cache.truncated())
                throw BudgetError(m.describe() + ": factorization test needs full hom-sets");
            std::uint64_t want = 1;
            for (ObjId a : family) want *= cache.get(Signature{ctx, a}).arrows.size();
            if (into_c.arrows.size() != want) {
                counts_ok = false;
                break;
            }
        }
        if (!counts_ok) continue;
        std::vector<const HomSet*> ps;
        bool empty = false;
        for (ObjId a : family) {
            ps.push_back(&cache.get(Signature{{c}, a}));
            empty = empty || ps.back()->arrows.empty();
        }
        if (empty) continue;
        std::vector<std::size_t> idx(family.size(), 0);
        while (true) {
            std::vector<Arrow> projections;
            projections.reserve(family.size());
            for (std::size_t i = 0; i < family.size(); ++i)
                projections.push_back(ps[i]->arrows[idx[i]]);
            if (universal_product_valid(m, family, c, projections, b))
                return UniversalProductWitness{c, std::move(projections)};
            if (family.empty()) break;
            std::size_t i = family.size();
            bool moved = false;
            while (i > 0) {
                --i;
                if (++idx[i] < ps[i]->arrows.size()) {
                    moved = true;
                    break;
                }
                idx[i] = 0;
            }
            if (!moved) break;
        }
    }
    return std::nullopt;
}

ValidationReport product_equivalence_report(const Backend& m, const Budget& b) {
    require_input(m.cartesian(), m.describe() + ": products need contractions and weakenings");
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    LawResult exist{"product-existence", Outcome::pass, 0, 0, false, std::nullopt};
    LawResult cross{"product-cross-witnesses", Outcome::pass, 0, 0, false, std::nullopt};
    LawResult closure{"product-closure", Outcome::pass, 0, 0, false, std::nullopt};
    std::map<std::vector<ObjId>, AlgebraicProductWitness> found;
    for (const std::vector<ObjId>& family : all_families(m, b.max_arity)) {
        const auto aw = algebraic_product_search(m, family, b);
        const auto uw = universal_product_search(m, family, b);
        const auto pu = find_preuniversal(m, family, b);
        ++exist.instances;
        if (aw.has_value() != uw.has_value() || aw.has_value() != pu.has_value()) {
            Counterexample ce =
                note_ce(exist.law, family_label(m, family) + ": algebraic " +
                                       (aw ? "yes" : "no") + ", universal " +
                                       (uw ? "yes" : "no") + ", preuniversal " +
                                       (pu ? "yes" : "no"));
            ce.sig = Signature{family, 0};
            fail(exist, std::move(ce));
            continue;
        }
        if (!aw) continue;
        found.emplace(family, *aw);
        // algebraic witness satisfies the factorization property
        ++cross.instances;
        if (!universal_product_valid(m, family, aw->c, aw->projections, b)) {
            Counterexample ce = note_ce(cross.law, family_label(m, family) +
                                                       ": algebraic witness fails factorization");
            ce.arrows = aw->projections;
            fail(cross, std::move(ce));
        }
        // universal witness induces a valid pairing
        ++cross.instances;
        {
            std::vector<Arrow> pairings;
            for (const Arrow& u : hom_checked(m, Signature{family, uw->c}, b).arrows) {
                bool all = true;
                for (std::size_t i = 0; i < family.size() && all; ++i)
                    all = m.compose(uw->projections[i], std::vector<Arrow>{u}) ==
                          slot_identity(m, family, i);
                if (all) pairings.push_back(u);
            }
            AlgebraicProductWitness w;
            w.c = uw->c;
            w.projections = uw->projections;
            if (pairings.size() == 1) w.pairing = pairings.front();
            if (pairings.size() != 1 || !algebraic_product_valid(m, family, w)) {
                Counterexample ce = note_ce(
                    cross.law, family_label(m, family) + ": universal witness admits " +
                                   std::to_string(pairings.size()) + " pairings");
                fail(cross, std::move(ce));
            }
        }
        // preuniversal arrow induces valid projections
        ++cross.instances;
        {
            const ObjId p = pu->sig.codomain;
            AlgebraicProductWitness w;
            w.c = p;
            w.pairing = *pu;
            bool all = true;
            for (std::size_t i = 0; i < family.size() && all; ++i) {
                const Arrow want = slot_identity(m, family, i);
                std::vector<Arrow> ts;
                for (const Arrow& t : hom_checked(m, Signature{{p}, family[i]}, b).arrows)
                    if (m.compose(t, std::vector<Arrow>{*pu}) == want) ts.push_back(t);
                all = ts.size() == 1;
                if (all) w.projections.push_back(ts.front());
            }
            if (!all || !algebraic_product_valid(m, family, w)) {
                Counterexample ce = note_ce(cross.law,
                                            family_label(m, family) +
                                                ": preuniversal arrow yields no unique projections");
                ce.arrows = {*pu};
                fail(cross, std::move(ce));
            }
        }
    }
    // composites: binary over binary, and binary absorbing the empty witness
    const AlgebraicProductWitness* nullary = nullptr;
    if (const auto it = found.find({}); it != found.end()) nullary = &it->second;
    for (const auto& [fam1, w1] : found) {
        if (fam1.size() != 2) continue;
        for (const auto& [fam2, w2] : found) {
            if (fam2.size() != 2 || fam2[0] != w1.c) continue;
            const std::vector<ObjId> big{fam1[0], fam1[1], fam2[1]};
            if (big.size() > b.max_arity) {
                ++closure.skipped;
                continue;
            }
            if (closure.instances >= b.max_enum) {
                closure.truncated = true;
                break;
            }
            ++closure.instances;
            AlgebraicProductWitness w;
            w.c = w2.c;
            w.pairing = m.compose(w2.pairing,
                                  std::vector<Arrow>{w1.pairing, m.identity(fam2[1])});
            w.projections = {
                m.compose(w1.projections[0], std::vector<Arrow>{w2.projections[0]}),
                m.compose(w1.projections[1], std::vector<Arrow>{w2.projections[0]}),
                w2.projections[1]};
            if (!algebraic_product_valid(m, big, w)) {
                Counterexample ce = note_ce(closure.law, "binary over binary fails at " +
                                                             family_label(m, big));
                ce.arrows = {w.pairing};
                fail(closure, std::move(ce));
            }
        }
        if (nullary && fam1[1] == nullary->c) {
            ++closure.instances;
            const std::vector<ObjId> small{fam1[0]};
            AlgebraicProductWitness w;
            w.c = w1.c;
            w.pairing = m.compose(
                w1.pairing, std::vector<Arrow>{m.identity(fam1[0]), nullary->pairing});
            w.projections = {w1.projections[0]};
            if (!algebraic_product_valid(m, small, w)) {
                Counterexample ce = note_ce(closure.law,
                                            "binary absorbing the empty witness fails at " +
                                                family_label(m, small));
                ce.arrows = {w.pairing};
                fail(closure, std::move(ce));
            }
        }
    }
    rep.laws = {std::move(exist), std::move(cross), std::move(closure)};
    return rep;
}

std::optional<BiproductData> biproduct_view(const Backend& m, ObjId x, ObjId y,
                                            const Budget& b) {
    require_input(m.cartesian(), m.describe() + ": biproducts need contractions and weakenings");
    require_input(x < m.object_count() && y < m.object_count(),
                  m.describe() + ": object out of range");
    const auto cm = find_central_monoid(m, b);
    require_input(cm.has_value(), m.describe() + ": no central monoid within budget");
    const auto aw = algebraic_product_search(m, {x, y}, b);
    if (!aw) return std::nullopt;
    const auto zero = [&](ObjId from, ObjId to) {
        return m.weaken(cm->per_object[to].unit, 0, from);
    };
    const Arrow& p = aw->projections[0];
    const Arrow& q = aw->projections[1];
    const Arrow i =
        m.contract(m.compose(aw->pairing, std::vector<Arrow>{m.identity(x), zero(x, y)}), 0);
    const Arrow j =
        m.contract(m.compose(aw->pairing, std::vector<Arrow>{zero(y, x), m.identity(y)}), 0);
    if (m.compose(p, std::vector<Arrow>{i}) != m.identity(x)) return std::nullopt;
    if (m.compose(q, std::vector<Arrow>{j}) != m.identity(y)) return std::nullopt;
    if (m.compose(p, std::vector<Arrow>{j}) != zero(y, x)) return std::nullopt;
    if (m.compose(q, std::vector<Arrow>{i}) != zero(x, y)) return std::nullopt;
    // the two round trips sum to the identity through the central monoid
    const Arrow ip = m.compose(i, std::vector<Arrow>{p});
    const Arrow jq = m.compose(j, std::vector<Arrow>{q});
    const Arrow sum =
        m.contract(m.compose(cm->per_object[aw->c].mul, std::vector<Arrow>{ip, jq}), 0);
    if (sum != m.identity(aw->c)) return std::nullopt;
    return BiproductData{aw->c, p, q, i, j};
}

ValidationReport cocartesian_check(const Backend& m, const Budget& b) {
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    const auto cm = find_central_monoid(m, b);

    // unit object: the empty family's tensor must be initial at arity one
    LawResult unit_law{"cocart-unit-initial", Outcome::pass, 0, 0, false, std::nullopt};
    const auto unit_arrow = find_preuniversal(m, {}, b);
    if (!unit_arrow) {
        ++unit_law.skipped;
    } else {
        const ObjId i0 = unit_arrow->sig.codomain;
        for (ObjId yy = 0; yy < m.object_count(); ++yy) {
            const HomSet h = hom_checked(m, Signature{{i0}, yy}, b);
            ++unit_law.instances;
            if (h.arrows.size() != 1) {
                Counterexample ce = note_ce(unit_law.law,
                                            m.object_name(i0) + " -> " + m.object_name(yy) +
                                                " holds " + std::to_string(h.arrows.size()) +
                                                " arrows");
                ce.sig = Signature{{i0}, yy};
                fail(unit_law, std::move(ce));
            }
        }
    }

    // every realized tensor must admit injections forming a coproduct cone
    LawResult cones{"cocart-pair-cones", Outcome::pass, 0, 0, false, std::nullopt};
    HomCache cache(m, b);
    const auto is_cone = [&](ObjId a2, ObjId b2, ObjId t, const Arrow& inj_a,
                             const Arrow& inj_b) {
        for (ObjId yy = 0; yy < m.object_count(); ++yy) {
            const HomSet& out_t = cache.get(Signature{{t}, yy});
            const std::uint64_t want = cache.get(Signature{{a2}, yy}).arrows.size() *
                                       cache.get(Signature{{b2}, yy}).arrows.size();
            if (out_t.arrows.size() != want) return false;
            std::vector<std::pair<Arrow, Arrow>> rows;
            rows.reserve(out_t.arrows.size());
            for (const Arrow& h : out_t.arrows)
                rows.emplace_back(m.compose(h, std::vector<Arrow>{inj_a}),
                                  m.compose(h, std::vector<Arrow>{inj_b}));
            std::sort(rows.begin(), rows.end());
            if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) return false;
        }
        return true;
    };
    for (ObjId a2 = 0; a2 < m.object_count(); ++a2) {
        for (ObjId b2 = 0; b2 < m.object_count(); ++b2) {
            const auto u = find_preuniversal(m, {a2, b2}, b);
            if (!u) {
                ++cones.skipped;
                continue;
            }
            const ObjId t = u->sig.codomain;
            ++cones.instances;
            bool good = false;
            if (cm) {
                const Arrow inj_a = m.compose(
                    *u, std::vector<Arrow>{m.identity(a2), cm->per_object[b2].unit});
                const Arrow inj_b = m.compose(
                    *u, std::vector<Arrow>{cm->per_object[a2].unit, m.identity(b2)});
                good = is_cone(a2, b2, t, inj_a, inj_b);
            }
            if (!good) {
                for (const Arrow& inj_a : cache.get(Signature{{a2}, t}).arrows) {
                    for (const Arrow& inj_b : cache.get(Signature{{b2}, t}).arrows) {
                        good = is_cone(a2, b2, t, inj_a, inj_b);
                        if (good) break;
                    }
                    if (good) break;
                }
            }
            if (!good) {
                Counterexample ce =
                    note_ce(cones.law, "no coproduct cone on the tensor of (" +
                                           m.object_name(a2) + "," + m.object_name(b2) + ")");
                ce.sig = Signature{{a2, b2}, t};
                ce.arrows = {*u};
                fail(cones, std::move(ce));
            }
        }
    }
    cones.truncated = cones.truncated || cache.truncated();

    // both directions of the equivalence, on the data that exists
    LawResult agree{"cocart-agreement", Outcome::pass, 1, 0, false, std::nullopt};
    const bool rhs_failed = unit_law.outcome == Outcome::counterexample ||
                            cones.outcome == Outcome::counterexample;
    const bool rhs_holds = unit_law.outcome == Outcome::pass && unit_law.instances > 0 &&
                           cones.outcome == Outcome::pass;
    if (cm && rhs_failed)
        fail(agree, note_ce(agree.law, "central monoid present, coproduct structure fails"));
    if (!cm && rhs_holds)
        fail(agree, note_ce(agree.law, "coproduct structure present, no central monoid"));

    rep.laws = {std::move(unit_law), std::move(cones), std::move(agree)};
    return rep;
}

namespace {

using Fingerprint = std::pair<std::vector<ObjId>, std::vector<Arrow>>;

Fingerprint functor_fingerprint(const MFunctor& f, std::size_t base_objects,
                                const std::vector<Arrow>& probe) {
    Fingerprint fp;
    for (ObjId x = 0; x < base_objects; ++x) fp.first.push_back(f.obj(x));
    for (const Arrow& a : probe) fp.second.push_back(f.apply(a));
    return fp;
}

ValidationReport coref_impl(BackendPtr l, BackendPtr m, const Budget& b, bool fp_only) {
    require_input(l != nullptr && m != nullptr, "coreflection check needs two backends");
    ValidationReport rep;
    rep.backend = l->describe() + " into " + m->describe();
    rep.budget = b;
    const BackendPtr mon = monoid_mcat(m, b);
    const std::vector<MonoidObject>& mobjs = *monoid_objects_of(*mon);
    const std::vector<MFunctor> ups = enumerate_functors(l, mon, b, fp_only);
    const std::vector<MFunctor> dns = enumerate_functors(l, m, b, fp_only);

    LawResult counts{"coref-counts", Outcome::pass, 1, 0, false, std::nullopt};
    if (ups.size() != dns.size())
        fail(counts, note_ce(counts.law, std::to_string(ups.size()) + " against " +
                                             std::to_string(dns.size())));

    // fingerprints over a shared probe sweep; the forgetful translation
    // moves monoid indices onto their carriers
    LawResult match{"coref-matching", Outcome::pass, 0, 0, false, std::nullopt};
    bool truncated = false;
    const std::vector<Arrow> probe = probe_arrows(*l, b, truncated);
    match.truncated = truncated;
    std::map<Fingerprint, std::size_t> down;
    for (const MFunctor& f : dns) {
        const auto fresh =
            down.emplace(functor_fingerprint(f, l->object_count(), probe), 0);
        if (!fresh.second)
            fail(match, note_ce(match.law, "two target functors share a fingerprint"));
    }
    const auto carrier_sig = [&](const Signature& sig) {
        Signature out;
        out.codomain = mobjs.at(sig.codomain).carrier;
        for (ObjId i : sig.domain) out.domain.push_back(mobjs.at(i).carrier);
        return out;
    };
    for (const MFunctor& f : ups) {
        ++match.instances;
        Fingerprint fp = functor_fingerprint(f, l->object_count(), probe);
        for (ObjId& o : fp.first) o = mobjs.at(o).carrier;
        for (Arrow& a : fp.second) a = Arrow{carrier_sig(a.sig), a.code};
        const auto it = down.find(fp);
        if (it == down.end()) {
            fail(match, note_ce(match.law,
                                "translated functor missing on the target side: " +
                                    f.describe()));
        } else if (++it->second > 1) {
            fail(match, note_ce(match.law,
                                "two translated functors collapse onto one target"));
        }
    }
    rep.laws = {std::move(counts), std::move(match)};
    return rep;
}

}  // namespace

ValidationReport coreflection_check(BackendPtr l, BackendPtr m, const Budget& b) {
    return coref_impl(std::move(l), std::move(m), b, false);
}

ValidationReport fp_coreflection_check(BackendPtr l, BackendPtr m, const Budget& b) {
    return coref_impl(std::move(l), std::move(m), b, true);
}

}  // namespace mcat
