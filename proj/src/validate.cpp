#include "mcat/validate.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mcat {

bool ValidationReport::ok() const {
    for (const auto& l : laws)
        if (l.outcome != Outcome::pass) return false;
    return true;
}

bool ValidationReport::any_truncated() const {
    for (const auto& l : laws)
        if (l.truncated) return true;
    return false;
}

const Counterexample* ValidationReport::first_witness() const {
    for (const auto& l : laws)
        if (l.witness) return &*l.witness;
    return nullptr;
}

namespace {

// Bookkeeping for one law sweep. A sweep evaluates instances until a witness
// is found or the per-law cap is hit; candidates excluded by the budget are
// counted in skipped.
struct Sweep {
    LawResult res;
    std::uint64_t cap;
    bool capped = false;

    Sweep(std::string law, const Budget& b) : cap(b.max_enum) { res.law = std::move(law); }

    // True when another instance may still be evaluated.
    bool open() {
        if (res.witness) return false;
        if (res.instances >= cap) {
            capped = true;
            return false;
        }
        return true;
    }

    void count() { ++res.instances; }
    void skip() { ++res.skipped; }

    void fail(Counterexample ce) {
        ce.law = res.law;
        res.witness = std::move(ce);
    }

    LawResult take(const HomCache& cache) {
        if (res.witness)
            res.outcome = Outcome::counterexample;
        else if (res.instances == 0 && res.skipped > 0)
            res.outcome = Outcome::budget_exhausted;
        else
            res.outcome = Outcome::pass;
        res.truncated = capped || cache.truncated();
        return std::move(res);
    }
};

// All family maps with raw position map p on the given source: positions in
// the image carry the mapped source objects (empty result on a fiber
// mismatch), the remaining target positions range over all objects.
std::vector<FamilyMap> maps_for(const Backend& m, const std::vector<std::size_t>& p,
                                std::size_t tgt_arity, const std::vector<ObjId>& src) {
    std::vector<FamilyMap> out;
    std::vector<ObjId> tgt(tgt_arity, 0);
    std::vector<bool> forced(tgt_arity, false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (forced[p[i]] && tgt[p[i]] != src[i]) return out;
        tgt[p[i]] = src[i];
        forced[p[i]] = true;
    }
    std::vector<std::size_t> free_pos;
    for (std::size_t j = 0; j < tgt_arity; ++j)
        if (!forced[j]) free_pos.push_back(j);
    const std::size_t nobj = m.object_count();
    if (!free_pos.empty() && nobj == 0) return out;
    std::vector<ObjId> pick(free_pos.size(), 0);
    while (true) {
        for (std::size_t k = 0; k < free_pos.size(); ++k) tgt[free_pos[k]] = pick[k];
        FamilyMap s;
        s.map = p;
        s.source = src;
        s.target = tgt;
        out.push_back(std::move(s));
        if (free_pos.empty()) break;
        std::size_t i = pick.size();
        bool done = false;
        while (i > 0) {
            --i;
            if (++pick[i] < nobj) break;
            pick[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

Arrow act(const Backend& m, const FamilyMap& s, const Arrow& f, bool cart) {
    return cart ? cart_act(m, s, f) : m.sym_act(s, f);
}

// Shared law evaluators. The sweeps call these on enumerated instances and
// replay() calls them on witness data, so both always compute the same sides.

std::pair<Arrow, Arrow> eval_unit_left(const Backend& m, const Arrow& f) {
    std::vector<Arrow> ids;
    ids.reserve(f.sig.domain.size());
    for (ObjId x : f.sig.domain) ids.push_back(m.identity(x));
    return {m.compose(f, ids), f};
}

std::pair<Arrow, Arrow> eval_unit_right(const Backend& m, const Arrow& f) {
    std::vector<Arrow> fs{f};
    return {m.compose(m.identity(f.sig.codomain), fs), f};
}

std::pair<Arrow, Arrow> eval_assoc(const Backend& m, const Arrow& f,
                                   std::span<const Arrow> gs, std::span<const Arrow> hs) {
    const Arrow once = m.compose(f, gs);
    const Arrow lhs = m.compose(once, hs);
    std::vector<Arrow> inner;
    inner.reserve(gs.size());
    std::size_t at = 0;
    for (const Arrow& g : gs) {
        const std::size_t k = g.sig.domain.size();
        inner.push_back(m.compose(g, hs.subspan(at, k)));
        at += k;
    }
    return {lhs, m.compose(f, inner)};
}

std::pair<Arrow, Arrow> eval_act_compose(const Backend& m, const Arrow& f,
                                         const FamilyMap& sigma, const FamilyMap& rho,
                                         bool cart) {
    const Arrow lhs = act(m, rho, act(m, sigma, f, cart), cart);
    return {lhs, act(m, compose(rho, sigma), f, cart)};
}

std::pair<Arrow, Arrow> eval_compat_one(const Backend& m, const Arrow& f,
                                        std::span<const Arrow> gs,
                                        std::span<const FamilyMap> ss, bool cart) {
    std::vector<Arrow> acted;
    acted.reserve(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) acted.push_back(act(m, ss[i], gs[i], cart));
    const Arrow lhs = m.compose(f, acted);
    const Arrow base = m.compose(f, gs);
    std::vector<FamilyMap> parts(ss.begin(), ss.end());
    return {lhs, act(m, sum(parts), base, cart)};
}

std::pair<Arrow, Arrow> eval_compat_two(const Backend& m, const Arrow& f,
                                        std::span<const Arrow> gs, const FamilyMap& sigma,
                                        bool cart) {
    const Arrow sf = act(m, sigma, f, cart);
    const Arrow lhs = m.compose(sf, gs);
    std::vector<Arrow> inner;
    inner.reserve(sigma.map.size());
    std::vector<std::vector<ObjId>> gdoms;
    gdoms.reserve(gs.size());
    for (const Arrow& g : gs) gdoms.push_back(g.sig.domain);
    for (std::size_t i = 0; i < sigma.map.size(); ++i) inner.push_back(gs[sigma.map[i]]);
    const Arrow base = m.compose(f, inner);
    return {lhs, act(m, block_map(sigma, gdoms), base, cart)};
}

// --- sweep drivers -------------------------------------------------------

// Runs fn on every arrow within the budget, stopping when the sweep closes.
template <typename Fn>
void for_each_arrow(HomCache& cache, const Budget& b, Sweep& s, Fn&& fn) {
    for (const Signature& sig : all_signatures(cache.backend(), b.max_arity)) {
        if (!s.open()) return;
        for (const Arrow& f : cache.get(sig).arrows) {
            if (!s.open()) return;
            fn(f);
        }
    }
}

void sweep_hom_deterministic(const Backend& m, const Budget& b, HomCache& cache,
                             ValidationReport& rep) {
    Sweep s("hom-deterministic", b);
    for (const Signature& sig : all_signatures(m, b.max_arity)) {
        if (!s.open()) break;
        s.count();
        const HomSet h1 = m.hom(sig, b.max_enum);
        const HomSet h2 = m.hom(sig, b.max_enum);
        if (h1.arrows != h2.arrows || h1.truncated != h2.truncated) {
            Counterexample ce;
            ce.sig = sig;
            ce.note = "two enumerations of the same hom set differ";
            s.fail(std::move(ce));
        }
    }
    rep.laws.push_back(s.take(cache));
}

void sweep_hom_distinct(const Backend& m, const Budget& b, HomCache& cache,
                        ValidationReport& rep) {
    Sweep s("hom-distinct", b);
    for (const Signature& sig : all_signatures(m, b.max_arity)) {
        if (!s.open()) break;
        s.count();
        const HomSet& h = cache.get(sig);
        for (const Arrow& f : h.arrows) {
            if (f.sig != sig) {
                Counterexample ce;
                ce.sig = sig;
                ce.arrows = {f};
                ce.note = "enumerated arrow carries a different signature";
                s.fail(std::move(ce));
                break;
            }
        }
        if (!s.open()) break;
        std::vector<Arrow> sorted = h.arrows;
        std::sort(sorted.begin(), sorted.end());
        const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) {
            Counterexample ce;
            ce.sig = sig;
            ce.arrows = {*dup};
            ce.note = "duplicate arrow in hom enumeration";
            s.fail(std::move(ce));
        }
    }
    rep.laws.push_back(s.take(cache));
}

void sweep_identity_signature(const Backend& m, const Budget& b, HomCache& cache,
                              ValidationReport& rep) {
    Sweep s("identity-signature", b);
    for (ObjId x = 0; x < m.object_count(); ++x) {
        if (!s.open()) break;
        s.count();
        const Arrow id = m.identity(x);
        const Signature want{{x}, x};
        const HomSet& h = cache.get(want);
        const bool member =
            std::find(h.arrows.begin(), h.arrows.end(), id) != h.arrows.end();
        if (id.sig != want || (!member && !h.truncated)) {
            Counterexample ce;
            ce.sig = want;
            ce.arrows = {id};
            ce.note = id.sig != want ? "identity carries a different signature"
                                     : "identity missing from its hom set";
            s.fail(std::move(ce));
        }
    }
    rep.laws.push_back(s.take(cache));
}

void sweep_compose_signature(const Backend& m, const Budget& b, HomCache& cache,
                             ValidationReport& rep) {
    Sweep s("compose-signature", b);
    if (b.max_depth < 1) {
        s.skip();
        rep.laws.push_back(s.take(cache));
        return;
    }
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        each_arrow_tuple(cache, f.sig.domain, b.max_arity, [&](std::span<const Arrow> gs) {
            if (!s.open()) return false;
            s.count();
            Signature want;
            want.codomain = f.sig.codomain;
            for (const Arrow& g : gs)
                want.domain.insert(want.domain.end(), g.sig.domain.begin(),
                                   g.sig.domain.end());
            Counterexample ce;
            ce.arrows.push_back(f);
            ce.arrows.insert(ce.arrows.end(), gs.begin(), gs.end());
            try {
                const Arrow got = m.compose(f, gs);
                if (got.sig != want) {
                    ce.sig = want;
                    ce.lhs = got;
                    ce.note = "composite carries the wrong signature";
                    s.fail(std::move(ce));
                    return false;
                }
                const HomSet& h = cache.get(want);
                const bool member =
                    std::find(h.arrows.begin(), h.arrows.end(), got) != h.arrows.end();
                if (!member && !h.truncated) {
                    ce.sig = want;
                    ce.lhs = got;
                    ce.note = "composite missing from its hom set";
                    s.fail(std::move(ce));
                    return false;
                }
            } catch (const std::runtime_error& e) {
                ce.note = std::string("composition failed: ") + e.what();
                s.fail(std::move(ce));
                return false;
            }
            return true;
        });
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_unit_left(const Backend& m, const Budget& b, HomCache& cache,
                     ValidationReport& rep) {
    Sweep s("unit-left", b);
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        s.count();
        Counterexample ce;
        ce.arrows = {f};
        try {
            const auto [lhs, rhs] = eval_unit_left(m, f);
            if (lhs != rhs) {
                ce.lhs = lhs;
                ce.rhs = rhs;
                s.fail(std::move(ce));
            }
        } catch (const std::runtime_error& e) {
            ce.note = std::string("evaluation failed: ") + e.what();
            s.fail(std::move(ce));
        }
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_unit_right(const Backend& m, const Budget& b, HomCache& cache,
                      ValidationReport& rep) {
    Sweep s("unit-right", b);
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        s.count();
        Counterexample ce;
        ce.arrows = {f};
        try {
            const auto [lhs, rhs] = eval_unit_right(m, f);
            if (lhs != rhs) {
                ce.lhs = lhs;
                ce.rhs = rhs;
                s.fail(std::move(ce));
            }
        } catch (const std::runtime_error& e) {
            ce.note = std::string("evaluation failed: ") + e.what();
            s.fail(std::move(ce));
        }
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_assoc(const Backend& m, const Budget& b, HomCache& cache, ValidationReport& rep) {
    Sweep s("assoc", b);
    if (b.max_depth < 2) {
        s.skip();
        rep.laws.push_back(s.take(cache));
        return;
    }
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        each_arrow_tuple(cache, f.sig.domain, b.max_arity, [&](std::span<const Arrow> gs) {
            if (!s.open()) return false;
            std::vector<ObjId> mid;
            for (const Arrow& g : gs)
                mid.insert(mid.end(), g.sig.domain.begin(), g.sig.domain.end());
            std::vector<Arrow> gcopy(gs.begin(), gs.end());
            each_arrow_tuple(cache, mid, b.max_arity, [&](std::span<const Arrow> hs) {
                if (!s.open()) return false;
                s.count();
                Counterexample ce;
                ce.arrows.push_back(f);
                ce.arrows.insert(ce.arrows.end(), gcopy.begin(), gcopy.end());
                ce.arrows.insert(ce.arrows.end(), hs.begin(), hs.end());
                try {
                    const auto [lhs, rhs] = eval_assoc(m, f, gcopy, hs);
                    if (lhs != rhs) {
                        ce.lhs = lhs;
                        ce.rhs = rhs;
                        s.fail(std::move(ce));
                        return false;
                    }
                } catch (const std::runtime_error& e) {
                    ce.note = std::string("evaluation failed: ") + e.what();
                    s.fail(std::move(ce));
                    return false;
                }
                return true;
            });
            return s.open();
        });
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_act_identity(const Backend& m, const Budget& b, HomCache& cache,
                        ValidationReport& rep, bool cart) {
    Sweep s(cart ? "cart-identity" : "sym-identity", b);
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        s.count();
        Counterexample ce;
        ce.arrows = {f};
        try {
            const Arrow lhs = act(m, identity_map(f.sig.domain), f, cart);
            if (lhs != f) {
                ce.lhs = lhs;
                ce.rhs = f;
                s.fail(std::move(ce));
            }
        } catch (const std::runtime_error& e) {
            ce.note = std::string("action failed: ") + e.what();
            s.fail(std::move(ce));
        }
    });
    rep.laws.push_back(s.take(cache));
}

// All candidate maps out of `src`: permutations for the symmetric sweeps,
// arbitrary position maps with enumerated free target slots for the
// cartesian ones.
std::vector<FamilyMap> candidate_maps(const Backend& m, const std::vector<ObjId>& src,
                                      std::size_t max_arity, bool cart) {
    std::vector<FamilyMap> out;
    if (!cart) {
        for (const auto& p : all_permutations(src.size())) out.push_back(permutation_map(p, src));
        return out;
    }
    for (std::size_t tgt = 0; tgt <= max_arity; ++tgt)
        for (const auto& p : all_position_maps(src.size(), tgt))
            for (FamilyMap& fm : maps_for(m, p, tgt, src)) out.push_back(std::move(fm));
    return out;
}

void sweep_act_compose(const Backend& m, const Budget& b, HomCache& cache,
                       ValidationReport& rep, bool cart) {
    Sweep s(cart ? "cart-compose" : "sym-compose", b);
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        for (const FamilyMap& sigma : candidate_maps(m, f.sig.domain, b.max_arity, cart)) {
            if (!s.open()) return;
            for (const FamilyMap& rho : candidate_maps(m, sigma.target, b.max_arity, cart)) {
                if (!s.open()) return;
                s.count();
                Counterexample ce;
                ce.arrows = {f};
                ce.maps = {sigma, rho};
                try {
                    const auto [lhs, rhs] = eval_act_compose(m, f, sigma, rho, cart);
                    if (lhs != rhs) {
                        ce.lhs = lhs;
                        ce.rhs = rhs;
                        s.fail(std::move(ce));
                        return;
                    }
                } catch (const std::runtime_error& e) {
                    ce.note = std::string("action failed: ") + e.what();
                    s.fail(std::move(ce));
                    return;
                }
            }
        }
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_compat_one(const Backend& m, const Budget& b, HomCache& cache,
                      ValidationReport& rep, bool cart) {
    Sweep s(cart ? "cart-compat-one" : "sym-compat-one", b);
    if (b.max_depth < 1) {
        s.skip();
        rep.laws.push_back(s.take(cache));
        return;
    }
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        each_arrow_tuple(cache, f.sig.domain, b.max_arity, [&](std::span<const Arrow> gs) {
            if (!s.open()) return false;
            // per-slot candidate maps, then an odometer over the slots
            std::vector<std::vector<FamilyMap>> slot;
            slot.reserve(gs.size());
            for (const Arrow& g : gs)
                slot.push_back(candidate_maps(m, g.sig.domain, b.max_arity, cart));
            for (const auto& list : slot)
                if (list.empty()) return true;
            std::vector<std::size_t> idx(gs.size(), 0);
            std::vector<Arrow> gcopy(gs.begin(), gs.end());
            while (true) {
                if (!s.open()) return false;
                std::vector<FamilyMap> ss;
                ss.reserve(gs.size());
                std::size_t total = 0;
                for (std::size_t i = 0; i < gs.size(); ++i) {
                    ss.push_back(slot[i][idx[i]]);
                    total += ss.back().tgt_arity();
                }
                if (total > b.max_arity) {
                    s.skip();
                } else {
                    s.count();
                    Counterexample ce;
                    ce.arrows.push_back(f);
                    ce.arrows.insert(ce.arrows.end(), gcopy.begin(), gcopy.end());
                    ce.maps = ss;
                    try {
                        const auto [lhs, rhs] = eval_compat_one(m, f, gcopy, ss, cart);
                        if (lhs != rhs) {
                            ce.lhs = lhs;
                            ce.rhs = rhs;
                            s.fail(std::move(ce));
                            return false;
                        }
                    } catch (const std::runtime_error& e) {
                        ce.note = std::string("evaluation failed: ") + e.what();
                        s.fail(std::move(ce));
                        return false;
                    }
                }
                if (idx.empty()) break;
                std::size_t i = idx.size();
                bool done = false;
                while (i > 0) {
                    --i;
                    if (++idx[i] < slot[i].size()) break;
                    idx[i] = 0;
                    if (i == 0) done = true;
                }
                if (done) break;
            }
            return s.open();
        });
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_compat_two(const Backend& m, const Budget& b, HomCache& cache,
                      ValidationReport& rep, bool cart) {
    Sweep s(cart ? "cart-compat-two" : "sym-compat-two", b);
    if (b.max_depth < 1) {
        s.skip();
        rep.laws.push_back(s.take(cache));
        return;
    }
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        for (const FamilyMap& sigma : candidate_maps(m, f.sig.domain, b.max_arity, cart)) {
            if (!s.open()) return;
            // gs are indexed by target positions of sigma
            each_arrow_tuple(cache, sigma.target, b.max_arity,
                             [&](std::span<const Arrow> gs) {
                if (!s.open()) return false;
                std::size_t inner = 0;
                for (std::size_t i = 0; i < sigma.map.size(); ++i)
                    inner += gs[sigma.map[i]].sig.domain.size();
                if (inner > b.max_arity) {
                    s.skip();
                    return true;
                }
                s.count();
                Counterexample ce;
                ce.arrows.push_back(f);
                ce.arrows.insert(ce.arrows.end(), gs.begin(), gs.end());
                ce.maps = {sigma};
                try {
                    const auto [lhs, rhs] = eval_compat_two(m, f, gs, sigma, cart);
                    if (lhs != rhs) {
                        ce.lhs = lhs;
                        ce.rhs = rhs;
                        s.fail(std::move(ce));
                        return false;
                    }
                } catch (const std::runtime_error& e) {
                    ce.note = std::string("evaluation failed: ") + e.what();
                    s.fail(std::move(ce));
                    return false;
                }
                return true;
            });
        }
    });
    rep.laws.push_back(s.take(cache));
}

void sweep_factorization(const Backend& m, const Budget& b, HomCache& cache,
                         ValidationReport& rep) {
    Sweep s("cart-factorization", b);
    for_each_arrow(cache, b, s, [&](const Arrow& f) {
        for (const FamilyMap& sigma : candidate_maps(m, f.sig.domain, b.max_arity, true)) {
            if (!s.open()) return;
            Counterexample ce;
            ce.arrows = {f};
            ce.maps = {sigma};
            try {
                const Arrow base = cart_act(m, sigma, f);
                for (const Factorization& fac : all_block_factorizations(sigma)) {
                    if (!s.open()) return;
                    s.count();
                    const Arrow via = cart_act_via(m, fac, f);
                    if (via != base) {
                        ce.lhs = via;
                        ce.rhs = base;
                        ce.note = "action depends on the factorization";
                        s.fail(std::move(ce));
                        return;
                    }
                }
            } catch (const std::runtime_error& e) {
                ce.note = std::string("action failed: ") + e.what();
                s.fail(std::move(ce));
                return;
            }
        }
    });
    rep.laws.push_back(s.take(cache));
}

}  // namespace

ValidationReport validate_multicat(const Backend& m, const Budget& b) {
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    HomCache cache(m, b);
    sweep_hom_deterministic(m, b, cache, rep);
    sweep_hom_distinct(m, b, cache, rep);
    sweep_identity_signature(m, b, cache, rep);
    sweep_compose_signature(m, b, cache, rep);
    sweep_unit_left(m, b, cache, rep);
    sweep_unit_right(m, b, cache, rep);
    sweep_assoc(m, b, cache, rep);
    return rep;
}

ValidationReport validate_symmetric(const Backend& m, const Budget& b) {
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    HomCache cache(m, b);
    sweep_act_identity(m, b, cache, rep, false);
    sweep_act_compose(m, b, cache, rep, false);
    sweep_compat_one(m, b, cache, rep, false);
    sweep_compat_two(m, b, cache, rep, false);
    return rep;
}

ValidationReport validate_cartesian(const Backend& m, const Budget& b) {
    require_input(m.cartesian(), "cartesian laws need a cartesian backend");
    ValidationReport rep;
    rep.backend = m.describe();
    rep.budget = b;
    HomCache cache(m, b);
    sweep_act_identity(m, b, cache, rep, true);
    sweep_act_compose(m, b, cache, rep, true);
    sweep_compat_one(m, b, cache, rep, true);
    sweep_compat_two(m, b, cache, rep, true);
    sweep_factorization(m, b, cache, rep);
    return rep;
}

bool replay(const Backend& m, const Counterexample& ce, const Budget& b) {
    const bool cart = ce.law.rfind("cart-", 0) == 0;
    try {
        if (ce.law == "hom-deterministic") {
            const HomSet h1 = m.hom(ce.sig, b.max_enum);
            const HomSet h2 = m.hom(ce.sig, b.max_enum);
            return h1.arrows != h2.arrows || h1.truncated != h2.truncated;
        }
        if (ce.law == "hom-distinct") {
            const HomSet h = m.hom(ce.sig, b.max_enum);
            for (const Arrow& f : h.arrows)
                if (f.sig != ce.sig) return true;
            std::vector<Arrow> sorted = h.arrows;
            std::sort(sorted.begin(), sorted.end());
            return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        }
        if (ce.law == "identity-signature") {
            const Arrow id = m.identity(ce.sig.codomain);
            if (id.sig != ce.sig) return true;
            const HomSet h = m.hom(ce.sig, b.max_enum);
            const bool member =
                std::find(h.arrows.begin(), h.arrows.end(), id) != h.arrows.end();
            return !member && !h.truncated;
        }
        if (ce.law == "compose-signature") {
            const Arrow& f = ce.arrows.at(0);
            std::span<const Arrow> gs(ce.arrows.data() + 1, ce.arrows.size() - 1);
            Signature want;
            want.codomain = f.sig.codomain;
            for (const Arrow& g : gs)
                want.domain.insert(want.domain.end(), g.sig.domain.begin(),
                                   g.sig.domain.end());
            const Arrow got = m.compose(f, gs);
            if (got.sig != want) return true;
            const HomSet h = m.hom(want, b.max_enum);
            const bool member =
                std::find(h.arrows.begin(), h.arrows.end(), got) != h.arrows.end();
            return !member && !h.truncated;
        }
        if (ce.law == "unit-left") {
            const auto [lhs, rhs] = eval_unit_left(m, ce.arrows.at(0));
            return lhs != rhs;
        }
        if (ce.law == "unit-right") {
            const auto [lhs, rhs] = eval_unit_right(m, ce.arrows.at(0));
            return lhs != rhs;
        }
        if (ce.law == "assoc") {
            const Arrow& f = ce.arrows.at(0);
            const std::size_t n = f.sig.domain.size();
            std::span<const Arrow> gs(ce.arrows.data() + 1, n);
            std::size_t mid = 0;
            for (const Arrow& g : gs) mid += g.sig.domain.size();
            std::span<const Arrow> hs(ce.arrows.data() + 1 + n, mid);
            const auto [lhs, rhs] = eval_assoc(m, f, gs, hs);
            return lhs != rhs;
        }
        if (ce.law == "sym-identity" || ce.law == "cart-identity") {
            const Arrow& f = ce.arrows.at(0);
            return act(m, identity_map(f.sig.domain), f, cart) != f;
        }
        if (ce.law == "sym-compose" || ce.law == "cart-compose") {
            const auto [lhs, rhs] =
                eval_act_compose(m, ce.arrows.at(0), ce.maps.at(0), ce.maps.at(1), cart);
            return lhs != rhs;
        }
        if (ce.law == "sym-compat-one" || ce.law == "cart-compat-one") {
            std::span<const Arrow> gs(ce.arrows.data() + 1, ce.arrows.size() - 1);
            const auto [lhs, rhs] = eval_compat_one(m, ce.arrows.at(0), gs, ce.maps, cart);
            return lhs != rhs;
        }
        if (ce.law == "sym-compat-two" || ce.law == "cart-compat-two") {
            std::span<const Arrow> gs(ce.arrows.data() + 1, ce.arrows.size() - 1);
            const auto [lhs, rhs] =
                eval_compat_two(m, ce.arrows.at(0), gs, ce.maps.at(0), cart);
            return lhs != rhs;
        }
        if (ce.law == "cart-factorization") {
            const Arrow& f = ce.arrows.at(0);
            const FamilyMap& sigma = ce.maps.at(0);
            const Arrow base = cart_act(m, sigma, f);
            for (const Factorization& fac : all_block_factorizations(sigma))
                if (cart_act_via(m, fac, f) != base) return true;
            return false;
        }
    } catch (const std::runtime_error&) {
        // the recorded failure was (or has become) a thrown action
        return true;
    }
    throw InputError("replay: unknown law " + ce.law);
}

}  // namespace mcat
