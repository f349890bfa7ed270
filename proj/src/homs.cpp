#include "mcat/homs.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mcat {

namespace {

bool identity_raw(const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

// Shared shape of the functor-object backends: objects index a functor
// list, an arrow stores one component arrow per base point, flat-encoded as
// [len, code...] per point. Composition and the actions are pointwise in
// the component target; subclasses supply the object translation and the
// naturality filter.
class FamilyBackend : public Backend {
  public:
    FamilyBackend(BackendPtr target, const Budget& b, std::size_t points)
        : n_(std::move(target)), b_(b), points_(points) {}

    virtual ObjId comp_obj(ObjId f, std::size_t a) const = 0;
    virtual bool admit(const Signature& sig, const std::vector<Arrow>& comps) const = 0;

    Arrow encode(const Signature& sig, const std::vector<Arrow>& comps) const {
        Arrow out;
        out.sig = sig;
        for (const Arrow& c : comps) {
            out.code.push_back(c.code.size());
            out.code.insert(out.code.end(), c.code.begin(), c.code.end());
        }
        return out;
    }

    std::vector<Arrow> decode(const Arrow& f) const {
        std::vector<Arrow> comps;
        comps.reserve(points_);
        std::size_t at = 0;
        for (std::size_t a = 0; a < points_; ++a) {
            require_input(at < f.code.size() || points_ == 0,
                          describe() + ": malformed component encoding");
            const std::size_t len = static_cast<std::size_t>(f.code.at(at++));
            Arrow c;
            c.sig.codomain = comp_obj(f.sig.codomain, a);
            for (ObjId s : f.sig.domain) c.sig.domain.push_back(comp_obj(s, a));
            require_input(at + len <= f.code.size(),
                          describe() + ": malformed component encoding");
            c.code.assign(f.code.begin() + static_cast<std::ptrdiff_t>(at),
                          f.code.begin() + static_cast<std::ptrdiff_t>(at + len));
            at += len;
            comps.push_back(std::move(c));
        }
        return comps;
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        check_signature(*this, sig);
        HomSet out;
        bool trunc = false;
        std::vector<std::vector<Arrow>> lists(points_);
        for (std::size_t a = 0; a < points_; ++a) {
            Signature cs;
            cs.codomain = comp_obj(sig.codomain, a);
            for (ObjId f : sig.domain) cs.domain.push_back(comp_obj(f, a));
            HomSet h = n_->hom(cs, max_enum);
            trunc |= h.truncated;
            lists[a] = std::move(h.arrows);
            if (lists[a].empty()) {
                out.truncated = trunc;
                return out;
            }
        }
        std::vector<std::size_t> idx(points_, 0);
        std::uint64_t scanned = 0;
        while (true) {
            if (scanned++ >= b_.max_enum) {
                out.truncated = true;
                break;
            }
            std::vector<Arrow> comps;
            comps.reserve(points_);
            for (std::size_t a = 0; a < points_; ++a) comps.push_back(lists[a][idx[a]]);
            if (admit(sig, comps)) {
                out.arrows.push_back(encode(sig, comps));
                if (out.arrows.size() >= max_enum) {
                    out.truncated = true;
                    break;
                }
            }
            if (points_ == 0) break;
            std::size_t i = points_;
            bool moved = false;
            while (i > 0) {
                --i;
                if (++idx[i] < lists[i].size()) {
                    moved = true;
                    break;
                }
                idx[i] = 0;
            }
            if (!moved) break;
        }
        out.truncated |= trunc;
        return out;
    }

    Arrow identity(ObjId x) const override {
        require_input(x < object_count(), describe() + ": object out of range");
        std::vector<Arrow> comps;
        comps.reserve(points_);
        for (std::size_t a = 0; a < points_; ++a)
            comps.push_back(n_->identity(comp_obj(x, a)));
        return encode(Signature{{x}, x}, comps);
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Signature sig;
        sig.codomain = f.sig.codomain;
        for (const Arrow& g : gs)
            sig.domain.insert(sig.domain.end(), g.sig.domain.begin(), g.sig.domain.end());
        const std::vector<Arrow> fc = decode(f);
        std::vector<std::vector<Arrow>> gc;
        gc.reserve(gs.size());
        for (const Arrow& g : gs) gc.push_back(decode(g));
        std::vector<Arrow> comps;
        comps.reserve(points_);
        for (std::size_t a = 0; a < points_; ++a) {
            std::vector<Arrow> slot;
            slot.reserve(gs.size());
            for (std::size_t j = 0; j < gs.size(); ++j) slot.push_back(gc[j][a]);
            comps.push_back(n_->compose(fc[a], slot));
        }
        return encode(sig, comps);
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        check_family_map(s);
        if (s.source != f.sig.domain)
            throw UnsupportedAction(describe() + ": map source differs from the domain");
        if (!s.is_bijective())
            throw UnsupportedAction(describe() + ": action of a non-bijective map");
        const std::vector<Arrow> fc = decode(f);
        std::vector<Arrow> comps;
        comps.reserve(points_);
        for (std::size_t a = 0; a < points_; ++a) {
            FamilyMap sa;
            sa.map = s.map;
            sa.source = fc[a].sig.domain;
            sa.target.resize(s.map.size());
            for (std::size_t i = 0; i < s.map.size(); ++i)
                sa.target[s.map[i]] = sa.source[i];
            comps.push_back(n_->sym_act(sa, fc[a]));
        }
        return encode(Signature{s.target, f.sig.codomain}, comps);
    }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        require_input(cartesian(), describe() + ": contraction needs a cartesian target");
        require_input(pos + 1 < f.arity() && f.sig.domain[pos] == f.sig.domain[pos + 1],
                      describe() + ": contraction needs equal adjacent positions");
        const std::vector<Arrow> fc = decode(f);
        Signature sig = f.sig;
        sig.domain.erase(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos + 1));
        std::vector<Arrow> comps;
        comps.reserve(points_);
        for (std::size_t a = 0; a < points_; ++a) comps.push_back(n_->contract(fc[a], pos));
        return encode(sig, comps);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        require_input(cartesian(), describe() + ": weakening needs a cartesian target");
        require_input(pos <= f.arity() && x < object_count(),
                      describe() + ": weakening position or object out of range");
        const std::vector<Arrow> fc = decode(f);
        Signature sig = f.sig;
        sig.domain.insert(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        std::vector<Arrow> comps;
        comps.reserve(points_);
        for (std::size_t a = 0; a < points_; ++a)
            comps.push_back(n_->weaken(fc[a], pos, comp_obj(x, a)));
        return encode(sig, comps);
    }

    bool cartesian() const override { return n_->cartesian(); }

    std::string arrow_label(const Arrow& f) const override {
        std::ostringstream os;
        os << "{";
        const std::vector<Arrow> fc = decode(f);
        for (std::size_t a = 0; a < fc.size(); ++a)
            os << (a ? ";" : "") << n_->arrow_label(fc[a]);
        os << "}";
        return os.str();
    }

  protected:
    BackendPtr n_;
    Budget b_;
    std::size_t points_;
};

class IHomBackend final : public FamilyBackend {
  public:
    IHomBackend(BackendPtr m, BackendPtr n, const Budget& b, bool fp)
        : FamilyBackend(std::move(n), b, m->object_count()), m_(std::move(m)), fp_(fp) {
        objs_ = enumerate_functors(m_, n_, b_, fp_);
    }

    BackendKind kind() const override { return BackendKind::ihom; }
    std::string describe() const override {
        return (fp_ ? std::string("fphom(") : std::string("ihom(")) + m_->describe() +
               "," + n_->describe() + ")";
    }
    std::size_t object_count() const override { return objs_.size(); }
    std::string object_name(ObjId x) const override { return "F" + std::to_string(x); }

    ObjId comp_obj(ObjId f, std::size_t a) const override {
        return objs_.at(f).obj(static_cast<ObjId>(a));
    }

    bool admit(const Signature& sig, const std::vector<Arrow>& comps) const override {
        std::vector<MFunctor> srcs;
        srcs.reserve(sig.arity());
        for (ObjId f : sig.domain) srcs.push_back(objs_[f]);
        return check_transform(*m_, b_, srcs, objs_[sig.codomain], comps);
    }

    const std::vector<MFunctor>& objects() const { return objs_; }

  private:
    BackendPtr m_;
    bool fp_;
    std::vector<MFunctor> objs_;
};

// functor from a category into the arity-one part of a backend
struct CatFunctor {
    std::vector<ObjId> obj_map;
    std::vector<Arrow> img;  // per category arrow id
};

class SeqExpBackend final : public FamilyBackend {
  public:
    SeqExpBackend(const FiniteCategory& c, BackendPtr m, const Budget& b)
        : FamilyBackend(std::move(m), b, c.objects.size()), c_(c) {
        const std::size_t nc = c_.objects.size();
        const std::size_t nd = n_->object_count();
        if (nc > 0 && nd == 0) return;
        std::vector<bool> is_id(c_.arrows.size(), false);
        for (ArrId a : c_.identities) is_id[a] = true;
        std::vector<ObjId> omap(nc, 0);
        while (true) {
            std::vector<std::vector<Arrow>> cand(c_.arrows.size());
            bool feasible = true;
            for (ArrId a = 0; a < c_.arrows.size() && feasible; ++a) {
                if (is_id[a]) {
                    cand[a] = {n_->identity(omap[c_.arrows[a].dom])};
                    continue;
                }
                const Signature want{{omap[c_.arrows[a].dom]}, omap[c_.arrows[a].cod]};
                HomSet h = n_->hom(want, b_.max_enum);
                if (h.truncated)
                    throw BudgetError(describe() +
                                      ": arity-one hom-sets truncate during enumeration");
                cand[a] = std::move(h.arrows);
                feasible = !cand[a].empty();
            }
            if (feasible) {
                std::vector<std::size_t> pick(c_.arrows.size(), 0);
                while (true) {
                    bool good = true;
                    for (ArrId g = 0; g < c_.arrows.size() && good; ++g)
                        for (ArrId f = 0; f < c_.arrows.size() && good; ++f) {
                            const ArrId gf = c_.comp[g][f];
                            if (gf == kNoArr) continue;
                            good = n_->compose(cand[g][pick[g]],
                                               std::vector<Arrow>{cand[f][pick[f]]}) ==
                                   cand[gf][pick[gf]];
                        }
                    if (good) {
                        CatFunctor F;
                        F.obj_map = omap;
                        for (ArrId a = 0; a < c_.arrows.size(); ++a)
                            F.img.push_back(cand[a][pick[a]]);
                        fs_.push_back(std::move(F));
                    }
                    std::size_t i = pick.size();
                    bool moved = false;
                    while (i > 0) {
                        --i;
                        if (++pick[i] < cand[i].size()) {
                            moved = true;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (!moved) break;
                }
            }
            if (nc == 0) break;
            std::size_t i = nc;
            bool moved = false;
            while (i > 0) {
                --i;
                if (++omap[i] < nd) {
                    moved = true;
                    break;
                }
                omap[i] = 0;
            }
            if (!moved) break;
        }
    }

    BackendKind kind() const override { return BackendKind::seqexp; }
    std::string describe() const override {
        return "seqexp(" + c_.name + "," + n_->describe() + ")";
    }
    std::size_t object_count() const override { return fs_.size(); }
    std::string object_name(ObjId x) const override { return "F" + std::to_string(x); }

    ObjId comp_obj(ObjId f, std::size_t a) const override { return fs_.at(f).obj_map[a]; }

    // naturality against arity-one images only
    bool admit(const Signature& sig, const std::vector<Arrow>& comps) const override {
        const CatFunctor& tgt = fs_[sig.codomain];
        for (ArrId a = 0; a < c_.arrows.size(); ++a) {
            const ObjId x = c_.arrows[a].dom;
            const ObjId y = c_.arrows[a].cod;
            const Arrow lhs = n_->compose(tgt.img[a], std::vector<Arrow>{comps[x]});
            std::vector<Arrow> gs;
            gs.reserve(sig.arity());
            for (ObjId s : sig.domain) gs.push_back(fs_[s].img[a]);
            if (lhs != n_->compose(comps[y], gs)) return false;
        }
        return true;
    }

    const std::vector<CatFunctor>& functors() const { return fs_; }

  private:
    FiniteCategory c_;
    std::vector<CatFunctor> fs_;
};

class MonBackend final : public Backend {
  public:
    MonBackend(BackendPtr m, const Budget& b) : m_(std::move(m)), b_(b) {
        for (ObjId x = 0; x < m_->object_count(); ++x) {
            std::size_t k = 0;
            for (MonoidOn& c : commutative_monoids_on(*m_, x, b_)) {
                objs_.push_back(MonoidObject{x, std::move(c)});
                names_.push_back(m_->object_name(x) + ":" + std::to_string(k++));
            }
        }
    }

    BackendKind kind() const override { return BackendKind::cmon; }
    std::string describe() const override { return "cmon(" + m_->describe() + ")"; }
    std::size_t object_count() const override { return objs_.size(); }
    std::string object_name(ObjId x) const override { return names_.at(x); }
    bool cartesian() const override { return m_->cartesian(); }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        check_signature(*this, sig);
        HomSet out;
        const HomSet base = m_->hom(carrier_sig(sig), max_enum);
        out.truncated = base.truncated;
        for (const Arrow& raw : base.arrows)
            if (armon(raw, sig)) out.arrows.push_back(wrap(raw, sig));
        return out;
    }

    Arrow identity(ObjId x) const override {
        require_input(x < objs_.size(), describe() + ": object out of range");
        return wrap(m_->identity(objs_[x].carrier), Signature{{x}, x});
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Signature sig;
        sig.codomain = f.sig.codomain;
        for (const Arrow& g : gs)
            sig.domain.insert(sig.domain.end(), g.sig.domain.begin(), g.sig.domain.end());
        std::vector<Arrow> raw_gs;
        raw_gs.reserve(gs.size());
        for (const Arrow& g : gs) raw_gs.push_back(unwrap(g));
        return wrap(m_->compose(unwrap(f), raw_gs), sig);
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        check_family_map(s);
        if (s.source != f.sig.domain)
            throw UnsupportedAction(describe() + ": map source differs from the domain");
        FamilyMap cs;
        cs.map = s.map;
        for (ObjId i : s.source) cs.source.push_back(objs_.at(i).carrier);
        for (ObjId i : s.target) cs.target.push_back(objs_.at(i).carrier);
        return wrap(m_->sym_act(cs, unwrap(f)), Signature{s.target, f.sig.codomain});
    }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        require_input(pos + 1 < f.arity() && f.sig.domain[pos] == f.sig.domain[pos + 1],
                      describe() + ": contraction needs equal adjacent positions");
        Signature sig = f.sig;
        sig.domain.erase(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos + 1));
        return wrap(m_->contract(unwrap(f), pos), sig);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        require_input(pos <= f.arity() && x < objs_.size(),
                      describe() + ": weakening position or object out of range");
        Signature sig = f.sig;
        sig.domain.insert(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        return wrap(m_->weaken(unwrap(f), pos, objs_[x].carrier), sig);
    }

    std::string arrow_label(const Arrow& f) const override {
        return m_->arrow_label(unwrap(f));
    }

    const std::vector<MonoidObject>& objects() const { return objs_; }
    const Backend& base() const { return *m_; }

    Signature carrier_sig(const Signature& sig) const {
        Signature cs;
        cs.codomain = objs_.at(sig.codomain).carrier;
        for (ObjId i : sig.domain) cs.domain.push_back(objs_.at(i).carrier);
        return cs;
    }

    Arrow unwrap(const Arrow& f) const { return Arrow{carrier_sig(f.sig), f.code}; }
    Arrow wrap(const Arrow& raw, const Signature& sig) const { return Arrow{sig, raw.code}; }

    // units map to the unit, multiplications interchange slotwise
    bool armon(const Arrow& raw, const Signature& sig) const {
        const MonoidObject& cod = objs_[sig.codomain];
        std::vector<Arrow> units;
        std::vector<Arrow> muls;
        units.reserve(sig.arity());
        muls.reserve(sig.arity());
        for (ObjId i : sig.domain) {
            units.push_back(objs_[i].structure.unit);
            muls.push_back(objs_[i].structure.mul);
        }
        if (m_->compose(raw, units) != cod.structure.unit) return false;
        const Arrow lhs = m_->compose(raw, muls);
        const Arrow core =
            m_->compose(cod.structure.mul, std::vector<Arrow>{raw, raw});
        if (sig.arity() == 0) return lhs == core;
        const FamilyMap tr =
            transpose_map(2, sig.arity(), core.sig.domain, lhs.sig.domain);
        try {
            return lhs == m_->sym_act(tr, core);
        } catch (const UnsupportedAction&) {
            return false;
        }
    }

  private:
    BackendPtr m_;
    Budget b_;
    std::vector<MonoidObject> objs_;
    std::vector<std::string> names_;
};

}  // namespace

bool check_transform(const Backend& base, const Budget& b,
                     const std::vector<MFunctor>& sources, const MFunctor& target,
                     const std::vector<Arrow>& comps) {
    const Backend& n = *target.dst;
    const std::size_t ns = sources.size();
    require_input(comps.size() == base.object_count(),
                  "transform needs one component per base object");
    for (ObjId x = 0; x < base.object_count(); ++x) {
        Signature want;
        want.codomain = target.obj(x);
        for (const MFunctor& s : sources) want.domain.push_back(s.obj(x));
        if (comps[x].sig != want) return false;
    }
    HomCache cache(base, b);
    std::uint64_t used = 0;
    for (const Signature& sig : all_signatures(base, b.max_arity)) {
        for (const Arrow& f : cache.get(sig).arrows) {
            if (used++ >= b.max_enum) return true;  // verified on the swept part
            std::vector<Arrow> dom_comps;
            dom_comps.reserve(f.arity());
            for (ObjId x : f.sig.domain) dom_comps.push_back(comps[x]);
            const Arrow lhs = n.compose(target.apply(f), dom_comps);
            std::vector<Arrow> imgs;
            imgs.reserve(ns);
            for (const MFunctor& s : sources) imgs.push_back(s.apply(f));
            const Arrow core = n.compose(comps[f.sig.codomain], imgs);
            const FamilyMap tr =
                transpose_map(ns, f.arity(), core.sig.domain, lhs.sig.domain);
            if (identity_raw(tr.map)) {
                if (lhs != core) return false;
                continue;
            }
            try {
                if (lhs != n.sym_act(tr, core)) return false;
            } catch (const UnsupportedAction&) {
                return false;
            }
        }
    }
    return true;
}

BackendPtr internal_hom(BackendPtr m, BackendPtr n, const Budget& b) {
    require_input(m != nullptr && n != nullptr, "internal hom needs two backends");
    return std::make_shared<IHomBackend>(std::move(m), std::move(n), b, false);
}

BackendPtr fp_hom(BackendPtr m, BackendPtr n, const Budget& b) {
    require_input(m != nullptr && n != nullptr, "internal hom needs two backends");
    return std::make_shared<IHomBackend>(std::move(m), std::move(n), b, true);
}

const std::vector<MFunctor>* hom_objects_of(const Backend& h) {
    if (h.kind() != BackendKind::ihom) return nullptr;
    return &static_cast<const IHomBackend&>(h).objects();
}

std::vector<Arrow> transform_components(const Backend& h, const Arrow& f) {
    require_input(h.kind() == BackendKind::ihom || h.kind() == BackendKind::seqexp,
                  h.describe() + ": not a component-family backend");
    return static_cast<const FamilyBackend&>(h).decode(f);
}

BackendPtr monoid_mcat(BackendPtr m, const Budget& b) {
    require_input(m != nullptr, "monoid construction needs a backend");
    return std::make_shared<MonBackend>(std::move(m), b);
}

const std::vector<MonoidObject>* monoid_objects_of(const Backend& h) {
    if (h.kind() != BackendKind::cmon) return nullptr;
    return &static_cast<const MonBackend&>(h).objects();
}

FiniteCategory cmon_category(BackendPtr m, const Budget& b) {
    const BackendPtr mon = monoid_mcat(std::move(m), b);
    FiniteCategory cat = underlying_category(*mon, b);
    cat.name = mon->describe();
    return cat;
}

PreadditiveCategory cmon_preadditive(BackendPtr m, const Budget& b) {
    require_input(m != nullptr && m->cartesian(),
                  "the enrichment formulas need contractions and weakenings");
    const BackendPtr mon = monoid_mcat(std::move(m), b);
    const std::vector<MonoidObject>& mobjs =
        static_cast<const MonBackend&>(*mon).objects();
    const UnarySlice slice = unary_slice(*mon, b);
    PreadditiveCategory out;
    out.cat = slice.cat;
    out.cat.name = mon->describe();
    const std::size_t nobj = mon->object_count();
    out.enr.zero.assign(nobj, std::vector<ArrId>(nobj, 0));
    // the codomain monoid itself provides zero and addition
    for (ObjId y = 0; y < nobj; ++y) {
        const Arrow unit_y{Signature{{}, y}, mobjs[y].structure.unit.code};
        for (ObjId x = 0; x < nobj; ++x) {
            const Arrow z = mon->weaken(unit_y, 0, x);
            const auto it = slice.index.find(z);
            require_input(it != slice.index.end(),
                          mon->describe() + ": weakened unit escapes the arity-one slice");
            out.enr.zero[x][y] = it->second;
        }
    }
    std::vector<Arrow> arrows(slice.cat.arrows.size());
    for (const auto& [a, id] : slice.index) arrows[id] = a;
    for (ArrId f = 0; f < arrows.size(); ++f) {
        for (ArrId g = 0; g < arrows.size(); ++g) {
            if (slice.cat.arrows[f].dom != slice.cat.arrows[g].dom ||
                slice.cat.arrows[f].cod != slice.cat.arrows[g].cod)
                continue;
            const ObjId y = slice.cat.arrows[f].cod;
            const Arrow mul_y{Signature{{y, y}, y}, mobjs[y].structure.mul.code};
            const Arrow both =
                mon->compose(mul_y, std::vector<Arrow>{arrows[f], arrows[g]});
            const Arrow sum = mon->contract(both, 0);
            const auto it = slice.index.find(sum);
            require_input(it != slice.index.end(),
                          mon->describe() + ": contracted sum escapes the arity-one slice");
            out.enr.add[{f, g}] = it->second;
        }
    }
    check_enrichment(out.cat, out.enr);
    return out;
}

BackendPtr seq_exponent(const FiniteCategory& c, BackendPtr m, const Budget& b) {
    require_input(m != nullptr, "exponent needs a backend");
    return std::make_shared<SeqExpBackend>(c, std::move(m), b);
}

IsoReport iso_unaryhom_seqexp(const FiniteCategory& c, BackendPtr m, const Budget& b) {
    IsoReport rep;
    const BackendPtr lhs = internal_hom(unary(c), m, b);
    const BackendPtr rhs = seq_exponent(c, m, b);
    const std::vector<MFunctor>& lobjs = *hom_objects_of(*lhs);
    const auto& robjs = static_cast<const SeqExpBackend&>(*rhs).functors();
    if (lobjs.size() != robjs.size()) {
        rep.ok = false;
        rep.detail = "object counts differ: " + std::to_string(lobjs.size()) + " vs " +
                     std::to_string(robjs.size());
        return rep;
    }
    // object bijection by functor data: object row plus arrow images
    using Key = std::pair<std::vector<ObjId>, std::vector<Arrow>>;
    std::map<Key, ObjId> rindex;
    for (ObjId i = 0; i < robjs.size(); ++i) {
        const bool fresh =
            rindex.emplace(Key{robjs[i].obj_map, robjs[i].img}, i).second;
        if (!fresh) {
            rep.ok = false;
            rep.detail = "duplicate functor on the exponent side";
            return rep;
        }
    }
    std::vector<ObjId> to_r(lobjs.size());
    for (ObjId i = 0; i < lobjs.size(); ++i) {
        Key k;
        k.first = lobjs[i].obj_map;
        for (ArrId a = 0; a < c.arrows.size(); ++a) {
            const Arrow src{Signature{{c.arrows[a].dom}, c.arrows[a].cod}, {a}};
            k.second.push_back(lobjs[i].apply(src));
        }
        const auto it = rindex.find(k);
        if (it == rindex.end()) {
            rep.ok = false;
            rep.detail = "hom-side functor missing from the exponent side: " +
                         lobjs[i].describe();
            return rep;
        }
        to_r[i] = it->second;
    }
    // arity-one hom-sets must agree componentwise, and identities and
    // composition must transport
    std::size_t hom_pairs = 0;
    std::size_t composites = 0;
    std::map<std::pair<ObjId, ObjId>, std::vector<std::vector<Arrow>>> lcomps, rcomps;
    for (ObjId i = 0; i < lobjs.size(); ++i) {
        for (ObjId j = 0; j < lobjs.size(); ++j) {
            const HomSet hl = lhs->hom(Signature{{i}, j}, b.max_enum);
            const HomSet hr = rhs->hom(Signature{{to_r[i]}, to_r[j]}, b.max_enum);
            std::vector<std::vector<Arrow>> cl, cr;
            for (const Arrow& f : hl.arrows) cl.push_back(transform_components(*lhs, f));
            for (const Arrow& f : hr.arrows) cr.push_back(transform_components(*rhs, f));
            std::sort(cl.begin(), cl.end());
            std::sort(cr.begin(), cr.end());
            if (cl != cr) {
                rep.ok = false;
                rep.detail = "arity-one hom-sets differ at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")";
                return rep;
            }
            ++hom_pairs;
        }
        if (transform_components(*lhs, lhs->identity(i)) !=
            transform_components(*rhs, rhs->identity(to_r[i]))) {
            rep.ok = false;
            rep.detail = "identity components differ at " + std::to_string(i);
            return rep;
        }
    }
    // composition transport on all composable arity-one pairs, capped; the
    // matching exponent arrow is the one with the same components
    const auto& fam_rhs = static_cast<const FamilyBackend&>(*rhs);
    const auto carry = [&](const Arrow& f, ObjId ri, ObjId rj) {
        return fam_rhs.encode(Signature{{ri}, rj}, transform_components(*lhs, f));
    };
    std::uint64_t used = 0;
    for (ObjId i = 0; i < lobjs.size() && used < b.max_enum; ++i) {
        for (ObjId j = 0; j < lobjs.size() && used < b.max_enum; ++j) {
            const HomSet hij = lhs->hom(Signature{{i}, j}, b.max_enum);
            for (ObjId k = 0; k < lobjs.size() && used < b.max_enum; ++k) {
                const HomSet hjk = lhs->hom(Signature{{j}, k}, b.max_enum);
                for (const Arrow& ps : hjk.arrows) {
                    for (const Arrow& ph : hij.arrows) {
                        if (used++ >= b.max_enum) break;
                        const Arrow lc = lhs->compose(ps, std::vector<Arrow>{ph});
                        const Arrow rc = rhs->compose(
                            carry(ps, to_r[j], to_r[k]),
                            std::vector<Arrow>{carry(ph, to_r[i], to_r[j])});
                        if (transform_components(*lhs, lc) !=
                            transform_components(*rhs, rc)) {
                            rep.ok = false;
                            rep.detail = "composition differs across the bijection";
                            return rep;
                        }
                        ++composites;
                    }
                }
            }
        }
    }
    rep.detail = "objects: " + std::to_string(lobjs.size()) +
                 ", arity-one hom pairs: " + std::to_string(hom_pairs) +
                 ", composites transported: " + std::to_string(composites);
    return rep;
}

PointwiseHom pointwise_universal(BackendPtr m, BackendPtr n,
                                 const std::vector<MFunctor>& family, const Budget& b) {
    PointwiseHom out;
    require_input(m != nullptr && n != nullptr, "pointwise search needs two backends");
    const std::size_t k = family.size();
    const std::size_t pts = m->object_count();
    std::vector<Arrow> us;
    MFunctor h;
    h.kind = FunctorKind::graph;
    h.src = m;
    h.dst = n;
    for (ObjId x = 0; x < pts; ++x) {
        std::vector<ObjId> fam;
        fam.reserve(k);
        for (const MFunctor& f : family) fam.push_back(f.obj(x));
        const auto u = n->universal_arrow(fam);
        require_input(u.has_value(),
                      n->describe() + ": no designated representing arrow at " +
                          m->object_name(x));
        us.push_back(*u);
        h.obj_map.push_back(u->sig.codomain);
    }
    // solve for the arrow action through the representing arrows
    HomCache cache(*m, b);
    for (const Signature& sig : all_signatures(*m, b.max_arity)) {
        const HomSet& hs = cache.get(sig);
        if (hs.truncated) {
            out.detail = "source hom-set truncates: " + signature_label(*m, sig);
            return out;
        }
        for (const Arrow& f : hs.arrows) {
            std::vector<Arrow> imgs;
            imgs.reserve(k);
            for (const MFunctor& ff : family) imgs.push_back(ff.apply(f));
            const Arrow core = n->compose(us[f.sig.codomain], imgs);
            std::vector<Arrow> dom_us;
            dom_us.reserve(f.arity());
            std::vector<ObjId> lhs_dom;
            for (ObjId x : f.sig.domain) {
                dom_us.push_back(us[x]);
                lhs_dom.insert(lhs_dom.end(), us[x].sig.domain.begin(),
                               us[x].sig.domain.end());
            }
            Arrow want = core;
            const FamilyMap tr = transpose_map(k, f.arity(), core.sig.domain, lhs_dom);
            if (!identity_raw(tr.map)) want = n->sym_act(tr, core);
            Signature hsig;
            hsig.codomain = h.obj_map[f.sig.codomain];
            for (ObjId x : f.sig.domain) hsig.domain.push_back(h.obj_map[x]);
            const HomSet cands = n->hom(hsig, b.max_enum);
            std::vector<Arrow> sols;
            for (const Arrow& cand : cands.arrows)
                if (n->compose(cand, dom_us) == want) sols.push_back(cand);
            if (sols.size() != 1) {
                out.detail = "arrow action at " + m->arrow_label(f) + " admits " +
                             std::to_string(sols.size()) + " solutions";
                return out;
            }
            h.graph[f] = sols.front();
        }
    }
    const FunctorCheck chk = check_functor(h, b, false);
    if (!chk.ok) {
        out.detail = "induced assignment fails functor laws: " + chk.detail;
        return out;
    }
    if (!check_transform(*m, b, family, h, us)) {
        out.detail = "representing components are not jointly natural";
        return out;
    }
    // universality: every transform out of the family factors uniquely
    // through the representing components
    const auto transforms_into = [&](const MFunctor& tgt,
                                     const std::vector<MFunctor>& srcs) {
        std::vector<std::vector<Arrow>> found;
        std::vector<std::vector<Arrow>> lists(pts);
        for (ObjId x = 0; x < pts; ++x) {
            Signature cs;
            cs.codomain = tgt.obj(x);
            for (const MFunctor& s : srcs) cs.domain.push_back(s.obj(x));
            HomSet hh = n->hom(cs, b.max_enum);
            if (hh.truncated)
                throw BudgetError("component hom-set truncates during the universality sweep");
            lists[x] = std::move(hh.arrows);
            if (lists[x].empty()) return found;
        }
        std::vector<std::size_t> idx(pts, 0);
        std::uint64_t scanned = 0;
        while (true) {
            if (scanned++ >= b.max_enum)
                throw BudgetError("universality sweep exceeds the enumeration budget");
            std::vector<Arrow> comps;
            comps.reserve(pts);
            for (ObjId x = 0; x < pts; ++x) comps.push_back(lists[x][idx[x]]);
            if (check_transform(*m, b, srcs, tgt, comps)) found.push_back(std::move(comps));
            if (pts == 0) break;
            std::size_t i = pts;
            bool moved = false;
            while (i > 0) {
                --i;
                if (++idx[i] < lists[i].size()) {
                    moved = true;
                    break;
                }
                idx[i] = 0;
            }
            if (!moved) break;
        }
        return found;
    };
    const std::vector<MFunctor> targets = enumerate_functors(m, n, b, false);
    const std::vector<MFunctor> hfam{h};
    for (const MFunctor& tgt : targets) {
        const auto phis = transforms_into(tgt, family);
        const auto mediators = transforms_into(tgt, hfam);
        for (const auto& phi : phis) {
            std::size_t hits = 0;
            for (const auto& med : mediators) {
                bool match = true;
                for (ObjId x = 0; x < pts && match; ++x)
                    match = n->compose(med[x], std::vector<Arrow>{us[x]}) == phi[x];
                if (match) ++hits;
            }
            if (hits != 1) {
                out.detail = "a transform into " + tgt.describe() + " factors " +
                             std::to_string(hits) + " times";
                return out;
            }
        }
    }
    out.ok = true;
    out.functor = std::move(h);
    out.universal = MultiTransform{family, out.functor, us};
    return out;
}

}  // namespace mcat
