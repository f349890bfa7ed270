#include "mcat/functors.hpp"

#include <algorithm>
#include <sstream>

namespace mcat {

ObjId MFunctor::obj(ObjId x) const {
    if (kind == FunctorKind::identity) return x;
    require_input(x < obj_map.size(), "functor: object out of range");
    return obj_map[x];
}

Arrow MFunctor::apply(const Arrow& f) const {
    switch (kind) {
        case FunctorKind::identity:
            return f;
        case FunctorKind::graph: {
            const auto it = graph.find(f);
            require_input(it != graph.end(),
                          "functor: no stored image for " + src->arrow_label(f));
            return it->second;
        }
        case FunctorKind::seq_monoid: {
            const ObjId y = obj(f.sig.codomain);
            const Arrow head = monoid_power(*dst, monoid[f.sig.codomain], y, f.arity());
            std::vector<Arrow> gs;
            gs.reserve(f.code.size());
            for (std::uint64_t id : f.code) gs.push_back(unary_image.at(id));
            return dst->compose(head, gs);
        }
        case FunctorKind::natrig_monoid: {
            const ObjId x = obj(0);
            const Arrow head = monoid_power(*dst, monoid[0], x, f.arity());
            std::vector<Arrow> gs;
            gs.reserve(f.code.size());
            for (std::uint64_t k : f.code) gs.push_back(scalar_arrow(*dst, monoid[0], x, k));
            return dst->compose(head, gs);
        }
    }
    throw InputError("functor: unrecognized kind");
}

std::string MFunctor::describe() const {
    std::ostringstream os;
    switch (kind) {
        case FunctorKind::identity:
            return "id";
        case FunctorKind::graph: {
            os << "obj[";
            for (std::size_t i = 0; i < obj_map.size(); ++i)
                os << (i ? "," : "") << dst->object_name(obj_map[i]);
            os << "] arr[";
            bool first = true;
            for (const auto& [a, im] : graph) {
                // identity images are forced by the object row
                if (a.arity() == 1 && a == src->identity(a.sig.domain[0])) continue;
                os << (first ? "" : ",") << src->arrow_label(a) << ">"
                   << dst->arrow_label(im);
                first = false;
            }
            os << "]";
            return os.str();
        }
        case FunctorKind::seq_monoid: {
            os << "obj[";
            for (std::size_t i = 0; i < obj_map.size(); ++i)
                os << (i ? "," : "") << dst->object_name(obj_map[i]);
            os << "] mon[";
            for (std::size_t i = 0; i < monoid.size(); ++i)
                os << (i ? "," : "") << dst->arrow_label(monoid[i].unit) << "/"
                   << dst->arrow_label(monoid[i].mul);
            os << "] arr[";
            for (std::size_t i = 0; i < unary_image.size(); ++i)
                os << (i ? "," : "") << dst->arrow_label(unary_image[i]);
            os << "]";
            return os.str();
        }
        case FunctorKind::natrig_monoid:
            os << "obj[" << dst->object_name(obj_map.at(0)) << "] mon["
               << dst->arrow_label(monoid.at(0).unit) << "/"
               << dst->arrow_label(monoid.at(0).mul) << "]";
            return os.str();
    }
    return "?";
}

MFunctor identity_functor(BackendPtr m) {
    MFunctor f;
    f.kind = FunctorKind::identity;
    f.src = m;
    f.dst = m;
    for (ObjId x = 0; x < m->object_count(); ++x) f.obj_map.push_back(x);
    return f;
}

Arrow monoid_power(const Backend& d, const MonoidOn& c, ObjId x, std::size_t n) {
    if (n == 0) return c.unit;
    if (n == 1) return d.identity(x);
    Arrow acc = c.mul;
    for (std::size_t k = 3; k <= n; ++k)
        acc = d.compose(c.mul, std::vector<Arrow>{acc, d.identity(x)});
    return acc;
}

Arrow scalar_arrow(const Backend& d, const MonoidOn& c, ObjId x, std::uint64_t k) {
    if (k == 0) return d.weaken(c.unit, 0, x);
    // double-and-add keeps the compose count logarithmic in the scalar;
    // sound because the stored monoids are associative on the nose
    const auto add = [&](const Arrow& f, const Arrow& g) {
        return d.contract(d.compose(c.mul, std::vector<Arrow>{f, g}), 0);
    };
    int top = 63;
    while (((k >> top) & 1) == 0) --top;
    Arrow acc = d.identity(x);
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = add(acc, acc);
        if ((k >> bit) & 1) acc = add(acc, d.identity(x));
    }
    return acc;
}

FunctorCheck check_functor(const MFunctor& F, const Budget& b, bool check_fp) {
    require_input(F.src != nullptr && F.dst != nullptr, "functor check needs both backends");
    FunctorCheck out;
    const Backend& s = *F.src;
    const Backend& d = *F.dst;
    // a cartesian-structure failure keeps ok, a law failure clears both
    auto fail_fp = [&](const std::string& what) {
        out.fp = false;
        if (out.detail.empty()) out.detail = what;
    };
    auto fail = [&](const std::string& what) {
        out.ok = false;
        fail_fp(what);
    };
    for (ObjId x = 0; x < s.object_count(); ++x) {
        if (F.obj(x) >= d.object_count()) {
            fail("object image out of range at " + s.object_name(x));
            return out;
        }
    }
    for (ObjId x = 0; x < s.object_count(); ++x) {
        if (F.apply(s.identity(x)) != d.identity(F.obj(x))) {
            fail("identity not preserved at " + s.object_name(x));
            return out;
        }
    }
    out.fp = check_fp && s.cartesian() && d.cartesian();
    HomCache cache(s, b);
    std::uint64_t used = 0;
    const auto spent = [&] { return used >= b.max_enum; };
    for (const Signature& sig : all_signatures(s, b.max_arity)) {
        if (spent() || !out.ok) break;
        for (const Arrow& f : cache.get(sig).arrows) {
            if (spent() || !out.ok) break;
            try {
                const Arrow ff = F.apply(f);
                Signature want;
                want.codomain = F.obj(f.sig.codomain);
                for (ObjId x : f.sig.domain) want.domain.push_back(F.obj(x));
                if (ff.sig != want) {
                    fail("image signature mismatch at " + s.arrow_label(f));
                    break;
                }
                for (const auto& p : all_permutations(f.arity())) {
                    if (spent() || !out.ok) break;
                    ++used;
                    Arrow lhs;
                    try {
                        lhs = s.sym_act(permutation_map(p, f.sig.domain), f);
                    } catch (const UnsupportedAction&) {
                        continue;  // partial source action: nothing to preserve
                    }
                    try {
                        const Arrow rhs = d.sym_act(permutation_map(p, want.domain), ff);
                        if (F.apply(lhs) != rhs) {
                            fail("symmetry not preserved at " + s.arrow_label(f));
                            break;
                        }
                    } catch (const UnsupportedAction& e) {
                        fail(std::string("target action unsupported: ") + e.what());
                        break;
                    }
                }
                if (!out.ok) break;
                each_arrow_tuple(cache, f.sig.domain, b.max_arity,
                                 [&](std::span<const Arrow> gs) {
                    if (spent() || !out.ok) return false;
                    ++used;
                    std::vector<Arrow> imgs;
                    imgs.reserve(gs.size());
                    for (const Arrow& g : gs) imgs.push_back(F.apply(g));
                    if (F.apply(s.compose(f, gs)) != d.compose(ff, imgs)) {
                        fail("composition not preserved at " + s.arrow_label(f));
                        return false;
                    }
                    return true;
                });
                if (!out.fp) continue;
                for (std::size_t p = 0; p + 1 < f.arity() && out.fp && !spent(); ++p) {
                    if (f.sig.domain[p] != f.sig.domain[p + 1]) continue;
                    ++used;
                    if (F.apply(s.contract(f, p)) != d.contract(ff, p))
                        fail_fp("contraction not preserved at " + s.arrow_label(f));
                }
                if (f.arity() + 1 <= b.max_arity) {
                    for (std::size_t p = 0; p <= f.arity() && out.fp; ++p) {
                        for (ObjId x = 0; x < s.object_count() && out.fp && !spent(); ++x) {
                            ++used;
                            if (F.apply(s.weaken(f, p, x)) != d.weaken(ff, p, F.obj(x)))
                                fail_fp("weakening not preserved at " + s.arrow_label(f));
                        }
                    }
                }
            } catch (const InputError& e) {
                fail(std::string("image lookup failed: ") + e.what());
                break;
            }
        }
    }
    return out;
}

namespace {

// Generic search over explicit arrow graphs. Needs every source hom-set to
// close within the budget.
std::vector<MFunctor> enum_graph(BackendPtr src, BackendPtr dst, const Budget& b,
                                 bool fp_only) {
    const Backend& s = *src;
    const Backend& d = *dst;
    std::vector<Arrow> arrows;
    for (const Signature& sig : all_signatures(s, b.max_arity)) {
        const HomSet h = hom_checked(s, sig, b);
        if (h.truncated)
            throw BudgetError(s.describe() +
                              ": hom-sets do not close within the budget, no finite "
                              "functor graph exists");
        arrows.insert(arrows.end(), h.arrows.begin(), h.arrows.end());
    }
    const std::size_t nobj_s = s.object_count();
    const std::size_t nobj_d = d.object_count();
    std::vector<MFunctor> out;
    if (nobj_s > 0 && nobj_d == 0) return out;
    HomCache dcache(d, b);
    std::vector<ObjId> omap(nobj_s, 0);
    while (true) {
        bool feasible = true;
        std::uint64_t space = 1;
        std::vector<std::vector<Arrow>> cand(arrows.size());
        for (std::size_t i = 0; i < arrows.size() && feasible; ++i) {
            const Arrow& f = arrows[i];
            if (f.arity() == 1 && f == s.identity(f.sig.domain[0])) {
                cand[i] = {d.identity(omap[f.sig.domain[0]])};
                continue;
            }
            Signature want;
            want.codomain = omap[f.sig.codomain];
            for (ObjId x : f.sig.domain) want.domain.push_back(omap[x]);
            const HomSet& h = dcache.get(want);
            if (h.truncated)
                throw BudgetError(d.describe() +
                                  ": a target hom-set truncates during the functor search");
            cand[i] = h.arrows;
            if (cand[i].empty()) {
                feasible = false;
                break;
            }
            if (space > b.max_enum / cand[i].size())
                throw BudgetError("functor search space exceeds the enumeration budget");
            space *= cand[i].size();
        }
        if (feasible) {
            std::vector<std::size_t> pick(arrows.size(), 0);
            while (true) {
                MFunctor F;
                F.kind = FunctorKind::graph;
                F.src = src;
                F.dst = dst;
                F.obj_map = omap;
                for (std::size_t i = 0; i < arrows.size(); ++i)
                    F.graph[arrows[i]] = cand[i][pick[i]];
                const FunctorCheck chk = check_functor(F, b, fp_only);
                if (chk.ok && (!fp_only || chk.fp)) out.push_back(std::move(F));
                std::size_t i = arrows.size();
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
        if (nobj_s == 0) break;
        std::size_t i = nobj_s;
        bool moved = false;
        while (i > 0) {
            --i;
            if (++omap[i] < nobj_d) {
                moved = true;
                break;
            }
            omap[i] = 0;
        }
        if (!moved) break;
    }
    return out;
}

// Sequential sources: a functor is a monoid per object, monoid-respecting
// unary images, and functoriality over the underlying category; everything
// wider is forced by the tupling arrows.
std::vector<MFunctor> enum_seq(BackendPtr src, BackendPtr dst, const Budget& b,
                               bool fp_only) {
    const FiniteCategory* c = seq_category_of(*src);
    require_input(c != nullptr, "sequential source expected");
    const Backend& d = *dst;
    const std::size_t nc = c->objects.size();
    const std::size_t nd = d.object_count();
    std::vector<MFunctor> out;
    if (nc > 0 && nd == 0) return out;
    HomCache dcache(d, b);
    std::vector<bool> is_id(c->arrows.size(), false);
    for (ArrId a : c->identities) is_id[a] = true;
    std::vector<ObjId> omap(nc, 0);
    while (true) {
        std::vector<std::vector<MonoidOn>> mons(nc);
        bool feasible = true;
        for (ObjId y = 0; y < nc && feasible; ++y) {
            mons[y] = commutative_monoids_on(d, omap[y], b);
            feasible = !mons[y].empty();
        }
        if (feasible) {
            std::vector<std::size_t> mpick(nc, 0);
            while (true) {
                std::vector<MonoidOn> fam;
                fam.reserve(nc);
                for (ObjId y = 0; y < nc; ++y) fam.push_back(mons[y][mpick[y]]);
                // unary images: monoid homomorphisms matching each arrow
                std::vector<std::vector<Arrow>> cand(c->arrows.size());
                bool open = true;
                for (ArrId a = 0; a < c->arrows.size() && open; ++a) {
                    const ObjId x = c->arrows[a].dom;
                    const ObjId y = c->arrows[a].cod;
                    if (is_id[a]) {
                        cand[a] = {d.identity(omap[x])};
                        continue;
                    }
                    for (const Arrow& al :
                         dcache.get(Signature{{omap[x]}, omap[y]}).arrows) {
                        if (d.compose(al, std::vector<Arrow>{fam[x].unit}) != fam[y].unit)
                            continue;
                        const Arrow lhs = d.compose(al, std::vector<Arrow>{fam[x].mul});
                        const Arrow rhs =
                            d.compose(fam[y].mul, std::vector<Arrow>{al, al});
                        if (lhs != rhs) continue;
                        cand[a].push_back(al);
                    }
                    open = !cand[a].empty();
                }
                if (open) {
                    std::vector<std::size_t> pick(c->arrows.size(), 0);
                    while (true) {
                        // functoriality over the category
                        bool good = true;
                        for (ArrId g = 0; g < c->arrows.size() && good; ++g) {
                            for (ArrId f2 = 0; f2 < c->arrows.size() && good; ++f2) {
                                const ArrId gf = c->comp[g][f2];
                                if (gf == kNoArr) continue;
                                const Arrow got = d.compose(
                                    cand[g][pick[g]],
                                    std::vector<Arrow>{cand[f2][pick[f2]]});
                                good = got == cand[gf][pick[gf]];
                            }
                        }
                        if (good) {
                            MFunctor F;
                            F.kind = FunctorKind::seq_monoid;
                            F.src = src;
                            F.dst = dst;
                            F.obj_map = omap;
                            F.monoid = fam;
                            for (ArrId a = 0; a < c->arrows.size(); ++a)
                                F.unary_image.push_back(cand[a][pick[a]]);
                            const FunctorCheck chk = check_functor(F, b, fp_only);
                            if (chk.ok && (!fp_only || chk.fp)) out.push_back(std::move(F));
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
                std::size_t i = nc;
                bool moved = false;
                while (i > 0) {
                    --i;
                    if (++mpick[i] < mons[i].size()) {
                        moved = true;
                        break;
                    }
                    mpick[i] = 0;
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
    return out;
}

// Arithmetic source: a cartesian-preserving functor is exactly a choice of
// commutative monoid in the target.
std::vector<MFunctor> enum_natrig(BackendPtr src, BackendPtr dst, const Budget& b,
                                  bool fp_only) {
    if (!fp_only)
        throw BudgetError(src->describe() +
                          ": plain functor enumeration has no finite generating scheme; "
                          "use the cartesian-preserving search");
    std::vector<MFunctor> out;
    for (ObjId x = 0; x < dst->object_count(); ++x) {
        for (const MonoidOn& c : commutative_monoids_on(*dst, x, b)) {
            MFunctor F;
            F.kind = FunctorKind::natrig_monoid;
            F.src = src;
            F.dst = dst;
            F.obj_map = {x};
            F.monoid = {c};
            const FunctorCheck chk = check_functor(F, b, true);
            if (chk.ok && chk.fp) out.push_back(std::move(F));
        }
    }
    return out;
}

}  // namespace

std::vector<MFunctor> enumerate_functors(BackendPtr src, BackendPtr dst, const Budget& b,
                                         bool fp_only) {
    require_input(src != nullptr && dst != nullptr, "functor enumeration needs two backends");
    if (fp_only)
        require_input(src->cartesian() && dst->cartesian(),
                      "cartesian-preserving enumeration needs cartesian backends");
    switch (src->kind()) {
        case BackendKind::seq:
            return enum_seq(src, dst, b, fp_only);
        case BackendKind::natrig:
            return enum_natrig(src, dst, b, fp_only);
        default:
            return enum_graph(src, dst, b, fp_only);
    }
}

}  // namespace mcat
