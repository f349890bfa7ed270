#include "mcat/models.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mcat {

namespace {

constexpr std::uint64_t kTableEnum = 1u << 20;

// The unary arrow on carrier s realizing a permutation of its points.
Arrow perm_arrow(const Backend& d, ObjId s, const std::vector<std::size_t>& p) {
    const std::vector<Arrow> pts = d.hom(Signature{{}, s}, kTableEnum).arrows;
    require_input(p.size() == pts.size(), "relabel: permutation size differs from carrier");
    for (const Arrow& a : d.hom(Signature{{s}, s}, kTableEnum).arrows) {
        bool match = true;
        for (std::size_t i = 0; i < pts.size() && match; ++i)
            match = d.compose(a, std::vector<Arrow>{pts[i]}) == pts[p[i]];
        if (match) return a;
    }
    throw InputError("relabel: no arrow realizes the permutation");
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

// sigma_cod after img after the slotwise inverses.
Arrow conjugate(const Backend& d, const Arrow& img, const std::vector<Arrow>& inv_slots,
                const Arrow& sigma_cod) {
    const Arrow inner = d.compose(img, inv_slots);
    return d.compose(sigma_cod, std::vector<Arrow>{inner});
}

std::string arrows_key(const std::vector<Arrow>& as) {
    std::ostringstream os;
    for (const Arrow& a : as) {
        os << '[';
        for (std::uint64_t v : a.code) os << v << ',';
        os << ']';
    }
    return os.str();
}

std::string pair_key(const std::vector<ObjId>& omap, const std::vector<MonoidOn>& mons,
                     const std::vector<Arrow>& imgs) {
    std::ostringstream os;
    os << "o:";
    for (ObjId x : omap) os << x << ',';
    std::vector<Arrow> data;
    for (const MonoidOn& m : mons) {
        data.push_back(m.unit);
        data.push_back(m.mul);
    }
    os << " m:" << arrows_key(data) << " f:" << arrows_key(imgs);
    return os.str();
}

}  // namespace

std::vector<Model> enumerate_models(BackendPtr t, std::size_t size_cap, const Budget& b) {
    require_input(t != nullptr, "model enumeration needs a theory");
    const BackendPtr sets = finset_mcat(size_cap, true);
    std::vector<Model> out;
    for (MFunctor& f : enumerate_functors(t, sets, b, t->cartesian()))
        out.push_back(Model{std::move(f), size_cap});
    return out;
}

Model relabel_model(const Model& m, const std::vector<std::vector<std::size_t>>& perm) {
    const MFunctor& f = m.functor;
    require_input(f.kind != FunctorKind::identity,
                  "relabel: the identity functor carries no separate model data");
    require_input(perm.size() == f.obj_map.size(),
                  "relabel: one permutation per theory object");
    const Backend& d = *f.dst;
    std::vector<Arrow> fwd, bwd;
    for (std::size_t x = 0; x < perm.size(); ++x) {
        fwd.push_back(perm_arrow(d, f.obj_map[x], perm[x]));
        bwd.push_back(perm_arrow(d, f.obj_map[x], inverse_perm(perm[x])));
    }
    Model out = m;
    MFunctor& g = out.functor;
    if (f.kind == FunctorKind::graph) {
        g.graph.clear();
        for (const auto& [src, img] : f.graph) {
            std::vector<Arrow> inv_slots;
            for (ObjId x : src.sig.domain) inv_slots.push_back(bwd[x]);
            g.graph.emplace(src, conjugate(d, img, inv_slots, fwd[src.sig.codomain]));
        }
        return out;
    }
    for (std::size_t x = 0; x < f.monoid.size(); ++x) {
        g.monoid[x].unit = d.compose(fwd[x], std::vector<Arrow>{f.monoid[x].unit});
        g.monoid[x].mul =
            conjugate(d, f.monoid[x].mul, {bwd[x], bwd[x]}, fwd[x]);
    }
    if (!f.unary_image.empty()) {
        const FiniteCategory* c = seq_category_of(*f.src);
        require_input(c != nullptr, "relabel: unary images without a sequential source");
        for (ArrId a = 0; a < f.unary_image.size(); ++a) {
            const CatArrow& ca = c->arrows[a];
            g.unary_image[a] =
                conjugate(d, f.unary_image[a], {bwd[ca.dom]}, fwd[ca.cod]);
        }
    }
    return out;
}

std::size_t model_iso_count(const std::vector<Model>& models) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const bool fresh = index.emplace(models[i].functor.describe(), i).second;
        require_input(fresh, "iso count: two models present the same data");
    }
    std::vector<bool> seen(models.size(), false);
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        const MFunctor& f = models[i].functor;
        std::vector<std::vector<std::vector<std::size_t>>> perms;
        for (ObjId x : f.obj_map) perms.push_back(all_permutations(x));
        std::vector<std::size_t> pick(perms.size(), 0);
        while (true) {
            std::vector<std::vector<std::size_t>> tuple;
            for (std::size_t x = 0; x < perms.size(); ++x) tuple.push_back(perms[x][pick[x]]);
            const Model r = relabel_model(models[i], tuple);
            const auto it = index.find(r.functor.describe());
            require_input(it != index.end(), "iso count: relabeled model escapes the list");
            seen[it->second] = true;
            std::size_t k = pick.size();
            bool moved = false;
            while (k > 0) {
                --k;
                if (++pick[k] < perms[k].size()) {
                    moved = true;
                    break;
                }
                pick[k] = 0;
            }
            if (!moved) break;
        }
    }
    return orbits;
}

ValidationReport kronecker_semantics_check(const FiniteCategory& c, std::size_t size_cap,
                                           const Budget& b) {
    const BackendPtr sets = finset_mcat(size_cap, true);
    const BackendPtr theory = seq(c);
    const BackendPtr pre = unary(c);
    ValidationReport rep;
    rep.backend = theory->describe() + " over carriers of size at most " +
                  std::to_string(size_cap);
    rep.budget = b;

    const std::vector<MFunctor> models = enumerate_functors(theory, sets, b, false);
    const std::vector<MFunctor> presheaves = enumerate_functors(pre, sets, b, false);

    LawResult readings{"kron-compat-readings", Outcome::pass, 0, 0, false, std::nullopt};
    struct PairData {
        std::vector<ObjId> omap;
        std::vector<MonoidOn> mons;
        std::vector<Arrow> imgs;
    };
    std::vector<PairData> pairs;
    std::map<std::string, std::size_t> pair_count;
    const std::size_t nobj = c.objects.size();
    for (const MFunctor& p : presheaves) {
        std::vector<Arrow> imgs;
        for (ArrId a = 0; a < c.arrows.size(); ++a)
            imgs.push_back(p.apply(
                Arrow{Signature{{c.arrows[a].dom}, c.arrows[a].cod}, {a}}));
        std::vector<std::vector<MonoidOn>> mls(nobj);
        bool feasible = true;
        for (ObjId y = 0; y < nobj; ++y) {
            mls[y] = commutative_monoids_on(*sets, p.obj(y), b);
            feasible = feasible && !mls[y].empty();
        }
        if (!feasible) continue;
        std::vector<std::size_t> pick(nobj, 0);
        while (true) {
            std::vector<MonoidOn> fam;
            for (ObjId y = 0; y < nobj; ++y) fam.push_back(mls[y][pick[y]]);
            // reading one: every arrow image is a monoid homomorphism at
            // the level of operation tables
            bool tables = true;
            for (ArrId a = 0; a < c.arrows.size() && tables; ++a) {
                const ObjId x = c.arrows[a].dom, y = c.arrows[a].cod;
                tables =
                    sets->compose(imgs[a], std::vector<Arrow>{fam[x].unit}) == fam[y].unit &&
                    sets->compose(imgs[a], std::vector<Arrow>{fam[x].mul}) ==
                        sets->compose(fam[y].mul, std::vector<Arrow>{imgs[a], imgs[a]});
            }
            // reading two: the operations are natural in the functor,
            // evaluated pointwise on carrier elements
            bool natural = true;
            for (ArrId a = 0; a < c.arrows.size() && natural; ++a) {
                const ObjId x = c.arrows[a].dom, y = c.arrows[a].cod;
                natural =
                    sets->compose(imgs[a], std::vector<Arrow>{fam[x].unit}) == fam[y].unit;
                const std::vector<Arrow> pts =
                    sets->hom(Signature{{}, p.obj(x)}, kTableEnum).arrows;
                for (const Arrow& u : pts) {
                    for (const Arrow& v : pts) {
                        if (!natural) break;
                        const Arrow lhs = sets->compose(
                            imgs[a], std::vector<Arrow>{
                                         sets->compose(fam[x].mul, std::vector<Arrow>{u, v})});
                        const Arrow rhs = sets->compose(
                            fam[y].mul,
                            std::vector<Arrow>{
                                sets->compose(imgs[a], std::vector<Arrow>{u}),
                                sets->compose(imgs[a], std::vector<Arrow>{v})});
                        natural = lhs == rhs;
                    }
                }
            }
            ++readings.instances;
            if (tables != natural) {
                Counterexample ce;
                ce.law = readings.law;
                ce.note = std::string("table reading ") + (tables ? "holds" : "fails") +
                          ", pointwise reading " + (natural ? "holds" : "fails");
                if (readings.outcome != Outcome::counterexample) {
                    readings.outcome = Outcome::counterexample;
                    readings.witness = std::move(ce);
                }
            }
            if (tables) {
                pairs.push_back(PairData{p.obj_map, fam, imgs});
                ++pair_count[pair_key(p.obj_map, fam, imgs)];
            }
            if (nobj == 0) break;
            std::size_t k = nobj;
            bool moved = false;
            while (k > 0) {
                --k;
                if (++pick[k] < mls[k].size()) {
                    moved = true;
                    break;
                }
                pick[k] = 0;
            }
            if (!moved) break;
        }
    }

    std::map<std::string, std::size_t> model_count;
    for (const MFunctor& m : models)
        ++model_count[pair_key(m.obj_map, m.monoid, m.unary_image)];

    LawResult decompose{"kron-models-decompose", Outcome::pass, 0, 0, false, std::nullopt};
    for (const MFunctor& m : models) {
        ++decompose.instances;
        const auto it = pair_count.find(pair_key(m.obj_map, m.monoid, m.unary_image));
        if (it == pair_count.end() || it->second != 1) {
            Counterexample ce;
            ce.law = decompose.law;
            ce.note = "model data matches " +
                      std::to_string(it == pair_count.end() ? 0 : it->second) + " pairs: " +
                      m.describe();
            if (decompose.outcome != Outcome::counterexample) {
                decompose.outcome = Outcome::counterexample;
                decompose.witness = std::move(ce);
            }
        }
    }

    LawResult assemble{"kron-pairs-assemble", Outcome::pass, 0, 0, false, std::nullopt};
    for (const PairData& pd : pairs) {
        ++assemble.instances;
        MFunctor f;
        f.kind = FunctorKind::seq_monoid;
        f.src = theory;
        f.dst = sets;
        f.obj_map = pd.omap;
        f.monoid = pd.mons;
        f.unary_image = pd.imgs;
        const FunctorCheck chk = check_functor(f, b, false);
        const auto it = model_count.find(pair_key(pd.omap, pd.mons, pd.imgs));
        const bool hit = it != model_count.end() && it->second == 1;
        if (!chk.ok || !hit) {
            Counterexample ce;
            ce.law = assemble.law;
            ce.note = !chk.ok ? "assembled functor fails the sweep: " + chk.detail
                              : "assembled functor matches " +
                                    std::to_string(it == model_count.end() ? 0 : it->second) +
                                    " models";
            if (assemble.outcome != Outcome::counterexample) {
                assemble.outcome = Outcome::counterexample;
                assemble.witness = std::move(ce);
            }
        }
    }

    LawResult counts{"kron-counts", Outcome::pass, 1, 0, false, std::nullopt};
    if (models.size() != pairs.size()) {
        Counterexample ce;
        ce.law = counts.law;
        ce.note = std::to_string(models.size()) + " models against " +
                  std::to_string(pairs.size()) + " pairs";
        counts.outcome = Outcome::counterexample;
        counts.witness = std::move(ce);
    }

    rep.laws = {std::move(decompose), std::move(assemble), std::move(counts),
                std::move(readings)};
    return rep;
}

BackendPtr model_hom_mcat(BackendPtr t, std::size_t size_cap, const Budget& b) {
    require_input(t != nullptr, "model hom needs a theory");
    return fp_hom(std::move(t), finset_mcat(size_cap, true), b);
}

}  // namespace mcat
