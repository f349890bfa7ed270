#include "mcat/category.hpp"

#include <algorithm>

namespace mcat {

ArrId FiniteCategory::compose(ArrId g, ArrId f) const {
    require_input(g < arrows.size() && f < arrows.size(), name + ": arrow id out of range");
    require_input(arrows[f].cod == arrows[g].dom, name + ": arrows " + arrows[g].name + " after " +
                                                      arrows[f].name + " do not compose");
    const ArrId r = comp[g][f];
    require_input(r != kNoArr, name + ": composition table missing " + arrows[g].name + " after " +
                                   arrows[f].name);
    return r;
}

std::vector<ArrId> FiniteCategory::hom(ObjId x, ObjId y) const {
    std::vector<ArrId> out;
    for (ArrId a = 0; a < arrows.size(); ++a)
        if (arrows[a].dom == x && arrows[a].cod == y) out.push_back(a);
    return out;
}

ObjId FiniteCategory::object_index(const std::string& nm) const {
    for (ObjId i = 0; i < objects.size(); ++i)
        if (objects[i] == nm) return i;
    throw InputError(name + ": unknown object " + nm);
}

ArrId FiniteCategory::arrow_index(const std::string& nm) const {
    for (ArrId i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == nm) return i;
    throw InputError(name + ": unknown arrow " + nm);
}

void check_category(const FiniteCategory& c) {
    require_input(c.identities.size() == c.objects.size(), c.name + ": one identity per object");
    require_input(c.comp.size() == c.arrows.size(), c.name + ": composition table row count");
    for (const auto& row : c.comp)
        require_input(row.size() == c.arrows.size(), c.name + ": composition table column count");

    for (ObjId x = 0; x < c.objects.size(); ++x) {
        const ArrId e = c.identities[x];
        require_input(e < c.arrows.size(), c.name + ": identity id out of range");
        require_input(c.arrows[e].dom == x && c.arrows[e].cod == x,
                      c.name + ": identity of " + c.objects[x] + " is not an endo-arrow");
    }

    for (ArrId g = 0; g < c.arrows.size(); ++g)
        for (ArrId f = 0; f < c.arrows.size(); ++f) {
            const bool composable = c.arrows[f].cod == c.arrows[g].dom;
            const ArrId r = c.comp[g][f];
            if (!composable) {
                require_input(r == kNoArr, c.name + ": table entry for non-composable pair " +
                                               c.arrows[g].name + "," + c.arrows[f].name);
                continue;
            }
            require_input(r != kNoArr && r < c.arrows.size(),
                          c.name + ": missing composite " + c.arrows[g].name + " after " +
                              c.arrows[f].name);
            require_input(c.arrows[r].dom == c.arrows[f].dom && c.arrows[r].cod == c.arrows[g].cod,
                          c.name + ": composite " + c.arrows[r].name + " has wrong endpoints");
        }

    for (ArrId f = 0; f < c.arrows.size(); ++f) {
        const ArrId idd = c.identities[c.arrows[f].dom];
        const ArrId idc = c.identities[c.arrows[f].cod];
        require_input(c.comp[f][idd] == f, c.name + ": right identity law fails at " + c.arrows[f].name);
        require_input(c.comp[idc][f] == f, c.name + ": left identity law fails at " + c.arrows[f].name);
    }

    for (ArrId h = 0; h < c.arrows.size(); ++h)
        for (ArrId g = 0; g < c.arrows.size(); ++g) {
            if (c.arrows[g].cod != c.arrows[h].dom) continue;
            for (ArrId f = 0; f < c.arrows.size(); ++f) {
                if (c.arrows[f].cod != c.arrows[g].dom) continue;
                const ArrId l = c.comp[h][c.comp[g][f]];
                const ArrId r = c.comp[c.comp[h][g]][f];
                require_input(l == r, c.name + ": associativity fails on " + c.arrows[h].name + "," +
                                          c.arrows[g].name + "," + c.arrows[f].name);
            }
        }
}

ArrId CMonEnrichment::plus(ArrId f, ArrId g) const {
    auto it = add.find({f, g});
    if (it == add.end()) it = add.find({g, f});
    require_input(it != add.end(), "enrichment: missing sum entry");
    return it->second;
}

void check_enrichment(const FiniteCategory& c, const CMonEnrichment& e) {
    require_input(e.zero.size() == c.objects.size(), c.name + ": zero table row count");
    for (ObjId x = 0; x < c.objects.size(); ++x) {
        require_input(e.zero[x].size() == c.objects.size(), c.name + ": zero table column count");
        for (ObjId y = 0; y < c.objects.size(); ++y) {
            const ArrId z = e.zero[x][y];
            require_input(z < c.arrows.size() && c.arrows[z].dom == x && c.arrows[z].cod == y,
                          c.name + ": zero arrow of hom(" + c.objects[x] + "," + c.objects[y] +
                              ") has wrong endpoints");
        }
    }

    // Sums stay inside their hom-set; commutativity, associativity, unit.
    for (ObjId x = 0; x < c.objects.size(); ++x)
        for (ObjId y = 0; y < c.objects.size(); ++y) {
            const auto h = c.hom(x, y);
            const ArrId z = e.zero[x][y];
            for (ArrId f : h)
                for (ArrId g : h) {
                    const ArrId s = e.plus(f, g);
                    require_input(c.arrows[s].dom == x && c.arrows[s].cod == y,
                                  c.name + ": sum leaves its hom-set");
                    require_input(s == e.plus(g, f), c.name + ": addition not commutative at " +
                                                         c.arrows[f].name + "+" + c.arrows[g].name);
                }
            for (ArrId f : h)
                require_input(e.plus(f, z) == f, c.name + ": zero not neutral at " + c.arrows[f].name);
            for (ArrId f : h)
                for (ArrId g : h)
                    for (ArrId k : h)
                        require_input(e.plus(e.plus(f, g), k) == e.plus(f, e.plus(g, k)),
                                      c.name + ": addition not associative");
        }

    // Bilinearity and zero absorption under composition.
    for (ArrId h = 0; h < c.arrows.size(); ++h) {
        const ObjId x = c.arrows[h].dom, y = c.arrows[h].cod;
        for (ObjId z = 0; z < c.objects.size(); ++z) {
            for (ArrId f : c.hom(y, z))
                for (ArrId g : c.hom(y, z))
                    require_input(c.comp[e.plus(f, g)][h] == e.plus(c.comp[f][h], c.comp[g][h]),
                                  c.name + ": composition not additive on the left");
            for (ArrId f : c.hom(z, x))
                for (ArrId g : c.hom(z, x))
                    require_input(c.comp[h][e.plus(f, g)] == e.plus(c.comp[h][f], c.comp[h][g]),
                                  c.name + ": composition not additive on the right");
            require_input(c.comp[e.zero[y][z]][h] == e.zero[x][z],
                          c.name + ": zero not absorbing on the left");
            require_input(c.comp[h][e.zero[z][x]] == e.zero[z][y],
                          c.name + ": zero not absorbing on the right");
        }
    }
}

ArrId StrictMonoidalData::tarr(ArrId f, ArrId g) const {
    auto it = tensor_arr.find({f, g});
    require_input(it != tensor_arr.end(), cat.name + ": missing tensor of arrows " +
                                              cat.arrows[f].name + "," + cat.arrows[g].name);
    return it->second;
}

ObjId StrictMonoidalData::tobj_family(const std::vector<ObjId>& fam) const {
    ObjId acc = unit;
    for (std::size_t i = 0; i < fam.size(); ++i) acc = i == 0 ? fam[0] : tobj(acc, fam[i]);
    return acc;
}

void check_monoidal(const StrictMonoidalData& d) {
    const FiniteCategory& c = d.cat;
    require_input(d.tensor_obj.size() == c.objects.size(), c.name + ": tensor object table rows");
    for (const auto& row : d.tensor_obj)
        require_input(row.size() == c.objects.size(), c.name + ": tensor object table columns");

    for (ObjId x = 0; x < c.objects.size(); ++x) {
        require_input(d.tobj(x, d.unit) == x && d.tobj(d.unit, x) == x,
                      c.name + ": strict unit law fails at object " + c.objects[x]);
        for (ObjId y = 0; y < c.objects.size(); ++y)
            for (ObjId z = 0; z < c.objects.size(); ++z)
                require_input(d.tobj(d.tobj(x, y), z) == d.tobj(x, d.tobj(y, z)),
                              c.name + ": strict associativity fails on objects");
    }

    for (ArrId f = 0; f < c.arrows.size(); ++f)
        for (ArrId g = 0; g < c.arrows.size(); ++g) {
            const ArrId t = d.tarr(f, g);
            require_input(c.arrows[t].dom == d.tobj(c.arrows[f].dom, c.arrows[g].dom) &&
                              c.arrows[t].cod == d.tobj(c.arrows[f].cod, c.arrows[g].cod),
                          c.name + ": tensor of arrows has wrong endpoints");
        }

    // Tensor is a functor: identities and interchange.
    for (ObjId x = 0; x < c.objects.size(); ++x)
        for (ObjId y = 0; y < c.objects.size(); ++y)
            require_input(d.tarr(c.identities[x], c.identities[y]) == c.identities[d.tobj(x, y)],
                          c.name + ": tensor of identities is not an identity");
    for (ArrId f2 = 0; f2 < c.arrows.size(); ++f2)
        for (ArrId f1 = 0; f1 < c.arrows.size(); ++f1) {
            if (c.arrows[f1].cod != c.arrows[f2].dom) continue;
            for (ArrId g2 = 0; g2 < c.arrows.size(); ++g2)
                for (ArrId g1 = 0; g1 < c.arrows.size(); ++g1) {
                    if (c.arrows[g1].cod != c.arrows[g2].dom) continue;
                    require_input(
                        d.tarr(c.comp[f2][f1], c.comp[g2][g1]) ==
                            c.comp[d.tarr(f2, g2)][d.tarr(f1, g1)],
                        c.name + ": tensor breaks interchange");
                }
        }

    // Strict unit on arrows.
    for (ArrId f = 0; f < c.arrows.size(); ++f) {
        require_input(d.tarr(f, c.identities[d.unit]) == f && d.tarr(c.identities[d.unit], f) == f,
                      c.name + ": strict unit law fails on arrow " + c.arrows[f].name);
        for (ArrId g = 0; g < c.arrows.size(); ++g)
            for (ArrId h = 0; h < c.arrows.size(); ++h)
                require_input(d.tarr(d.tarr(f, g), h) == d.tarr(f, d.tarr(g, h)),
                              c.name + ": strict associativity fails on arrows");
    }

    if (d.braiding) {
        const auto& br = *d.braiding;
        require_input(br.size() == c.objects.size(), c.name + ": braiding table rows");
        for (ObjId x = 0; x < c.objects.size(); ++x) {
            require_input(br[x].size() == c.objects.size(), c.name + ": braiding table columns");
            for (ObjId y = 0; y < c.objects.size(); ++y) {
                const ArrId s = br[x][y];
                require_input(c.arrows[s].dom == d.tobj(x, y) && c.arrows[s].cod == d.tobj(y, x),
                              c.name + ": braiding has wrong endpoints");
                require_input(c.comp[br[y][x]][s] == c.identities[d.tobj(x, y)],
                              c.name + ": braiding is not an involution");
            }
        }
        for (ArrId f = 0; f < c.arrows.size(); ++f)
            for (ArrId g = 0; g < c.arrows.size(); ++g) {
                const ArrId lhs = c.comp[br[c.arrows[f].cod][c.arrows[g].cod]][d.tarr(f, g)];
                const ArrId rhs = c.comp[d.tarr(g, f)][br[c.arrows[f].dom][c.arrows[g].dom]];
                require_input(lhs == rhs, c.name + ": braiding not natural at " + c.arrows[f].name +
                                              "," + c.arrows[g].name);
            }
        for (ObjId x = 0; x < c.objects.size(); ++x)
            for (ObjId y = 0; y < c.objects.size(); ++y)
                for (ObjId z = 0; z < c.objects.size(); ++z) {
                    // strict hexagon: c_{x(x)y,z} = (c_{x,z} (x) id_y) . (id_x (x) c_{y,z})
                    const ArrId lhs = br[d.tobj(x, y)][z];
                    const ArrId rhs = c.comp[d.tarr(br[x][z], c.identities[y])]
                                            [d.tarr(c.identities[x], br[y][z])];
                    require_input(lhs == rhs, c.name + ": braiding hexagon fails");
                }
    }
}

void check_products(const FiniteCategory& c, const ChosenProducts& p) {
    require_input(p.terminal < c.objects.size(), c.name + ": terminal object id out of range");
    for (ObjId z = 0; z < c.objects.size(); ++z)
        require_input(c.hom(z, p.terminal).size() == 1,
                      c.name + ": hom(" + c.objects[z] + ", terminal) is not a singleton");

    require_input(p.pairs.size() == c.objects.size(), c.name + ": product table rows");
    for (ObjId x = 0; x < c.objects.size(); ++x) {
        require_input(p.pairs[x].size() == c.objects.size(), c.name + ": product table columns");
        for (ObjId y = 0; y < c.objects.size(); ++y) {
            const auto& pr = p.pairs[x][y];
            require_input(c.arrows[pr.p1].dom == pr.prod && c.arrows[pr.p1].cod == x &&
                              c.arrows[pr.p2].dom == pr.prod && c.arrows[pr.p2].cod == y,
                          c.name + ": projections of " + c.objects[x] + "x" + c.objects[y] +
                              " have wrong endpoints");
            // universal property: (p1 . -, p2 . -) bijects hom(z, prod) with
            // hom(z,x) x hom(z,y) for every z.
            for (ObjId z = 0; z < c.objects.size(); ++z) {
                const auto hz = c.hom(z, pr.prod);
                std::vector<std::pair<ArrId, ArrId>> seen;
                for (ArrId t : hz) seen.push_back({c.comp[pr.p1][t], c.comp[pr.p2][t]});
                std::sort(seen.begin(), seen.end());
                require_input(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                              c.name + ": pairing into " + c.objects[pr.prod] + " not unique");
                require_input(seen.size() == c.hom(z, x).size() * c.hom(z, y).size(),
                              c.name + ": pairing into " + c.objects[pr.prod] + " not onto");
            }
        }
    }
}

FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d) {
    FiniteCategory r;
    r.name = c.name + "x" + d.name;
    for (const auto& x : c.objects)
        for (const auto& y : d.objects) r.objects.push_back("(" + x + "," + y + ")");
    const auto oid = [&](ObjId x, ObjId y) { return static_cast<ObjId>(x * d.objects.size() + y); };
    const auto aid = [&](ArrId f, ArrId g) { return static_cast<ArrId>(f * d.arrows.size() + g); };
    for (ArrId f = 0; f < c.arrows.size(); ++f)
        for (ArrId g = 0; g < d.arrows.size(); ++g)
            r.arrows.push_back(CatArrow{"(" + c.arrows[f].name + "," + d.arrows[g].name + ")",
                                        oid(c.arrows[f].dom, d.arrows[g].dom),
                                        oid(c.arrows[f].cod, d.arrows[g].cod)});
    r.identities.resize(r.objects.size());
    for (ObjId x = 0; x < c.objects.size(); ++x)
        for (ObjId y = 0; y < d.objects.size(); ++y)
            r.identities[oid(x, y)] = aid(c.identities[x], d.identities[y]);
    r.comp.assign(r.arrows.size(), std::vector<ArrId>(r.arrows.size(), kNoArr));
    for (ArrId f2 = 0; f2 < c.arrows.size(); ++f2)
        for (ArrId g2 = 0; g2 < d.arrows.size(); ++g2)
            for (ArrId f1 = 0; f1 < c.arrows.size(); ++f1) {
                if (c.arrows[f1].cod != c.arrows[f2].dom) continue;
                for (ArrId g1 = 0; g1 < d.arrows.size(); ++g1) {
                    if (d.arrows[g1].cod != d.arrows[g2].dom) continue;
                    r.comp[aid(f2, g2)][aid(f1, g1)] = aid(c.comp[f2][f1], d.comp[g2][g1]);
                }
            }
    check_category(r);
    return r;
}

}  // namespace mcat
