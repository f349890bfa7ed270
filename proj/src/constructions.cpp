#include <algorithm>
#include <map>
#include <sstream>

#include "mcat/constructions.hpp"

namespace mcat {

UnarySlice unary_slice(const Backend& m, const Budget& b) {
    UnarySlice s;
    s.cat.name = "U(" + m.describe() + ")";
    const std::size_t nobj = m.object_count();
    for (ObjId x = 0; x < nobj; ++x) s.cat.objects.push_back(m.object_name(x));
    for (ObjId x = 0; x < nobj; ++x) {
        for (ObjId y = 0; y < nobj; ++y) {
            const Signature sig{{x}, y};
            const HomSet h = hom_checked(m, sig, b);
            if (h.truncated)
                throw BudgetError(m.describe() + ": unary hom " + signature_label(m, sig) +
                                  " exceeds the enumeration budget");
            for (const Arrow& a : h.arrows) {
                s.index[a] = static_cast<ArrId>(s.cat.arrows.size());
                s.cat.arrows.push_back(CatArrow{m.arrow_label(a), x, y});
            }
        }
    }
    s.cat.identities.resize(nobj);
    for (ObjId x = 0; x < nobj; ++x) {
        const auto it = s.index.find(m.identity(x));
        require_input(it != s.index.end(), m.describe() + ": identity missing from its hom-set");
        s.cat.identities[x] = it->second;
    }
    const std::size_t narr = s.cat.arrows.size();
    s.cat.comp.assign(narr, std::vector<ArrId>(narr, kNoArr));
    std::vector<Arrow> arrows(narr);
    for (const auto& [a, id] : s.index) arrows[id] = a;
    for (ArrId g = 0; g < narr; ++g) {
        for (ArrId f = 0; f < narr; ++f) {
            if (s.cat.arrows[g].dom != s.cat.arrows[f].cod) continue;
            const Arrow gf = m.compose(arrows[g], {&arrows[f], 1});
            const auto it = s.index.find(gf);
            require_input(it != s.index.end(),
                          m.describe() + ": composite escapes its hom-set");
            s.cat.comp[g][f] = it->second;
        }
    }
    check_category(s.cat);
    return s;
}

bool commutative_monoid_on(const Backend& m, ObjId y, const MonoidOn& c) {
    const Arrow idy = m.identity(y);
    const Arrow left = m.compose(c.mul, std::vector<Arrow>{c.unit, idy});
    if (left != idy) return false;
    const Arrow right = m.compose(c.mul, std::vector<Arrow>{idy, c.unit});
    if (right != idy) return false;
    const Arrow la = m.compose(c.mul, std::vector<Arrow>{c.mul, idy});
    const Arrow ra = m.compose(c.mul, std::vector<Arrow>{idy, c.mul});
    if (la != ra) return false;
    FamilyMap swap;
    swap.map = {1, 0};
    swap.source = {y, y};
    swap.target = {y, y};
    try {
        if (m.sym_act(swap, c.mul) != c.mul) return false;
    } catch (const UnsupportedAction&) {
        return false;
    }
    return true;
}

std::vector<MonoidOn> commutative_monoids_on(const Backend& m, ObjId y, const Budget& b) {
    std::vector<MonoidOn> out;
    const HomSet units = hom_checked(m, Signature{{}, y}, b);
    const HomSet muls = hom_checked(m, Signature{{y, y}, y}, b);
    for (const Arrow& u : units.arrows)
        for (const Arrow& mu : muls.arrows) {
            MonoidOn c{u, mu};
            if (commutative_monoid_on(m, y, c)) out.push_back(std::move(c));
        }
    return out;
}

// centrality of a whole family against arrows g of arity <= max_arity/2:
// mul_D(g(x), g(x')) must equal g applied to slotwise mul, after the
// interleaving permutation.
bool central_family(const Backend& m, const std::vector<MonoidOn>& fam, const Budget& b) {
    const std::size_t gmax = b.max_arity / 2;
    for (const Signature& sig : all_signatures(m, gmax)) {
        const HomSet hs = hom_checked(m, sig, b);
        std::uint64_t used = 0;
        for (const Arrow& g : hs.arrows) {
            if (used++ >= b.max_enum) break;
            const std::size_t n = g.arity();
            const ObjId d = g.sig.codomain;
            const Arrow lhs_core = m.compose(fam[d].mul, std::vector<Arrow>{g, g});
            Arrow lhs = lhs_core;
            if (n > 1) {
                FamilyMap inter;
                inter.map.resize(2 * n);
                for (std::size_t j = 0; j < 2; ++j)
                    for (std::size_t i = 0; i < n; ++i) inter.map[j * n + i] = 2 * i + j;
                inter.source = lhs_core.sig.domain;
                inter.target.resize(2 * n);
                for (std::size_t i = 0; i < 2 * n; ++i)
                    inter.target[inter.map[i]] = inter.source[i];
                try {
                    lhs = m.sym_act(inter, lhs_core);
                } catch (const UnsupportedAction&) {
                    return false;
                }
            }
            std::vector<Arrow> muls;
            for (ObjId a : g.sig.domain) muls.push_back(fam[a].mul);
            const Arrow rhs = m.compose(g, muls);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

std::vector<std::vector<MonoidOn>> central_families(const Backend& m, const Budget& b) {
    const std::size_t nobj = m.object_count();
    std::vector<std::vector<MonoidOn>> cand(nobj);
    for (ObjId y = 0; y < nobj; ++y) {
        cand[y] = commutative_monoids_on(m, y, b);
        if (cand[y].empty()) return {};
    }
    std::vector<std::vector<MonoidOn>> central;
    if (nobj == 0) {
        central.push_back({});
        return central;
    }
    std::vector<std::size_t> pick(nobj, 0);
    while (true) {
        std::vector<MonoidOn> fam;
        for (ObjId y = 0; y < nobj; ++y) fam.push_back(cand[y][pick[y]]);
        if (central_family(m, fam, b)) central.push_back(std::move(fam));
        std::size_t i = nobj;
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
    return central;
}

FiniteCategory underlying_category(const Backend& m, const Budget& b) {
    return unary_slice(m, b).cat;
}

PreadditiveCategory extract_enrichment(const Backend& m, const Budget& b) {
    require_input(m.cartesian(), m.describe() + ": contraction and weakening are required");
    const std::size_t nobj = m.object_count();
    for (ObjId y = 0; y < nobj; ++y)
        if (commutative_monoids_on(m, y, b).empty())
            throw InputError(m.describe() + ": no commutative monoid on object " +
                             m.object_name(y) + " within budget");
    const std::vector<std::vector<MonoidOn>> central = central_families(m, b);
    if (central.size() != 1)
        throw InputError(m.describe() + ": central monoid count is " +
                         std::to_string(central.size()) + ", expected exactly one");
    const std::vector<MonoidOn>& fam = central.front();

    UnarySlice slice = unary_slice(m, b);
    PreadditiveCategory out;
    out.cat = slice.cat;
    out.enr.zero.assign(nobj, std::vector<ArrId>(nobj, 0));
    for (ObjId x = 0; x < nobj; ++x) {
        for (ObjId y = 0; y < nobj; ++y) {
            const Arrow z = m.weaken(fam[y].unit, 0, x);
            const auto it = slice.index.find(z);
            require_input(it != slice.index.end(),
                          m.describe() + ": weakened unit escapes the unary slice");
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
            const Arrow both = m.compose(fam[y].mul, std::vector<Arrow>{arrows[f], arrows[g]});
            const Arrow sum = m.contract(both, 0);
            const auto it = slice.index.find(sum);
            require_input(it != slice.index.end(),
                          m.describe() + ": contracted sum escapes the unary slice");
            out.enr.add[{f, g}] = it->second;
        }
    }
    check_enrichment(out.cat, out.enr);
    return out;
}

IsoReport frobenius_check(BackendPtr m, const FiniteCategory& c, const Budget& b) {
    IsoReport rep;
    const UnarySlice slice = unary_slice(*m, b);
    const FiniteCategory pc = product_category(slice.cat, c);
    const BackendPtr rhs = unary(pc);
    // The closed form under test: M x C^-  ~  (M_- x C)^-. The left side is
    // built directly as a product backend.
    const BackendPtr left = product_mcat(m, unary(c));
    const std::size_t narr_c = c.arrows.size();
    // theta: left arrow (f, g) -> pc arrow id index(f) * |arr c| + g
    const auto theta = [&](const Arrow& a) -> Arrow {
        // split along the product code layout: [lenM, codeM..., codeC...]
        const std::size_t lm = static_cast<std::size_t>(a.code.at(0));
        Arrow fm;
        fm.sig.domain = {static_cast<ObjId>(a.sig.domain.at(0) / c.objects.size())};
        fm.sig.codomain = static_cast<ObjId>(a.sig.codomain / c.objects.size());
        fm.code.assign(a.code.begin() + 1, a.code.begin() + 1 + static_cast<std::ptrdiff_t>(lm));
        const ArrId fid = slice.index.at(fm);
        const ArrId gid = static_cast<ArrId>(a.code.back());
        const ArrId pcid = static_cast<ArrId>(fid * narr_c + gid);
        // locate pcid in the rhs hom list
        Signature sig{{a.sig.domain.at(0)}, a.sig.codomain};
        const HomSet h = rhs->hom(sig, b.max_enum);
        for (const Arrow& r : h.arrows)
            if (static_cast<ArrId>(r.code[0]) == pcid) return r;
        throw InputError("frobenius: image arrow missing");
    };
    std::size_t sig_checked = 0;
    std::uint64_t comp_checked = 0;
    std::vector<Arrow> left_unaries;
    for (const Signature& sig : all_signatures(*left, 1)) {
        const HomSet hl = hom_checked(*left, sig, b);
        const HomSet hr = hom_checked(*rhs, sig, b);
        if (hl.truncated || hr.truncated)
            throw BudgetError("frobenius: unary hom exceeds the enumeration budget");
        if (sig.arity() == 0) {
            if (!hl.arrows.empty() || !hr.arrows.empty()) {
                rep.ok = false;
                rep.detail = "nullary hom not empty at " + signature_label(*left, sig);
                return rep;
            }
            continue;
        }
        if (hl.arrows.size() != hr.arrows.size()) {
            rep.ok = false;
            rep.detail = "hom count mismatch at " + signature_label(*left, sig) + ": " +
                         std::to_string(hl.arrows.size()) + " vs " +
                         std::to_string(hr.arrows.size());
            return rep;
        }
        // theta is injective into an equinumerous set: check image distinct
        std::vector<Arrow> images;
        for (const Arrow& a : hl.arrows) images.push_back(theta(a));
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
            rep.ok = false;
            rep.detail = "theta not injective at " + signature_label(*left, sig);
            return rep;
        }
        for (const Arrow& a : hl.arrows) left_unaries.push_back(a);
        ++sig_checked;
    }
    // identities map to identities
    for (ObjId o = 0; o < left->object_count(); ++o) {
        if (theta(left->identity(o)) != rhs->identity(o)) {
            rep.ok = false;
            rep.detail = "theta misses the identity of " + left->object_name(o);
            return rep;
        }
    }
    // composition transports
    for (const Arrow& g : left_unaries) {
        for (const Arrow& f : left_unaries) {
            if (f.sig.codomain != g.sig.domain[0]) continue;
            if (comp_checked++ >= b.max_enum) break;
            const Arrow gf = left->compose(g, {&f, 1});
            const Arrow tg = theta(g);
            const Arrow tf = theta(f);
            if (theta(gf) != rhs->compose(tg, {&tf, 1})) {
                rep.ok = false;
                rep.detail = "theta breaks composition at " + left->arrow_label(g) + " after " +
                             left->arrow_label(f);
                return rep;
            }
        }
    }
    std::ostringstream os;
    os << "unary signatures: " << sig_checked << ", composites: " << comp_checked;
    rep.detail = os.str();
    return rep;
}

IsoReport tensor_seq_count_check(const FiniteCategory& c, const FiniteCategory& d,
                                 const Budget& b) {
    IsoReport rep;
    const BackendPtr bv = bv_tensor_seq(c, d);
    const std::size_t nd = d.objects.size();
    std::size_t checked = 0;
    for (const Signature& sig : all_signatures(*bv, b.max_arity)) {
        // expected |hom| = product over inputs of |c(xi,x)| * |d(yi,y)|
        std::uint64_t expect = 1;
        bool over = false;
        const ObjId cx = static_cast<ObjId>(sig.codomain / nd);
        const ObjId cy = static_cast<ObjId>(sig.codomain % nd);
        for (ObjId z : sig.domain) {
            const ObjId zx = static_cast<ObjId>(z / nd);
            const ObjId zy = static_cast<ObjId>(z % nd);
            expect *= c.hom(zx, cx).size() * d.hom(zy, cy).size();
            if (expect > b.max_enum) {
                over = true;
                break;
            }
        }
        const HomSet h = hom_checked(*bv, sig, b);
        if (over) {
            if (!h.truncated) {
                rep.ok = false;
                rep.detail = "expected truncation at " + signature_label(*bv, sig);
                return rep;
            }
            continue;
        }
        if (h.truncated || h.arrows.size() != expect) {
            rep.ok = false;
            rep.detail = "hom count mismatch at " + signature_label(*bv, sig) + ": got " +
                         std::to_string(h.arrows.size()) + ", expected " +
                         std::to_string(expect);
            return rep;
        }
        ++checked;
    }
    rep.detail = "signatures checked: " + std::to_string(checked);
    return rep;
}

TableData snapshot_table(const Backend& m, std::size_t max_arity, std::uint64_t max_enum) {
    TableData t;
    t.name = m.describe();
    for (ObjId x = 0; x < m.object_count(); ++x) t.objects.push_back(m.object_name(x));
    std::map<Arrow, std::string> names;
    std::vector<Arrow> listed;
    for (const Signature& sig : all_signatures(m, max_arity)) {
        const HomSet h = m.hom(sig, max_enum);
        if (h.truncated)
            throw BudgetError(m.describe() + ": snapshot needs full hom-sets at " +
                              signature_label(m, sig));
        for (const Arrow& f : h.arrows) {
            const std::string nm = "x" + std::to_string(listed.size());
            names.emplace(f, nm);
            listed.push_back(f);
            TableData::TArrow ta;
            ta.name = nm;
            for (ObjId d : sig.domain) ta.dom.push_back(t.objects[d]);
            ta.cod = t.objects[sig.codomain];
            t.arrows.push_back(std::move(ta));
        }
    }
    std::vector<bool> is_identity(listed.size(), false);
    for (ObjId x = 0; x < m.object_count(); ++x) {
        const auto it = names.find(m.identity(x));
        require_input(it != names.end(), m.describe() + ": identity escapes the snapshot");
        t.identities.push_back(it->second);
        is_identity[static_cast<std::size_t>(
            std::find(listed.begin(), listed.end(), m.identity(x)) - listed.begin())] = true;
    }
    Budget sweep;
    sweep.max_arity = max_arity;
    sweep.max_enum = max_enum;
    HomCache cache(m, sweep);
    for (std::size_t fi = 0; fi < listed.size(); ++fi) {
        const Arrow& f = listed[fi];
        if (is_identity[fi]) continue;  // the unary unit cells are defaults
        each_arrow_tuple(cache, f.sig.domain, max_arity, [&](std::span<const Arrow> gs) {
            bool all_ids = !gs.empty();
            for (const Arrow& g : gs)
                all_ids = all_ids && g == m.identity(g.sig.codomain);
            if (all_ids) return true;  // unit cells are defaults
            std::string key = names.at(f) + "(";
            for (std::size_t i = 0; i < gs.size(); ++i)
                key += (i ? "," : "") + names.at(gs[i]);
            key += ")";
            t.comp_cells[key] = names.at(m.compose(f, gs));
            return true;
        });
        for (const std::vector<std::size_t>& p : all_permutations(f.arity())) {
            bool trivial = true;
            for (std::size_t i = 0; i < p.size(); ++i) trivial = trivial && p[i] == i;
            if (trivial) continue;
            std::string key = names.at(f) + "@[";
            for (std::size_t i = 0; i < p.size(); ++i)
                key += (i ? "," : "") + std::to_string(p[i] + 1);
            key += "]";
            try {
                t.sym_cells[key] =
                    names.at(m.sym_act(permutation_map(p, f.sig.domain), f));
            } catch (const UnsupportedAction&) {
                // plain backends snapshot without symmetry cells
            }
        }
    }
    if (cache.truncated())
        throw BudgetError(m.describe() + ": snapshot sweep needs full hom-sets");
    return t;
}

}  // namespace mcat
