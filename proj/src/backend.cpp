#include "mcat/backend.hpp"

#include <sstream>

namespace mcat {

Arrow Backend::contract(const Arrow&, std::size_t) const {
    throw UnsupportedAction(describe() + ": no contraction (backend is not cartesian)");
}

Arrow Backend::weaken(const Arrow&, std::size_t, ObjId) const {
    throw UnsupportedAction(describe() + ": no weakening (backend is not cartesian)");
}

std::optional<Arrow> Backend::universal_arrow(const std::vector<ObjId>&) const { return {}; }

std::string Backend::arrow_label(const Arrow& f) const {
    std::ostringstream os;
    os << "#[";
    for (std::size_t i = 0; i < f.code.size(); ++i) os << (i ? "," : "") << f.code[i];
    os << "]";
    return os.str();
}

void check_signature(const Backend& m, const Signature& sig) {
    require_input(sig.codomain < m.object_count(), "signature: unknown codomain object");
    for (ObjId a : sig.domain)
        require_input(a < m.object_count(), "signature: unknown domain object");
}

HomSet hom_checked(const Backend& m, const Signature& sig, const Budget& b) {
    check_signature(m, sig);
    if (sig.arity() > b.max_arity)
        throw BudgetError("hom: arity " + std::to_string(sig.arity()) + " over budget cap " +
                          std::to_string(b.max_arity));
    return m.hom(sig, b.max_enum);
}

void check_composable(const Backend& m, const Arrow& f, std::span<const Arrow> gs) {
    require_input(gs.size() == f.arity(), "compose: need one factor per domain position");
    for (std::size_t i = 0; i < gs.size(); ++i)
        require_input(gs[i].sig.codomain == f.sig.domain[i],
                      m.describe() + ": compose: factor codomain mismatch at position " +
                          std::to_string(i));
}

Arrow cart_act_via(const Backend& m, const Factorization& fac, const Arrow& arrow) {
    require_input(fac.bijection.source == arrow.sig.domain,
                  "cart_act: family map source is not the arrow's domain");
    Arrow cur = arrow;
    if (!fac.bijection.map.empty() || arrow.arity() == 0) {
        bool is_id = true;
        for (std::size_t i = 0; i < fac.bijection.map.size(); ++i)
            if (fac.bijection.map[i] != i) is_id = false;
        if (!is_id) cur = m.sym_act(fac.bijection, cur);
    }
    // Post-bijection the map is monotone with block sizes per target
    // position. Walk blocks right to left so earlier positions stay put.
    const auto& sizes = fac.block_sizes;
    std::size_t pos = 0;
    std::vector<std::size_t> starts(sizes.size(), 0);
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        starts[j] = pos;
        pos += sizes[j];
    }
    for (std::size_t jj = sizes.size(); jj > 0; --jj) {
        const std::size_t j = jj - 1;
        if (sizes[j] == 0) {
            cur = m.weaken(cur, starts[j], fac.monotone.target[j]);
        } else {
            for (std::size_t k = 0; k + 1 < sizes[j]; ++k) cur = m.contract(cur, starts[j]);
        }
    }
    return cur;
}

Arrow cart_act(const Backend& m, const FamilyMap& s, const Arrow& f) {
    check_family_map(s);
    require_input(s.source == f.sig.domain, "cart_act: family map source is not the arrow's domain");
    if (s.is_bijective()) return m.sym_act(s, f);
    if (!m.cartesian())
        throw UnsupportedAction(m.describe() + ": non-bijective action needs a cartesian backend");
    return cart_act_via(m, factor_family_map(s), f);
}

std::vector<std::vector<ObjId>> all_families(const Backend& m, std::size_t max_arity) {
    std::vector<std::vector<ObjId>> out;
    const std::size_t nobj = m.object_count();
    for (std::size_t n = 0; n <= max_arity; ++n) {
        if (n > 0 && nobj == 0) break;
        std::vector<ObjId> fam(n, 0);
        while (true) {
            out.push_back(fam);
            if (n == 0) break;
            std::size_t i = n;
            bool done = false;
            while (i > 0) {
                --i;
                if (++fam[i] < nobj) break;
                fam[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
    return out;
}

std::vector<Signature> all_signatures(const Backend& m, std::size_t max_arity) {
    std::vector<Signature> out;
    for (const auto& fam : all_families(m, max_arity))
        for (ObjId c = 0; c < m.object_count(); ++c) out.push_back(Signature{fam, c});
    return out;
}

std::string signature_label(const Backend& m, const Signature& sig) {
    std::ostringstream os;
    for (std::size_t i = 0; i < sig.domain.size(); ++i)
        os << (i ? "," : "") << m.object_name(sig.domain[i]);
    os << " -> " << m.object_name(sig.codomain);
    return os.str();
}

const HomSet& HomCache::get(const Signature& sig) {
    auto it = cache_.find(sig);
    if (it == cache_.end()) it = cache_.emplace(sig, hom_checked(m_, sig, b_)).first;
    if (it->second.truncated) truncated_ = true;
    return it->second;
}

namespace {

// Recursive slot filler behind each_arrow_tuple. picked holds g_1..g_{slot}.
bool fill_slots(HomCache& h, const std::vector<ObjId>& cods, std::size_t slot,
                std::size_t arity_left, std::vector<Arrow>& picked,
                const std::function<bool(std::span<const Arrow>)>& fn) {
    if (slot == cods.size()) return fn(picked);
    const Backend& m = h.backend();
    const std::size_t nobj = m.object_count();
    for (std::size_t k = 0; k <= arity_left; ++k) {
        if (k > 0 && nobj == 0) break;
        std::vector<ObjId> dom(k, 0);
        while (true) {
            const HomSet& hs = h.get(Signature{dom, cods[slot]});
            for (const Arrow& g : hs.arrows) {
                picked.push_back(g);
                bool keep = fill_slots(h, cods, slot + 1, arity_left - k, picked, fn);
                picked.pop_back();
                if (!keep) return false;
            }
            if (k == 0) break;
            std::size_t i = k;
            bool done = false;
            while (i > 0) {
                --i;
                if (++dom[i] < nobj) break;
                dom[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
    return true;
}

}  // namespace

bool each_arrow_tuple(HomCache& h, const std::vector<ObjId>& cods,
                      std::size_t arity_cap,
                      const std::function<bool(std::span<const Arrow>)>& fn) {
    std::vector<Arrow> picked;
    picked.reserve(cods.size());
    return fill_slots(h, cods, 0, arity_cap, picked, fn);
}

}  // namespace mcat
