#include "mcat/family_map.hpp"

#include <algorithm>
#include <numeric>

namespace mcat {

bool FamilyMap::is_bijective() const {
    if (source.size() != target.size()) return false;
    std::vector<char> hit(target.size(), 0);
    for (std::size_t v : map) {
        if (v >= target.size() || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

bool FamilyMap::is_monotone() const {
    for (std::size_t i = 1; i < map.size(); ++i)
        if (map[i] < map[i - 1]) return false;
    return true;
}

void check_family_map(const FamilyMap& s) {
    require_input(s.map.size() == s.source.size(), "family map: position map length mismatch");
    for (std::size_t i = 0; i < s.map.size(); ++i) {
        require_input(s.map[i] < s.target.size(), "family map: position out of range");
        require_input(s.target[s.map[i]] == s.source[i],
                      "family map: target family disagrees with source family");
    }
}

FamilyMap identity_map(const std::vector<ObjId>& family) {
    FamilyMap s;
    s.source = family;
    s.target = family;
    s.map.resize(family.size());
    std::iota(s.map.begin(), s.map.end(), std::size_t{0});
    return s;
}

FamilyMap compose(const FamilyMap& rho, const FamilyMap& sigma) {
    require_input(sigma.target == rho.source, "family map composition: middle family mismatch");
    FamilyMap r;
    r.source = sigma.source;
    r.target = rho.target;
    r.map.reserve(sigma.map.size());
    for (std::size_t v : sigma.map) r.map.push_back(rho.map[v]);
    return r;
}

FamilyMap sum(const std::vector<FamilyMap>& parts) {
    FamilyMap r;
    std::size_t tgt_off = 0;
    for (const FamilyMap& p : parts) {
        for (std::size_t v : p.map) r.map.push_back(tgt_off + v);
        r.source.insert(r.source.end(), p.source.begin(), p.source.end());
        r.target.insert(r.target.end(), p.target.begin(), p.target.end());
        tgt_off += p.target.size();
    }
    return r;
}

Factorization factor_family_map(const FamilyMap& s) {
    const std::size_t n = s.src_arity();
    const std::size_t m = s.tgt_arity();

    // Sort source positions by (value, index): perm_order[k] = k-th position.
    std::vector<std::size_t> perm_order(n);
    std::iota(perm_order.begin(), perm_order.end(), std::size_t{0});
    std::stable_sort(perm_order.begin(), perm_order.end(),
                     [&](std::size_t a, std::size_t b) { return s.map[a] < s.map[b]; });

    Factorization f;
    f.block_sizes.assign(m, 0);
    for (std::size_t v : s.map) ++f.block_sizes[v];

    // bijection: source position i goes to its rank in perm_order.
    f.bijection.source = s.source;
    f.bijection.target.resize(n);
    f.bijection.map.resize(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        f.bijection.map[perm_order[rank]] = rank;
        f.bijection.target[rank] = s.source[perm_order[rank]];
    }

    // monotone: rank k lands in the block its sigma-value dictates.
    f.monotone.source = f.bijection.target;
    f.monotone.target = s.target;
    f.monotone.map.resize(n);
    for (std::size_t rank = 0; rank < n; ++rank) f.monotone.map[rank] = s.map[perm_order[rank]];
    return f;
}

std::vector<Factorization> all_block_factorizations(const FamilyMap& s, std::size_t cap) {
    const std::size_t n = s.src_arity();
    const std::size_t m = s.tgt_arity();

    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t i = 0; i < n; ++i) blocks[s.map[i]].push_back(i);

    // Orders within each block vary independently; walk their product.
    std::vector<std::vector<std::vector<std::size_t>>> block_orders(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::size_t> b = blocks[j];
        std::sort(b.begin(), b.end());
        do {
            block_orders[j].push_back(b);
        } while (std::next_permutation(b.begin(), b.end()));
    }

    std::vector<Factorization> out;
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        std::vector<std::size_t> perm_order;
        perm_order.reserve(n);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i : block_orders[j][pick[j]]) perm_order.push_back(i);

        Factorization f;
        f.block_sizes.assign(m, 0);
        for (std::size_t v : s.map) ++f.block_sizes[v];
        f.bijection.source = s.source;
        f.bijection.target.resize(n);
        f.bijection.map.resize(n);
        for (std::size_t rank = 0; rank < n; ++rank) {
            f.bijection.map[perm_order[rank]] = rank;
            f.bijection.target[rank] = s.source[perm_order[rank]];
        }
        f.monotone.source = f.bijection.target;
        f.monotone.target = s.target;
        f.monotone.map.resize(n);
        for (std::size_t rank = 0; rank < n; ++rank)
            f.monotone.map[rank] = s.map[perm_order[rank]];
        out.push_back(std::move(f));
        if (out.size() >= cap) break;

        std::size_t j = 0;
        for (; j < m; ++j) {
            if (++pick[j] < block_orders[j].size()) break;
            pick[j] = 0;
        }
        if (j == m) break;
    }
    return out;
}

FamilyMap transpose_map(std::size_t n, std::size_t m,
                        const std::vector<ObjId>& source_grouped_i_outer,
                        const std::vector<ObjId>& target_grouped_j_outer) {
    require_input(source_grouped_i_outer.size() == n * m && target_grouped_j_outer.size() == n * m,
                  "transpose map: family lengths must be n*m");
    FamilyMap s;
    s.source = source_grouped_i_outer;
    s.target = target_grouped_j_outer;
    s.map.resize(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) s.map[i * m + j] = j * n + i;
    return s;
}

FamilyMap block_map(const FamilyMap& sigma, const std::vector<std::vector<ObjId>>& g_domains) {
    require_input(g_domains.size() == sigma.tgt_arity(),
                  "block map: one domain family per target position required");
    std::vector<std::size_t> tgt_off(g_domains.size() + 1, 0);
    for (std::size_t j = 0; j < g_domains.size(); ++j)
        tgt_off[j + 1] = tgt_off[j] + g_domains[j].size();

    FamilyMap r;
    r.target.reserve(tgt_off.back());
    for (const auto& d : g_domains) r.target.insert(r.target.end(), d.begin(), d.end());
    for (std::size_t i = 0; i < sigma.src_arity(); ++i) {
        const std::size_t j = sigma.map[i];
        for (std::size_t p = 0; p < g_domains[j].size(); ++p) {
            r.map.push_back(tgt_off[j] + p);
            r.source.push_back(g_domains[j][p]);
        }
    }
    return r;
}

FamilyMap contraction_map(const std::vector<ObjId>& family, std::size_t pos) {
    require_input(pos + 1 < family.size(), "contract: position out of range");
    require_input(family[pos] == family[pos + 1], "contract: positions carry distinct objects");
    FamilyMap s;
    s.source = family;
    s.target = family;
    s.target.erase(s.target.begin() + static_cast<std::ptrdiff_t>(pos));
    s.map.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) s.map[i] = i <= pos ? i : (i <= pos + 1 ? pos : i - 1);
    return s;
}

FamilyMap weakening_map(const std::vector<ObjId>& family, std::size_t pos, ObjId x) {
    require_input(pos <= family.size(), "weaken: position out of range");
    FamilyMap s;
    s.source = family;
    s.target = family;
    s.target.insert(s.target.begin() + static_cast<std::ptrdiff_t>(pos), x);
    s.map.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) s.map[i] = i < pos ? i : i + 1;
    return s;
}

FamilyMap permutation_map(const std::vector<std::size_t>& p, const std::vector<ObjId>& src) {
    FamilyMap s;
    s.map = p;
    s.source = src;
    s.target.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) s.target[p[i]] = src[i];
    return s;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<std::vector<std::size_t>> all_position_maps(std::size_t n, std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (m == 0) return out;  // no maps from nonempty to empty
    std::vector<std::size_t> v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++v[i] < m) break;
            v[i] = 0;
            if (i == 0) return out;
        }
    }
}

}  // namespace mcat
