#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "mcat/constructions.hpp"

namespace mcat {
namespace {

Signature composed_signature(const Arrow& f, std::span<const Arrow> gs) {
    Signature sig;
    for (const Arrow& g : gs)
        sig.domain.insert(sig.domain.end(), g.sig.domain.begin(), g.sig.domain.end());
    sig.codomain = f.sig.codomain;
    return sig;
}

void guard_sym(const Backend& m, const FamilyMap& s, const Arrow& f) {
    check_family_map(s);
    require_input(s.source == f.sig.domain, m.describe() + ": action source is not the arrow's domain");
    if (!s.is_bijective())
        throw UnsupportedAction(m.describe() + ": sym_act needs a bijective family map");
}

// Odometer over k slots with given sizes, rightmost fastest.
struct Odometer {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> idx;
    bool alive = true;

    explicit Odometer(std::vector<std::size_t> s) : sizes(std::move(s)), idx(sizes.size(), 0) {
        for (std::size_t v : sizes)
            if (v == 0) alive = false;
    }
    bool next() {
        std::size_t i = idx.size();
        while (i > 0) {
            --i;
            if (++idx[i] < sizes[i]) return true;
            idx[i] = 0;
            if (i == 0) break;
        }
        alive = false;
        return false;
    }
};

// ---------------------------------------------------------------------
// seq(c) and seq_cartesian(c, enr): tuples of category arrows.

class SeqBackend final : public Backend {
public:
    SeqBackend(FiniteCategory c, std::optional<CMonEnrichment> e, std::string tag)
        : c_(std::move(c)), enr_(std::move(e)), tag_(std::move(tag)) {
        check_category(c_);
        if (enr_) check_enrichment(c_, *enr_);
    }

    BackendKind kind() const override { return BackendKind::seq; }
    std::string describe() const override { return tag_; }
    std::size_t object_count() const override { return c_.objects.size(); }
    std::string object_name(ObjId a) const override { return c_.objects.at(a); }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        std::vector<std::vector<ArrId>> hs;
        std::vector<std::size_t> sizes;
        for (ObjId a : sig.domain) {
            hs.push_back(c_.hom(a, sig.codomain));
            sizes.push_back(hs.back().size());
        }
        HomSet out;
        Odometer od(sizes);
        while (od.alive) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            Arrow a;
            a.sig = sig;
            for (std::size_t i = 0; i < hs.size(); ++i) a.code.push_back(hs[i][od.idx[i]]);
            out.arrows.push_back(std::move(a));
            if (!od.next()) break;
        }
        return out;
    }

    Arrow identity(ObjId a) const override {
        return Arrow{Signature{{a}, a}, {c_.identities.at(a)}};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Arrow r;
        r.sig = composed_signature(f, gs);
        for (std::size_t i = 0; i < gs.size(); ++i)
            for (std::uint64_t gj : gs[i].code)
                r.code.push_back(c_.compose(static_cast<ArrId>(f.code[i]), static_cast<ArrId>(gj)));
        return r;
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        Arrow r;
        r.sig = Signature{s.target, f.sig.codomain};
        r.code.resize(f.code.size());
        for (std::size_t i = 0; i < f.code.size(); ++i) r.code[s.map[i]] = f.code[i];
        return r;
    }

    bool cartesian() const override { return enr_.has_value(); }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        if (!enr_) return Backend::contract(f, pos);
        require_input(pos + 1 < f.arity() && f.sig.domain[pos] == f.sig.domain[pos + 1],
                      tag_ + ": contract positions must be adjacent equal objects");
        Arrow r = f;
        r.code[pos] = enr_->plus(static_cast<ArrId>(f.code[pos]), static_cast<ArrId>(f.code[pos + 1]));
        r.code.erase(r.code.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        r.sig.domain.erase(r.sig.domain.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        return r;
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        if (!enr_) return Backend::weaken(f, pos, x);
        require_input(pos <= f.arity(), tag_ + ": weaken position out of range");
        Arrow r = f;
        r.code.insert(r.code.begin() + static_cast<std::ptrdiff_t>(pos), enr_->zero[x][f.sig.codomain]);
        r.sig.domain.insert(r.sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        return r;
    }

    std::string arrow_label(const Arrow& f) const override {
        std::ostringstream os;
        os << "<";
        for (std::size_t i = 0; i < f.code.size(); ++i)
            os << (i ? "," : "") << c_.arrows[static_cast<ArrId>(f.code[i])].name;
        os << ">";
        return os.str();
    }

    const FiniteCategory& category() const { return c_; }
    const CMonEnrichment* enrichment() const { return enr_ ? &*enr_ : nullptr; }

private:
    FiniteCategory c_;
    std::optional<CMonEnrichment> enr_;
    std::string tag_;
};

// ---------------------------------------------------------------------
// unary(c): the category at arity one.

class UnaryBackend final : public Backend {
public:
    UnaryBackend(FiniteCategory c, std::string tag) : c_(std::move(c)), tag_(std::move(tag)) {
        check_category(c_);
    }

    BackendKind kind() const override { return BackendKind::unary; }
    std::string describe() const override { return tag_; }
    std::size_t object_count() const override { return c_.objects.size(); }
    std::string object_name(ObjId a) const override { return c_.objects.at(a); }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        if (sig.arity() != 1) return out;
        for (ArrId a : c_.hom(sig.domain[0], sig.codomain)) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            out.arrows.push_back(Arrow{sig, {a}});
        }
        return out;
    }

    Arrow identity(ObjId a) const override {
        return Arrow{Signature{{a}, a}, {c_.identities.at(a)}};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        require_input(f.arity() == 1 && gs[0].arity() == 1, tag_ + ": only unary arrows exist");
        return Arrow{Signature{gs[0].sig.domain, f.sig.codomain},
                     {c_.compose(static_cast<ArrId>(f.code[0]), static_cast<ArrId>(gs[0].code[0]))}};
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        return f;  // arity one admits only the identity bijection
    }

    bool cartesian() const override { return false; }

    std::string arrow_label(const Arrow& f) const override {
        return c_.arrows[static_cast<ArrId>(f.code[0])].name;
    }

    const FiniteCategory& category() const { return c_; }

private:
    FiniteCategory c_;
    std::string tag_;
};

// ---------------------------------------------------------------------
// finset(cap): skeletal finite sets, arrows are value tables over the
// product of the domain sizes (lexicographic argument ranks).

class FinSetBackend final : public Backend {
public:
    FinSetBackend(std::size_t cap, bool cart) : cap_(cap), cart_(cart) {}

    BackendKind kind() const override { return BackendKind::finset; }
    std::string describe() const override {
        return "finset(" + std::to_string(cap_) + (cart_ ? ",cartesian)" : ",monoidal)");
    }
    std::size_t object_count() const override { return cap_ + 1; }
    std::string object_name(ObjId a) const override { return std::to_string(a); }

    static std::uint64_t domain_card(const Signature& sig) {
        std::uint64_t n = 1;
        for (ObjId a : sig.domain) n *= a;
        return n;
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        const std::uint64_t n = domain_card(sig);
        const std::uint64_t s = sig.codomain;
        if (n == 0) {
            out.arrows.push_back(Arrow{sig, {}});
            return out;
        }
        if (s == 0) return out;
        std::vector<std::uint64_t> table(n, 0);
        while (true) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            out.arrows.push_back(Arrow{sig, table});
            std::size_t i = static_cast<std::size_t>(n);
            bool done = false;
            while (i > 0) {
                --i;
                if (++table[i] < s) break;
                table[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
        return out;
    }

    Arrow identity(ObjId a) const override {
        Arrow r{Signature{{a}, a}, {}};
        for (std::uint64_t v = 0; v < a; ++v) r.code.push_back(v);
        return r;
    }

    // rank of an argument tuple, leftmost position most significant
    static std::uint64_t tuple_rank(const std::vector<ObjId>& sizes, const std::vector<std::uint64_t>& xs) {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) r = r * sizes[i] + xs[i];
        return r;
    }

    static std::vector<std::uint64_t> rank_tuple(const std::vector<ObjId>& sizes, std::uint64_t r) {
        std::vector<std::uint64_t> xs(sizes.size(), 0);
        for (std::size_t i = sizes.size(); i > 0; --i) {
            xs[i - 1] = r % sizes[i - 1];
            r /= sizes[i - 1];
        }
        return xs;
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Arrow r;
        r.sig = composed_signature(f, gs);
        const std::uint64_t n = domain_card(r.sig);
        r.code.resize(n);
        if (n == 0) {
            r.code.clear();
            return r;
        }
        for (std::uint64_t rank = 0; rank < n; ++rank) {
            const auto xs = rank_tuple(r.sig.domain, rank);
            std::vector<std::uint64_t> ys(gs.size());
            std::size_t off = 0;
            for (std::size_t i = 0; i < gs.size(); ++i) {
                const auto& d = gs[i].sig.domain;
                std::vector<std::uint64_t> slice(xs.begin() + static_cast<std::ptrdiff_t>(off),
                                                 xs.begin() + static_cast<std::ptrdiff_t>(off + d.size()));
                off += d.size();
                ys[i] = gs[i].code[tuple_rank(d, slice)];
            }
            r.code[rank] = f.code[tuple_rank(f.sig.domain, ys)];
        }
        return r;
    }

    Arrow act_general(const FamilyMap& s, const Arrow& f) const {
        Arrow r;
        r.sig = Signature{s.target, f.sig.codomain};
        const std::uint64_t n = domain_card(r.sig);
        r.code.resize(n);
        if (domain_card(f.sig) == 0 && n > 0) {
            // source had an empty factor but target does not: impossible for
            // bijections and contractions; weakening never drops positions.
            throw InputError(describe() + ": action widens an empty product");
        }
        if (n == 0) {
            r.code.clear();
            return r;
        }
        for (std::uint64_t rank = 0; rank < n; ++rank) {
            const auto xs = rank_tuple(r.sig.domain, rank);
            std::vector<std::uint64_t> as(f.sig.domain.size());
            for (std::size_t i = 0; i < as.size(); ++i) as[i] = xs[s.map[i]];
            r.code[rank] = f.code[tuple_rank(f.sig.domain, as)];
        }
        return r;
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        return act_general(s, f);
    }

    bool cartesian() const override { return cart_; }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        if (!cart_) return Backend::contract(f, pos);
        return act_general(contraction_map(f.sig.domain, pos), f);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        if (!cart_) return Backend::weaken(f, pos, x);
        return act_general(weakening_map(f.sig.domain, pos, x), f);
    }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        std::uint64_t p = 1;
        for (ObjId a : family) p *= a;
        if (p > cap_) return {};
        Arrow u{Signature{family, static_cast<ObjId>(p)}, {}};
        for (std::uint64_t r = 0; r < p; ++r) u.code.push_back(r);
        return u;
    }

    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
    bool cart_;
};

// ---------------------------------------------------------------------
// discrete monoid: elements as objects, subsingleton homs.

class DiscreteBackend final : public Backend {
public:
    explicit DiscreteBackend(MonoidTable m) : m_(std::move(m)) { check_monoid(m_); }

    BackendKind kind() const override { return BackendKind::discrete; }
    std::string describe() const override { return "discrete(" + m_.name + ")"; }
    std::size_t object_count() const override { return m_.elements.size(); }
    std::string object_name(ObjId a) const override { return m_.elements.at(a); }

    std::size_t prod(const std::vector<ObjId>& fam) const {
        std::size_t acc = m_.unit;
        for (ObjId a : fam) acc = m_.mult(acc, a);
        return acc;
    }

    HomSet hom(const Signature& sig, std::uint64_t) const override {
        HomSet out;
        if (prod(sig.domain) == sig.codomain) out.arrows.push_back(Arrow{sig, {}});
        return out;
    }

    Arrow identity(ObjId a) const override { return Arrow{Signature{{a}, a}, {}}; }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        return Arrow{composed_signature(f, gs), {}};
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        if (prod(s.target) != f.sig.codomain)
            throw UnsupportedAction(describe() + ": permuted product differs; no symmetric action");
        return Arrow{Signature{s.target, f.sig.codomain}, {}};
    }

    bool cartesian() const override { return false; }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        return Arrow{Signature{family, static_cast<ObjId>(prod(family))}, {}};
    }

    std::string arrow_label(const Arrow& f) const override {
        return "!" + signature_label(*this, f.sig);
    }

    const MonoidTable& monoid() const { return m_; }

private:
    MonoidTable m_;
};

// ---------------------------------------------------------------------
// naturals rig: one object, tuples of naturals, substitution with scaling.

class NatRigBackend final : public Backend {
public:
    BackendKind kind() const override { return BackendKind::natrig; }
    std::string describe() const override { return "natrig"; }
    std::size_t object_count() const override { return 1; }
    std::string object_name(ObjId) const override { return "*"; }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        const std::size_t n = sig.arity();
        if (n == 0) {
            out.arrows.push_back(Arrow{sig, {}});
            return out;
        }
        // graded: total sum ascending, lexicographic within a grade
        for (std::uint64_t s = 0;; ++s) {
            std::vector<std::uint64_t> t(n, 0);
            t[n - 1] = s;
            while (true) {
                if (out.arrows.size() >= max_enum) {
                    out.truncated = true;
                    return out;
                }
                out.arrows.push_back(Arrow{sig, t});
                // next composition of s in lex order: find rightmost i < n-1
                // with t[i] incrementable (some mass strictly right of i)
                std::size_t i = n - 1;
                bool moved = false;
                while (i > 0) {
                    --i;
                    std::uint64_t right = 0;
                    for (std::size_t j = i + 1; j < n; ++j) right += t[j];
                    if (right > 0) {
                        ++t[i];
                        std::uint64_t rest = right - 1;
                        for (std::size_t j = i + 1; j < n; ++j) t[j] = 0;
                        t[n - 1] = rest;
                        moved = true;
                        break;
                    }
                }
                if (!moved) break;
            }
        }
    }

    Arrow identity(ObjId a) const override { return Arrow{Signature{{a}, a}, {1}}; }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        Arrow r;
        r.sig = composed_signature(f, gs);
        for (std::size_t i = 0; i < gs.size(); ++i)
            for (std::uint64_t v : gs[i].code) r.code.push_back(f.code[i] * v);
        return r;
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        Arrow r;
        r.sig = Signature{s.target, f.sig.codomain};
        r.code.resize(f.code.size());
        for (std::size_t i = 0; i < f.code.size(); ++i) r.code[s.map[i]] = f.code[i];
        return r;
    }

    bool cartesian() const override { return true; }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        require_input(pos + 1 < f.arity(), describe() + ": contract position out of range");
        Arrow r = f;
        r.code[pos] += r.code[pos + 1];
        r.code.erase(r.code.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        r.sig.domain.pop_back();
        return r;
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId) const override {
        require_input(pos <= f.arity(), describe() + ": weaken position out of range");
        Arrow r = f;
        r.code.insert(r.code.begin() + static_cast<std::ptrdiff_t>(pos), 0);
        r.sig.domain.push_back(0);
        return r;
    }

    std::string arrow_label(const Arrow& f) const override {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < f.code.size(); ++i) os << (i ? "," : "") << f.code[i];
        os << ")";
        return os.str();
    }
};

// ---------------------------------------------------------------------
// free preadditive over c, sequential flavor: tuples of multisets of
// c-arrows, composition by convolution. code per component: len, ids...

class FreePreBackend final : public Backend {
public:
    explicit FreePreBackend(FiniteCategory c) : c_(std::move(c)) { check_category(c_); }

    BackendKind kind() const override { return BackendKind::freepre; }
    std::string describe() const override { return "freepre_seq(" + c_.name + ")"; }
    std::size_t object_count() const override { return c_.objects.size(); }
    std::string object_name(ObjId a) const override { return c_.objects.at(a); }

    static std::vector<std::vector<std::uint64_t>> decode(const Arrow& a) {
        std::vector<std::vector<std::uint64_t>> parts;
        std::size_t i = 0;
        while (i < a.code.size()) {
            const std::size_t len = static_cast<std::size_t>(a.code[i++]);
            parts.push_back(std::vector<std::uint64_t>(a.code.begin() + static_cast<std::ptrdiff_t>(i),
                                                       a.code.begin() + static_cast<std::ptrdiff_t>(i + len)));
            i += len;
        }
        return parts;
    }

    static Arrow encode(Signature sig, const std::vector<std::vector<std::uint64_t>>& parts) {
        Arrow a;
        a.sig = std::move(sig);
        for (const auto& p : parts) {
            a.code.push_back(p.size());
            a.code.insert(a.code.end(), p.begin(), p.end());
        }
        return a;
    }

    // multisets of size k over the ascending list base, lexicographic
    static void multisets_of_size(const std::vector<ArrId>& base, std::size_t k,
                                  std::vector<std::vector<std::uint64_t>>& out) {
        std::vector<std::uint64_t> cur;
        struct Rec {
            const std::vector<ArrId>& base;
            std::size_t k;
            std::vector<std::vector<std::uint64_t>>& out;
            std::vector<std::uint64_t>& cur;
            void go(std::size_t from) {
                if (cur.size() == k) {
                    out.push_back(cur);
                    return;
                }
                for (std::size_t i = from; i < base.size(); ++i) {
                    cur.push_back(base[i]);
                    go(i);
                    cur.pop_back();
                }
            }
        } rec{base, k, out, cur};
        rec.go(0);
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        const std::size_t n = sig.arity();
        std::vector<std::vector<ArrId>> base(n);
        bool unbounded = false;
        for (std::size_t i = 0; i < n; ++i) {
            base[i] = c_.hom(sig.domain[i], sig.codomain);
            if (!base[i].empty()) unbounded = true;
        }
        for (std::uint64_t total = 0;; ++total) {
            // compositions of total into n parts, lex ascending
            std::vector<std::uint64_t> part(n, 0);
            if (n == 0) {
                if (total == 0) out.arrows.push_back(encode(sig, {}));
                return out;
            }
            part[n - 1] = total;
            while (true) {
                // per-position multiset lists of the prescribed sizes
                std::vector<std::vector<std::vector<std::uint64_t>>> lists(n);
                bool feasible = true;
                for (std::size_t i = 0; i < n && feasible; ++i) {
                    multisets_of_size(base[i], static_cast<std::size_t>(part[i]), lists[i]);
                    if (lists[i].empty()) feasible = false;
                }
                if (feasible) {
                    std::vector<std::size_t> sizes(n);
                    for (std::size_t i = 0; i < n; ++i) sizes[i] = lists[i].size();
                    Odometer od(sizes);
                    while (od.alive) {
                        if (out.arrows.size() >= max_enum) {
                            out.truncated = true;
                            return out;
                        }
                        std::vector<std::vector<std::uint64_t>> parts(n);
                        for (std::size_t i = 0; i < n; ++i) parts[i] = lists[i][od.idx[i]];
                        out.arrows.push_back(encode(sig, parts));
                        if (!od.next()) break;
                    }
                }
                std::size_t i = n - 1;
                bool moved = false;
                while (i > 0) {
                    --i;
                    std::uint64_t right = 0;
                    for (std::size_t j = i + 1; j < n; ++j) right += part[j];
                    if (right > 0) {
                        ++part[i];
                        for (std::size_t j = i + 1; j < n; ++j) part[j] = 0;
                        part[n - 1] = right - 1;
                        moved = true;
                        break;
                    }
                }
                if (!moved) break;
            }
            if (!unbounded) return out;  // only the all-empty grade exists
        }
    }

    Arrow identity(ObjId a) const override {
        return Arrow{Signature{{a}, a}, {1, c_.identities.at(a)}};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        const auto fparts = decode(f);
        std::vector<std::vector<std::uint64_t>> rparts;
        for (std::size_t i = 0; i < gs.size(); ++i) {
            for (const auto& gpart : decode(gs[i])) {
                std::vector<std::uint64_t> conv;
                for (std::uint64_t a : fparts[i])
                    for (std::uint64_t b : gpart)
                        conv.push_back(c_.compose(static_cast<ArrId>(a), static_cast<ArrId>(b)));
                std::sort(conv.begin(), conv.end());
                rparts.push_back(std::move(conv));
            }
        }
        return encode(composed_signature(f, gs), rparts);
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        const auto parts = decode(f);
        std::vector<std::vector<std::uint64_t>> rparts(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) rparts[s.map[i]] = parts[i];
        return encode(Signature{s.target, f.sig.codomain}, rparts);
    }

    bool cartesian() const override { return true; }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        require_input(pos + 1 < f.arity() && f.sig.domain[pos] == f.sig.domain[pos + 1],
                      describe() + ": contract positions must be adjacent equal objects");
        auto parts = decode(f);
        parts[pos].insert(parts[pos].end(), parts[pos + 1].begin(), parts[pos + 1].end());
        std::sort(parts[pos].begin(), parts[pos].end());
        parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        Signature sig = f.sig;
        sig.domain.erase(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        return encode(sig, parts);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        require_input(pos <= f.arity(), describe() + ": weaken position out of range");
        auto parts = decode(f);
        parts.emplace(parts.begin() + static_cast<std::ptrdiff_t>(pos));
        Signature sig = f.sig;
        sig.domain.insert(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        return encode(sig, parts);
    }

    std::string arrow_label(const Arrow& f) const override {
        std::ostringstream os;
        os << "<";
        const auto parts = decode(f);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            os << (i ? "," : "") << "{";
            for (std::size_t j = 0; j < parts[i].size(); ++j)
                os << (j ? "," : "") << c_.arrows[static_cast<ArrId>(parts[i][j])].name;
            os << "}";
        }
        os << ">";
        return os.str();
    }

    const FiniteCategory& category() const { return c_; }

private:
    FiniteCategory c_;
};

// ---------------------------------------------------------------------
// componentwise product of two backends.

class ProductBackend final : public Backend {
public:
    ProductBackend(BackendPtr l, BackendPtr r, std::string tag)
        : l_(std::move(l)), r_(std::move(r)), tag_(std::move(tag)) {}

    BackendKind kind() const override { return BackendKind::product; }
    std::string describe() const override { return tag_; }
    std::size_t object_count() const override { return l_->object_count() * r_->object_count(); }
    std::string object_name(ObjId a) const override {
        return "(" + l_->object_name(left(a)) + "," + r_->object_name(right(a)) + ")";
    }

    ObjId left(ObjId a) const { return static_cast<ObjId>(a / r_->object_count()); }
    ObjId right(ObjId a) const { return static_cast<ObjId>(a % r_->object_count()); }
    ObjId pair(ObjId x, ObjId y) const { return static_cast<ObjId>(x * r_->object_count() + y); }

    std::pair<Signature, Signature> split_sig(const Signature& sig) const {
        Signature a, b;
        for (ObjId o : sig.domain) {
            a.domain.push_back(left(o));
            b.domain.push_back(right(o));
        }
        a.codomain = left(sig.codomain);
        b.codomain = right(sig.codomain);
        return {a, b};
    }

    std::pair<Arrow, Arrow> split(const Arrow& f) const {
        auto [sa, sb] = split_sig(f.sig);
        const std::size_t la = static_cast<std::size_t>(f.code.at(0));
        Arrow a{sa, std::vector<std::uint64_t>(f.code.begin() + 1,
                                               f.code.begin() + 1 + static_cast<std::ptrdiff_t>(la))};
        Arrow b{sb, std::vector<std::uint64_t>(f.code.begin() + 1 + static_cast<std::ptrdiff_t>(la),
                                               f.code.end())};
        return {a, b};
    }

    Arrow join(const Signature& sig, const Arrow& a, const Arrow& b) const {
        Arrow r{sig, {a.code.size()}};
        r.code.insert(r.code.end(), a.code.begin(), a.code.end());
        r.code.insert(r.code.end(), b.code.begin(), b.code.end());
        return r;
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        auto [sa, sb] = split_sig(sig);
        const HomSet ha = l_->hom(sa, max_enum);
        const HomSet hb = r_->hom(sb, max_enum);
        HomSet out;
        out.truncated = ha.truncated || hb.truncated;
        for (const Arrow& a : ha.arrows) {
            for (const Arrow& b : hb.arrows) {
                if (out.arrows.size() >= max_enum) {
                    out.truncated = true;
                    return out;
                }
                out.arrows.push_back(join(sig, a, b));
            }
        }
        return out;
    }

    Arrow identity(ObjId o) const override {
        const Arrow a = l_->identity(left(o));
        const Arrow b = r_->identity(right(o));
        return join(Signature{{o}, o}, a, b);
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        auto [fa, fb] = split(f);
        std::vector<Arrow> gas, gbs;
        for (const Arrow& g : gs) {
            auto [ga, gb] = split(g);
            gas.push_back(ga);
            gbs.push_back(gb);
        }
        const Arrow ra = l_->compose(fa, gas);
        const Arrow rb = r_->compose(fb, gbs);
        return join(composed_signature(f, gs), ra, rb);
    }

    FamilyMap side_map(const FamilyMap& s, bool leftside) const {
        FamilyMap t;
        t.map = s.map;
        for (ObjId o : s.source) t.source.push_back(leftside ? left(o) : right(o));
        for (ObjId o : s.target) t.target.push_back(leftside ? left(o) : right(o));
        return t;
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        auto [fa, fb] = split(f);
        const Arrow ra = l_->sym_act(side_map(s, true), fa);
        const Arrow rb = r_->sym_act(side_map(s, false), fb);
        return join(Signature{s.target, f.sig.codomain}, ra, rb);
    }

    bool cartesian() const override { return l_->cartesian() && r_->cartesian(); }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        auto [fa, fb] = split(f);
        const Arrow ra = l_->contract(fa, pos);
        const Arrow rb = r_->contract(fb, pos);
        Signature sig = f.sig;
        sig.domain.erase(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        return join(sig, ra, rb);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        auto [fa, fb] = split(f);
        const Arrow ra = l_->weaken(fa, pos, left(x));
        const Arrow rb = r_->weaken(fb, pos, right(x));
        Signature sig = f.sig;
        sig.domain.insert(sig.domain.begin() + static_cast<std::ptrdiff_t>(pos), x);
        return join(sig, ra, rb);
    }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        std::vector<ObjId> fa, fb;
        for (ObjId o : family) {
            fa.push_back(left(o));
            fb.push_back(right(o));
        }
        const auto ua = l_->universal_arrow(fa);
        const auto ub = r_->universal_arrow(fb);
        if (!ua || !ub) return {};
        return join(Signature{family, pair(ua->sig.codomain, ub->sig.codomain)}, *ua, *ub);
    }

    std::string arrow_label(const Arrow& f) const override {
        auto [fa, fb] = split(f);
        return "(" + l_->arrow_label(fa) + "," + r_->arrow_label(fb) + ")";
    }

    const Backend* left_backend() const { return l_.get(); }
    const Backend* right_backend() const { return r_.get(); }

private:
    BackendPtr l_, r_;
    std::string tag_;
};

// ---------------------------------------------------------------------
// closed strict tensor tables.

class MonoidalBackend final : public Backend {
public:
    explicit MonoidalBackend(StrictMonoidalData d) : d_(std::move(d)) {
        check_category(d_.cat);
        check_monoidal(d_);
    }

    BackendKind kind() const override { return BackendKind::monoidal; }
    std::string describe() const override { return "monoidal(" + d_.cat.name + ")"; }
    std::size_t object_count() const override { return d_.cat.objects.size(); }
    std::string object_name(ObjId a) const override { return d_.cat.objects.at(a); }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        for (ArrId a : d_.cat.hom(d_.tobj_family(sig.domain), sig.codomain)) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            out.arrows.push_back(Arrow{sig, {a}});
        }
        return out;
    }

    Arrow identity(ObjId a) const override {
        return Arrow{Signature{{a}, a}, {d_.cat.identities.at(a)}};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        if (gs.empty()) return Arrow{f.sig, f.code};
        ArrId acc = static_cast<ArrId>(gs[0].code[0]);
        for (std::size_t i = 1; i < gs.size(); ++i)
            acc = d_.tarr(acc, static_cast<ArrId>(gs[i].code[0]));
        return Arrow{composed_signature(f, gs), {d_.cat.compose(static_cast<ArrId>(f.code[0]), acc)}};
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        bool is_id = true;
        for (std::size_t i = 0; i < s.map.size(); ++i)
            if (s.map[i] != i) is_id = false;
        if (is_id) return Arrow{Signature{s.target, f.sig.codomain}, f.code};
        require_input(d_.braiding.has_value(),
                      describe() + ": permutation action needs a braiding");
        // Build swap : T(target) -> T(source) with component i drawn from
        // target position s.map[i], by bubbling adjacent braidings.
        const auto& br = *d_.braiding;
        std::vector<ObjId> list = s.target;  // current object sequence
        std::vector<std::size_t> tok(list.size());
        std::iota(tok.begin(), tok.end(), std::size_t{0});
        ArrId acc = d_.cat.identities[d_.tobj_family(list)];
        for (std::size_t i = 0; i < s.map.size(); ++i) {
            std::size_t j = i;
            while (tok[j] != s.map[i]) ++j;
            for (std::size_t k = j; k > i; --k) {
                // swap positions k-1, k
                ObjId pre = d_.unit;
                for (std::size_t t = 0; t + 1 < k; ++t) pre = t == 0 ? list[0] : d_.tobj(pre, list[t]);
                ObjId post = d_.unit;
                for (std::size_t t = k + 1; t < list.size(); ++t)
                    post = t == k + 1 ? list[t] : d_.tobj(post, list[t]);
                ArrId step = br[list[k - 1]][list[k]];
                step = d_.tarr(d_.cat.identities[pre], step);
                step = d_.tarr(step, d_.cat.identities[post]);
                acc = d_.cat.compose(step, acc);
                std::swap(list[k - 1], list[k]);
                std::swap(tok[k - 1], tok[k]);
            }
        }
        return Arrow{Signature{s.target, f.sig.codomain},
                     {d_.cat.compose(static_cast<ArrId>(f.code[0]), acc)}};
    }

    bool cartesian() const override { return false; }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        const ObjId t = d_.tobj_family(family);
        return Arrow{Signature{family, t}, {d_.cat.identities[t]}};
    }

    std::string arrow_label(const Arrow& f) const override {
        return d_.cat.arrows[static_cast<ArrId>(f.code[0])].name;
    }

private:
    StrictMonoidalData d_;
};

// ---------------------------------------------------------------------
// chosen-products flavor over a finite category.

class FpCatBackend final : public Backend {
public:
    FpCatBackend(FiniteCategory c, ChosenProducts p) : c_(std::move(c)), p_(std::move(p)) {
        check_category(c_);
        check_products(c_, p_);
    }

    BackendKind kind() const override { return BackendKind::monoidal; }
    std::string describe() const override { return "fpcat(" + c_.name + ")"; }
    std::size_t object_count() const override { return c_.objects.size(); }
    std::string object_name(ObjId a) const override { return c_.objects.at(a); }

    // left fold product object of a family, with projections to every slot
    ObjId prod_obj(const std::vector<ObjId>& fam) const {
        if (fam.empty()) return p_.terminal;
        ObjId acc = fam[0];
        for (std::size_t i = 1; i < fam.size(); ++i) acc = p_.pairs[acc][fam[i]].prod;
        return acc;
    }

    std::vector<ArrId> projections(const std::vector<ObjId>& fam) const {
        std::vector<ArrId> proj;
        if (fam.empty()) return proj;
        proj.push_back(c_.identities[fam[0]]);  // running projection to the fold
        ObjId acc = fam[0];
        for (std::size_t i = 1; i < fam.size(); ++i) {
            const auto& pr = p_.pairs[acc][fam[i]];
            for (ArrId& q : proj) q = c_.comp[q][pr.p1];
            proj.push_back(pr.p2);
            acc = pr.prod;
        }
        return proj;
    }

    // unique t : z -> prod(fam) with projection composites as prescribed
    ArrId pair_into(const std::vector<ObjId>& fam, ObjId z, const std::vector<ArrId>& comps) const {
        const ObjId pr = prod_obj(fam);
        const auto proj = projections(fam);
        for (ArrId t : c_.hom(z, pr)) {
            bool ok = true;
            for (std::size_t i = 0; i < proj.size() && ok; ++i)
                if (c_.comp[proj[i]][t] != comps[i]) ok = false;
            if (ok) return t;
        }
        throw InputError(describe() + ": pairing not found; products not universal");
    }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        for (ArrId a : c_.hom(prod_obj(sig.domain), sig.codomain)) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            out.arrows.push_back(Arrow{sig, {a}});
        }
        return out;
    }

    Arrow identity(ObjId a) const override {
        return Arrow{Signature{{a}, a}, {c_.identities.at(a)}};
    }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        const Signature rsig = composed_signature(f, gs);
        // t : prod(concat) -> prod(f.domain) with i-th component
        // g_i . (projections of the i-th block)
        const ObjId z = prod_obj(rsig.domain);
        const auto proj_all = projections(rsig.domain);
        std::vector<ArrId> comps;
        std::size_t off = 0;
        for (const Arrow& g : gs) {
            const std::vector<ObjId>& gd = g.sig.domain;
            std::vector<ArrId> sub(proj_all.begin() + static_cast<std::ptrdiff_t>(off),
                                   proj_all.begin() + static_cast<std::ptrdiff_t>(off + gd.size()));
            off += gd.size();
            // component = g . pairing of its block projections
            ArrId into_g;
            if (gd.empty()) {
                into_g = c_.hom(z, p_.terminal).at(0);
            } else {
                into_g = pair_into(gd, z, sub);
            }
            comps.push_back(c_.comp[static_cast<ArrId>(g.code[0])][into_g]);
        }
        ArrId t;
        if (f.sig.domain.empty()) {
            t = c_.hom(z, p_.terminal).at(0);
        } else {
            t = pair_into(f.sig.domain, z, comps);
        }
        return Arrow{rsig, {c_.comp[static_cast<ArrId>(f.code[0])][t]}};
    }

    Arrow act_general(const FamilyMap& s, const Arrow& f) const {
        // sbar : prod(target) -> prod(source), component i = projection s.map[i]
        const auto tgt_proj = projections(s.target);
        std::vector<ArrId> comps;
        for (std::size_t i = 0; i < s.map.size(); ++i) comps.push_back(tgt_proj[s.map[i]]);
        const ObjId z = prod_obj(s.target);
        ArrId sbar;
        if (s.source.empty()) {
            sbar = c_.hom(z, p_.terminal).at(0);
        } else {
            sbar = pair_into(s.source, z, comps);
        }
        return Arrow{Signature{s.target, f.sig.codomain},
                     {c_.comp[static_cast<ArrId>(f.code[0])][sbar]}};
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        return act_general(s, f);
    }

    bool cartesian() const override { return true; }

    Arrow contract(const Arrow& f, std::size_t pos) const override {
        return act_general(contraction_map(f.sig.domain, pos), f);
    }

    Arrow weaken(const Arrow& f, std::size_t pos, ObjId x) const override {
        return act_general(weakening_map(f.sig.domain, pos, x), f);
    }

    std::optional<Arrow> universal_arrow(const std::vector<ObjId>& family) const override {
        const ObjId t = prod_obj(family);
        return Arrow{Signature{family, t}, {c_.identities[t]}};
    }

    std::string arrow_label(const Arrow& f) const override {
        return c_.arrows[static_cast<ArrId>(f.code[0])].name;
    }

private:
    FiniteCategory c_;
    ChosenProducts p_;
};

// ---------------------------------------------------------------------
// explicit table backend.

class TableBackend final : public Backend {
public:
    explicit TableBackend(const TableData& t) : name_(t.name), objects_(t.objects) {
        for (const auto& ta : t.arrows) {
            Signature sig;
            for (const auto& d : ta.dom) sig.domain.push_back(obj_index(d));
            sig.codomain = obj_index(ta.cod);
            arrow_names_.push_back(ta.name);
            arrow_sigs_.push_back(sig);
            homs_[sig].push_back(static_cast<std::uint32_t>(arrow_names_.size() - 1));
        }
        require_input(t.identities.size() == objects_.size(), name_ + ": one identity per object");
        for (ObjId o = 0; o < objects_.size(); ++o) {
            const std::uint32_t a = arrow_index(t.identities[o]);
            require_input(arrow_sigs_[a] == Signature{{o}, o},
                          name_ + ": identity of " + objects_[o] + " must be a unary endo-arrow");
            ids_.push_back(a);
        }
        for (const auto& [key, val] : t.comp_cells) comp_[parse_comp_key(key)] = arrow_index(val);
        for (const auto& [key, val] : t.sym_cells) sym_[parse_sym_key(key)] = arrow_index(val);
    }

    BackendKind kind() const override { return BackendKind::table; }
    std::string describe() const override { return "table(" + name_ + ")"; }
    std::size_t object_count() const override { return objects_.size(); }
    std::string object_name(ObjId a) const override { return objects_.at(a); }

    HomSet hom(const Signature& sig, std::uint64_t max_enum) const override {
        HomSet out;
        auto it = homs_.find(sig);
        if (it == homs_.end()) return out;
        for (std::size_t pos = 0; pos < it->second.size(); ++pos) {
            if (out.arrows.size() >= max_enum) {
                out.truncated = true;
                break;
            }
            out.arrows.push_back(Arrow{sig, {pos}});
        }
        return out;
    }

    // global id of an arrow value
    std::uint32_t global(const Arrow& f) const {
        auto it = homs_.find(f.sig);
        require_input(it != homs_.end() && f.code.size() == 1 && f.code[0] < it->second.size(),
                      name_ + ": unknown arrow");
        return it->second[static_cast<std::size_t>(f.code[0])];
    }

    Arrow from_global(std::uint32_t g) const {
        const Signature& sig = arrow_sigs_[g];
        const auto& list = homs_.at(sig);
        for (std::size_t pos = 0; pos < list.size(); ++pos)
            if (list[pos] == g) return Arrow{sig, {pos}};
        throw InputError(name_ + ": arrow lost its hom-set");
    }

    Arrow identity(ObjId a) const override { return from_global(ids_.at(a)); }

    Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
        check_composable(*this, f, gs);
        std::vector<std::uint32_t> key{global(f)};
        for (const Arrow& g : gs) key.push_back(global(g));
        auto it = comp_.find(key);
        if (it != comp_.end()) return from_global(it->second);
        // default unit cells
        bool all_ids = true;
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (gs[i].code != identity(f.sig.domain[i]).code ||
                gs[i].sig != Signature{{f.sig.domain[i]}, f.sig.domain[i]})
                all_ids = false;
        if (all_ids) return f;  // vacuously covers nullary f against the empty tuple
        if (f.arity() == 1 && key[0] == ids_[f.sig.domain[0]]) return gs[0];
        throw InputError(name_ + ": composition cell missing for " + arrow_names_[key[0]]);
    }

    Arrow sym_act(const FamilyMap& s, const Arrow& f) const override {
        guard_sym(*this, s, f);
        bool is_id = true;
        for (std::size_t i = 0; i < s.map.size(); ++i)
            if (s.map[i] != i) is_id = false;
        if (is_id) return Arrow{Signature{s.target, f.sig.codomain}, f.code};
        auto it = sym_.find({global(f), s.map});
        if (it == sym_.end())
            throw UnsupportedAction(name_ + ": symmetry cell missing for " +
                                    arrow_names_[global(f)]);
        return from_global(it->second);
    }

    bool cartesian() const override { return false; }

    std::string arrow_label(const Arrow& f) const override { return arrow_names_[global(f)]; }

private:
    ObjId obj_index(const std::string& nm) const {
        for (ObjId i = 0; i < objects_.size(); ++i)
            if (objects_[i] == nm) return i;
        throw InputError(name_ + ": unknown object " + nm);
    }
    std::uint32_t arrow_index(const std::string& nm) const {
        for (std::uint32_t i = 0; i < arrow_names_.size(); ++i)
            if (arrow_names_[i] == nm) return i;
        throw InputError(name_ + ": unknown arrow " + nm);
    }
    std::vector<std::uint32_t> parse_comp_key(const std::string& key) const {
        const auto open = key.find('(');
        require_input(open != std::string::npos && key.back() == ')',
                      name_ + ": malformed composition key " + key);
        std::vector<std::uint32_t> out{arrow_index(key.substr(0, open))};
        std::string inner = key.substr(open + 1, key.size() - open - 2);
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                out.push_back(arrow_index(cur));
                cur.clear();
            } else if (ch != ' ') {
                cur += ch;
            }
        }
        if (!cur.empty()) out.push_back(arrow_index(cur));
        require_input(out.size() == arrow_sigs_[out[0]].arity() + 1,
                      name_ + ": composition key arity mismatch " + key);
        return out;
    }
    std::pair<std::uint32_t, std::vector<std::size_t>> parse_sym_key(const std::string& key) const {
        const auto at = key.find("@[");
        require_input(at != std::string::npos && key.back() == ']',
                      name_ + ": malformed symmetry key " + key);
        const std::uint32_t f = arrow_index(key.substr(0, at));
        std::vector<std::size_t> perm;
        std::string cur;
        for (std::size_t i = at + 2; i < key.size() - 1; ++i) {
            if (key[i] == ',') {
                perm.push_back(static_cast<std::size_t>(std::stoul(cur)) - 1);
                cur.clear();
            } else if (key[i] != ' ') {
                cur += key[i];
            }
        }
        if (!cur.empty()) perm.push_back(static_cast<std::size_t>(std::stoul(cur)) - 1);
        require_input(perm.size() == arrow_sigs_[f].arity(),
                      name_ + ": symmetry key arity mismatch " + key);
        return {f, perm};
    }

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<std::string> arrow_names_;
    std::vector<Signature> arrow_sigs_;
    std::map<Signature, std::vector<std::uint32_t>> homs_;
    std::vector<std::uint32_t> ids_;
    std::map<std::vector<std::uint32_t>, std::uint32_t> comp_;
    std::map<std::pair<std::uint32_t, std::vector<std::size_t>>, std::uint32_t> sym_;
};

}  // namespace

// ---------------------------------------------------------------------
// factories and helpers

BackendPtr seq(const FiniteCategory& c) {
    return std::make_shared<SeqBackend>(c, std::nullopt, "seq(" + c.name + ")");
}

BackendPtr seq_cartesian(const PreadditiveCategory& p) {
    return std::make_shared<SeqBackend>(p.cat, p.enr, "seq+(" + p.cat.name + ")");
}

BackendPtr unary(const FiniteCategory& c) {
    return std::make_shared<UnaryBackend>(c, "unary(" + c.name + ")");
}

BackendPtr terminal_mcat() {
    FiniteCategory c;
    c.name = "1";
    c.objects = {"*"};
    c.arrows = {CatArrow{"id", 0, 0}};
    c.identities = {0};
    c.comp = {{0}};
    CMonEnrichment e;
    e.zero = {{0}};
    e.add[{0, 0}] = 0;
    return std::make_shared<SeqBackend>(c, e, "1_seq");
}

BackendPtr monoidal_to_mcat(const StrictMonoidalData& d) {
    return std::make_shared<MonoidalBackend>(d);
}

BackendPtr fp_category_to_mcat(const FiniteCategory& c, const ChosenProducts& p) {
    return std::make_shared<FpCatBackend>(c, p);
}

BackendPtr finset_mcat(std::size_t size_cap, bool with_contractions) {
    return std::make_shared<FinSetBackend>(size_cap, with_contractions);
}

BackendPtr nat_rig_seq() { return std::make_shared<NatRigBackend>(); }

BackendPtr free_preadditive_seq(const FiniteCategory& c) {
    return std::make_shared<FreePreBackend>(c);
}

void check_monoid(const MonoidTable& m) {
    const std::size_t n = m.elements.size();
    require_input(n > 0 && m.unit < n, m.name + ": unit element out of range");
    require_input(m.table.size() == n, m.name + ": multiplication table rows");
    for (const auto& row : m.table) {
        require_input(row.size() == n, m.name + ": multiplication table columns");
        for (std::size_t v : row) require_input(v < n, m.name + ": table entry out of range");
    }
    for (std::size_t x = 0; x < n; ++x)
        require_input(m.mult(m.unit, x) == x && m.mult(x, m.unit) == x,
                      m.name + ": unit law fails at " + m.elements[x]);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                require_input(m.mult(m.mult(x, y), z) == m.mult(x, m.mult(y, z)),
                              m.name + ": associativity fails");
}

bool monoid_commutative(const MonoidTable& m) {
    for (std::size_t x = 0; x < m.elements.size(); ++x)
        for (std::size_t y = 0; y < m.elements.size(); ++y)
            if (m.mult(x, y) != m.mult(y, x)) return false;
    return true;
}

BackendPtr discrete_monoid_mcat(const MonoidTable& m) {
    return std::make_shared<DiscreteBackend>(m);
}

FiniteCategory monoid_as_category(const MonoidTable& m) {
    FiniteCategory c;
    c.name = m.name;
    c.objects = {"*"};
    for (const auto& e : m.elements) c.arrows.push_back(CatArrow{e, 0, 0});
    c.identities = {static_cast<ArrId>(m.unit)};
    c.comp.assign(m.elements.size(), std::vector<ArrId>(m.elements.size(), kNoArr));
    // arrows compose by multiplication: g after f = g*f
    for (std::size_t g = 0; g < m.elements.size(); ++g)
        for (std::size_t f = 0; f < m.elements.size(); ++f)
            c.comp[g][f] = static_cast<ArrId>(m.mult(g, f));
    check_category(c);
    return c;
}

BackendPtr table_mcat(const TableData& t) { return std::make_shared<TableBackend>(t); }

BackendPtr product_mcat(BackendPtr m, BackendPtr n) {
    std::string tag = "product(" + m->describe() + "," + n->describe() + ")";
    return std::make_shared<ProductBackend>(std::move(m), std::move(n), std::move(tag));
}

BackendPtr bv_tensor_unary(const FiniteCategory& c, BackendPtr n) {
    // closed form: C^- (x) N realized as seq(C) x N
    std::string tag = "bvtensor[unary(" + c.name + ")(x)" + n->describe() + " ~ product(seq(" +
                      c.name + ")," + n->describe() + ")]";
    return std::make_shared<ProductBackend>(seq(c), std::move(n), std::move(tag));
}

BackendPtr bv_tensor_seq(const FiniteCategory& c, const FiniteCategory& d) {
    // closed form: seq(C) (x) seq(D) realized as seq(C x D)
    FiniteCategory pc = product_category(c, d);
    std::string tag = "bvtensor[seq(" + c.name + ")(x)seq(" + d.name + ") ~ seq(" + pc.name + ")]";
    return std::make_shared<SeqBackend>(std::move(pc), std::nullopt, std::move(tag));
}

const FiniteCategory* seq_category_of(const Backend& m) {
    if (m.kind() != BackendKind::seq) return nullptr;
    return &static_cast<const SeqBackend&>(m).category();
}

const CMonEnrichment* seq_enrichment_of(const Backend& m) {
    if (m.kind() != BackendKind::seq) return nullptr;
    return static_cast<const SeqBackend&>(m).enrichment();
}

const FiniteCategory* unary_category_of(const Backend& m) {
    if (m.kind() != BackendKind::unary) return nullptr;
    return &static_cast<const UnaryBackend&>(m).category();
}

const Backend* product_left_of(const Backend& m) {
    if (m.kind() != BackendKind::product) return nullptr;
    return static_cast<const ProductBackend&>(m).left_backend();
}

const Backend* product_right_of(const Backend& m) {
    if (m.kind() != BackendKind::product) return nullptr;
    return static_cast<const ProductBackend&>(m).right_backend();
}

const MonoidTable* discrete_monoid_of(const Backend& m) {
    if (m.kind() != BackendKind::discrete) return nullptr;
    return &static_cast<const DiscreteBackend&>(m).monoid();
}

std::size_t finset_cap_of(const Backend& m) {
    require_input(m.kind() == BackendKind::finset, "not a finite-sets backend");
    return static_cast<const FinSetBackend&>(m).cap();
}

}  // namespace mcat
