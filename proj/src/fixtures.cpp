#include "mcat/fixtures.hpp"

#include "mcat/homs.hpp"

namespace mcat {

FiniteCategory terminal_category() {
    FiniteCategory c;
    c.name = "1";
    c.objects = {"*"};
    c.arrows = {CatArrow{"id", 0, 0}};
    c.identities = {0};
    c.comp = {{0}};
    return c;
}

FiniteCategory walking_arrow() {
    FiniteCategory c;
    c.name = "W";
    c.objects = {"a", "b"};
    c.arrows = {CatArrow{"1a", 0, 0}, CatArrow{"1b", 1, 1}, CatArrow{"f", 0, 1}};
    c.identities = {0, 1};
    const ArrId no = kNoArr;
    c.comp = {{0, no, no}, {no, 1, 2}, {2, no, no}};
    return c;
}

MonoidTable z2_monoid() {
    MonoidTable m;
    m.name = "Z2";
    m.elements = {"0", "1"};
    m.unit = 0;
    m.table = {{0, 1}, {1, 0}};
    return m;
}

FiniteCategory z2_category() { return monoid_as_category(z2_monoid()); }

PreadditiveCategory boolean_rig() {
    PreadditiveCategory p;
    p.cat.name = "bool";
    p.cat.objects = {"*"};
    p.cat.arrows = {CatArrow{"0", 0, 0}, CatArrow{"1", 0, 0}};
    p.cat.identities = {1};
    p.cat.comp = {{0, 0}, {0, 1}};
    p.enr.zero = {{0}};
    p.enr.add[{0, 0}] = 0;
    p.enr.add[{0, 1}] = 1;
    p.enr.add[{1, 0}] = 1;
    p.enr.add[{1, 1}] = 1;
    return p;
}

StrictMonoidalData join_semilattice() {
    StrictMonoidalData d;
    d.cat = walking_arrow();
    d.unit = 0;
    d.tensor_obj = {{0, 1}, {1, 1}};
    d.tensor_arr[{0, 0}] = 0;
    d.tensor_arr[{0, 1}] = 1;
    d.tensor_arr[{0, 2}] = 2;
    d.tensor_arr[{1, 0}] = 1;
    d.tensor_arr[{1, 1}] = 1;
    d.tensor_arr[{1, 2}] = 1;
    d.tensor_arr[{2, 0}] = 2;
    d.tensor_arr[{2, 1}] = 1;
    d.tensor_arr[{2, 2}] = 2;
    d.braiding = std::vector<std::vector<ArrId>>{{0, 1}, {1, 1}};
    return d;
}

std::vector<std::pair<std::string, std::string>> fixture_catalog() {
    return {
        {"T", "terminal: one object, one arrow per arity"},
        {"I", "empty: no objects, no arrows"},
        {"One", "sequential backend over the one-object category"},
        {"Tu", "the one-object category, unary arrows only"},
        {"W", "sequential backend over the walking arrow"},
        {"Wu", "the walking arrow, unary arrows only"},
        {"Wj", "the walking arrow under its join tensor"},
        {"Z2", "two-element group as a discrete representable backend"},
        {"Z2u", "two-element group as a one-object category, unary arrows only"},
        {"Z2seq", "sequential backend over the two-element group"},
        {"FS2", "sets of size at most 2, with duplication and deletion"},
        {"FS2t", "sets of size at most 2, symmetric actions only"},
        {"Bool", "arrow tuples over the truth-value rig"},
        {"Nat", "arrow tuples over the rig of natural numbers"},
        {"FreeW", "formal sums of walking-arrow tuples"},
        {"CM2", "arrow tuples over the commutative monoids on at most 2 points"},
    };
}

BackendPtr fixture(const std::string& name, const Budget& b) {
    if (name == "T") return terminal_mcat();
    if (name == "I") {
        FiniteCategory empty;
        empty.name = "I";
        return unary(empty);
    }
    if (name == "One") return seq(terminal_category());
    if (name == "Tu") return unary(terminal_category());
    if (name == "W") return seq(walking_arrow());
    if (name == "Wu") return unary(walking_arrow());
    if (name == "Wj") return monoidal_to_mcat(join_semilattice());
    if (name == "Z2") return discrete_monoid_mcat(z2_monoid());
    if (name == "Z2u") return unary(z2_category());
    if (name == "Z2seq") return seq(z2_category());
    if (name == "FS2") return finset_mcat(2, true);
    if (name == "FS2t") return finset_mcat(2, false);
    if (name == "Bool") return seq_cartesian(boolean_rig());
    if (name == "Nat") return nat_rig_seq();
    if (name == "FreeW") return free_preadditive_seq(walking_arrow());
    if (name == "CM2") return seq_cartesian(cmon_preadditive(finset_mcat(2, true), b));
    std::string known;
    for (const auto& [nm, desc] : fixture_catalog()) known += (known.empty() ? "" : ", ") + nm;
    throw InputError("unknown fixture \"" + name + "\" (known: " + known + ")");
}

}  // namespace mcat
