// Command-line front door: builds backends from the fixture catalog or from
// description documents, runs the validators, theorem suites and module
// front doors, and emits text or structured reports.
//
// Exit codes: 0 pass within budget, 1 counterexample found, 2 input error,
// 3 budget exhausted (indeterminate).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mcat/analysis.hpp"
#include "mcat/fixtures.hpp"
#include "mcat/homs.hpp"
#include "mcat/models.hpp"
#include "mcat/report.hpp"

using nlohmann::json;
using namespace mcat;

namespace {

// --- budget ----------------------------------------------------------------

// MCAT_BUDGET="arity=3,depth=2,enum=10000" adjusts the defaults; explicit
// flags still win.
Budget env_budget() {
    Budget b;
    const char* env = std::getenv("MCAT_BUDGET");
    if (!env) return b;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        require_input(eq != std::string::npos,
                      "MCAT_BUDGET entries look like key=value, got \"" + item + "\"");
        const std::string key = item.substr(0, eq);
        std::uint64_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("MCAT_BUDGET value for \"" + key + "\" is not a number");
        }
        if (key == "arity")
            b.max_arity = static_cast<std::size_t>(value);
        else if (key == "depth")
            b.max_depth = static_cast<std::size_t>(value);
        else if (key == "enum")
            b.max_enum = value;
        else
            throw InputError("MCAT_BUDGET key \"" + key + "\" (known: arity, depth, enum)");
    }
    return b;
}

// --- description documents ---------------------------------------------------

// Pointer into a parsed document carrying the path for diagnostics.
struct Cursor {
    const json* j;
    std::string path;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("description error at " + (path.empty() ? "/" : path) + ": " + msg);
    }
    Cursor at(const std::string& key) const {
        if (!j->is_object()) fail("expected an object");
        const auto it = j->find(key);
        if (it == j->end()) fail("missing key \"" + key + "\"");
        return {&*it, path + "/" + key};
    }
    std::optional<Cursor> maybe(const std::string& key) const {
        if (!j->is_object()) fail("expected an object");
        const auto it = j->find(key);
        if (it == j->end()) return std::nullopt;
        return Cursor{&*it, path + "/" + key};
    }
    std::size_t size() const {
        if (!j->is_array()) fail("expected an array");
        return j->size();
    }
    Cursor item(std::size_t i) const {
        return {&(*j)[i], path + "/" + std::to_string(i)};
    }
    std::string str() const {
        if (!j->is_string()) fail("expected a string");
        return j->get<std::string>();
    }
};

// Name lookup with the offending path in the message.
template <typename Map>
typename Map::mapped_type resolve(const Map& names, const std::string& nm,
                                  const Cursor& where, const std::string& what) {
    const auto it = names.find(nm);
    if (it == names.end()) where.fail("unknown " + what + " \"" + nm + "\"");
    return it->second;
}

struct ParsedCategory {
    FiniteCategory cat;
    std::map<std::string, ObjId> obj;
    std::map<std::string, ArrId> arr;
};

// Objects, listed non-identity arrows and composition cells "g.f" (g after
// f). Identities are implicit, one per object, named in "identities" or
// defaulting to id_<object>; their cells follow from the unit laws.
ParsedCategory parse_category(const Cursor& c) {
    ParsedCategory out;
    FiniteCategory& cat = out.cat;
    cat.name = c.at("name").str();
    const Cursor objs = c.at("objects");
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string nm = objs.item(i).str();
        if (out.obj.count(nm)) objs.item(i).fail("duplicate object \"" + nm + "\"");
        out.obj[nm] = static_cast<ObjId>(i);
        cat.objects.push_back(nm);
    }
    const auto add_arrow = [&](const std::string& nm, ObjId dom, ObjId cod,
                               const Cursor& where) {
        if (out.arr.count(nm)) where.fail("duplicate arrow \"" + nm + "\"");
        out.arr[nm] = static_cast<ArrId>(cat.arrows.size());
        cat.arrows.push_back(CatArrow{nm, dom, cod});
    };
    for (ObjId x = 0; x < cat.objects.size(); ++x) {
        std::string nm = "id_" + cat.objects[x];
        if (const auto ids = c.maybe("identities")) {
            if (const auto own = ids->maybe(cat.objects[x])) nm = own->str();
        }
        cat.identities.push_back(static_cast<ArrId>(cat.arrows.size()));
        add_arrow(nm, x, x, c);
    }
    const Cursor arrows = c.at("arrows");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const Cursor a = arrows.item(i);
        add_arrow(a.at("name").str(), resolve(out.obj, a.at("dom").str(), a.at("dom"), "object"),
                  resolve(out.obj, a.at("cod").str(), a.at("cod"), "object"), a.at("name"));
    }
    cat.comp.assign(cat.arrows.size(), std::vector<ArrId>(cat.arrows.size(), kNoArr));
    for (ArrId g = 0; g < cat.arrows.size(); ++g) {
        cat.comp[g][cat.identities[cat.arrows[g].dom]] = g;
        cat.comp[cat.identities[cat.arrows[g].cod]][g] = g;
    }
    if (const auto cells = c.maybe("compose")) {
        if (!cells->j->is_object()) cells->fail("expected an object of \"g.f\" cells");
        for (const auto& [key, value] : cells->j->items()) {
            const Cursor cell{&value, cells->path + "/" + key};
            const auto dot = key.find('.');
            if (dot == std::string::npos || key.find('.', dot + 1) != std::string::npos)
                cell.fail("cell keys look like \"g.f\" (g after f)");
            const ArrId g = resolve(out.arr, key.substr(0, dot), cell, "arrow");
            const ArrId f = resolve(out.arr, key.substr(dot + 1), cell, "arrow");
            const ArrId h = resolve(out.arr, cell.str(), cell, "arrow");
            if (cat.comp[g][f] != kNoArr && cat.comp[g][f] != h)
                cell.fail("conflicts with an identity cell");
            cat.comp[g][f] = h;
        }
    }
    check_category(cat);
    return out;
}

BackendPtr description_backend(const Cursor& doc) {
    const std::string kind = doc.at("kind").str();
    if (kind == "category") {
        const ParsedCategory p = parse_category(doc);
        std::string view = "seq";
        if (const auto v = doc.maybe("view")) view = v->str();
        if (view == "seq") return seq(p.cat);
        if (view == "unary") return unary(p.cat);
        doc.at("view").fail("view is \"seq\" or \"unary\"");
    }
    if (kind == "preadditive") {
        ParsedCategory p = parse_category(doc);
        CMonEnrichment enr;
        const Cursor zero = doc.at("zero");
        if (zero.size() != p.cat.objects.size()) zero.fail("one row per object");
        for (std::size_t x = 0; x < zero.size(); ++x) {
            const Cursor row = zero.item(x);
            if (row.size() != p.cat.objects.size()) row.fail("one entry per object");
            std::vector<ArrId> ids;
            for (std::size_t y = 0; y < row.size(); ++y)
                ids.push_back(resolve(p.arr, row.item(y).str(), row.item(y), "arrow"));
            enr.zero.push_back(std::move(ids));
        }
        const Cursor add = doc.at("add");
        if (!add.j->is_object()) add.fail("expected an object of \"f+g\" cells");
        for (const auto& [key, value] : add.j->items()) {
            const Cursor cell{&value, add.path + "/" + key};
            const auto plus = key.find('+');
            if (plus == std::string::npos) cell.fail("cell keys look like \"f+g\"");
            const ArrId f = resolve(p.arr, key.substr(0, plus), cell, "arrow");
            const ArrId g = resolve(p.arr, key.substr(plus + 1), cell, "arrow");
            const ArrId h = resolve(p.arr, cell.str(), cell, "arrow");
            enr.add[{f, g}] = h;
            enr.add[{g, f}] = h;
        }
        check_enrichment(p.cat, enr);
        return seq_cartesian(PreadditiveCategory{std::move(p.cat), std::move(enr)});
    }
    if (kind == "monoidal") {
        ParsedCategory p = parse_category(doc);
        StrictMonoidalData d;
        d.unit = resolve(p.obj, doc.at("unit").str(), doc.at("unit"), "object");
        const Cursor tobj = doc.at("tensor_objects");
        if (tobj.size() != p.cat.objects.size()) tobj.fail("one row per object");
        for (std::size_t x = 0; x < tobj.size(); ++x) {
            const Cursor row = tobj.item(x);
            if (row.size() != p.cat.objects.size()) row.fail("one entry per object");
            std::vector<ObjId> ids;
            for (std::size_t y = 0; y < row.size(); ++y)
                ids.push_back(resolve(p.obj, row.item(y).str(), row.item(y), "object"));
            d.tensor_obj.push_back(std::move(ids));
        }
        const Cursor tarr = doc.at("tensor_arrows");
        if (!tarr.j->is_object()) tarr.fail("expected an object of \"f*g\" cells");
        for (const auto& [key, value] : tarr.j->items()) {
            const Cursor cell{&value, tarr.path + "/" + key};
            const auto star = key.find('*');
            if (star == std::string::npos) cell.fail("cell keys look like \"f*g\"");
            const ArrId f = resolve(p.arr, key.substr(0, star), cell, "arrow");
            const ArrId g = resolve(p.arr, key.substr(star + 1), cell, "arrow");
            d.tensor_arr[{f, g}] = resolve(p.arr, cell.str(), cell, "arrow");
        }
        if (const auto braid = doc.maybe("braiding")) {
            std::vector<std::vector<ArrId>> rows;
            if (braid->size() != p.cat.objects.size()) braid->fail("one row per object");
            for (std::size_t x = 0; x < braid->size(); ++x) {
                const Cursor row = braid->item(x);
                if (row.size() != p.cat.objects.size()) row.fail("one entry per object");
                std::vector<ArrId> ids;
                for (std::size_t y = 0; y < row.size(); ++y)
                    ids.push_back(resolve(p.arr, row.item(y).str(), row.item(y), "arrow"));
                rows.push_back(std::move(ids));
            }
            d.braiding = std::move(rows);
        }
        d.cat = std::move(p.cat);
        check_monoidal(d);
        return monoidal_to_mcat(d);
    }
    if (kind == "products") {
        ParsedCategory p = parse_category(doc);
        ChosenProducts cp;
        cp.terminal = resolve(p.obj, doc.at("terminal").str(), doc.at("terminal"), "object");
        const std::size_t n = p.cat.objects.size();
        cp.pairs.assign(n, std::vector<ChosenProducts::Pair>(n, {0, kNoArr, kNoArr}));
        std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
        const Cursor pairs = doc.at("pairs");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Cursor e = pairs.item(i);
            const ObjId x = resolve(p.obj, e.at("x").str(), e.at("x"), "object");
            const ObjId y = resolve(p.obj, e.at("y").str(), e.at("y"), "object");
            if (seen[x][y]) e.fail("duplicate pair");
            seen[x][y] = true;
            cp.pairs[x][y] = {resolve(p.obj, e.at("prod").str(), e.at("prod"), "object"),
                              resolve(p.arr, e.at("p1").str(), e.at("p1"), "arrow"),
                              resolve(p.arr, e.at("p2").str(), e.at("p2"), "arrow")};
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (!seen[x][y])
                    pairs.fail("missing pair (" + p.cat.objects[x] + ", " +
                               p.cat.objects[y] + ")");
        check_products(p.cat, cp);
        return fp_category_to_mcat(p.cat, cp);
    }
    if (kind == "monoid") {
        MonoidTable m;
        m.name = doc.at("name").str();
        std::map<std::string, std::size_t> elt;
        const Cursor elements = doc.at("elements");
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const std::string nm = elements.item(i).str();
            if (elt.count(nm)) elements.item(i).fail("duplicate element \"" + nm + "\"");
            elt[nm] = i;
            m.elements.push_back(nm);
        }
        m.unit = resolve(elt, doc.at("unit").str(), doc.at("unit"), "element");
        const Cursor table = doc.at("table");
        if (table.size() != m.elements.size()) table.fail("one row per element");
        for (std::size_t x = 0; x < table.size(); ++x) {
            const Cursor row = table.item(x);
            if (row.size() != m.elements.size()) row.fail("one entry per element");
            std::vector<std::size_t> cells;
            for (std::size_t y = 0; y < row.size(); ++y)
                cells.push_back(resolve(elt, row.item(y).str(), row.item(y), "element"));
            m.table.push_back(std::move(cells));
        }
        check_monoid(m);
        return discrete_monoid_mcat(m);
    }
    if (kind == "table") {
        TableData t;
        t.name = doc.at("name").str();
        const Cursor objs = doc.at("objects");
        for (std::size_t i = 0; i < objs.size(); ++i) t.objects.push_back(objs.item(i).str());
        const Cursor arrows = doc.at("arrows");
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const Cursor a = arrows.item(i);
            TableData::TArrow ta;
            ta.name = a.at("name").str();
            const Cursor dom = a.at("dom");
            for (std::size_t k = 0; k < dom.size(); ++k)
                ta.dom.push_back(dom.item(k).str());
            ta.cod = a.at("cod").str();
            t.arrows.push_back(std::move(ta));
        }
        const Cursor ids = doc.at("identities");
        for (const std::string& o : t.objects) {
            const auto own = ids.maybe(o);
            if (!own) ids.fail("missing identity for object \"" + o + "\"");
            t.identities.push_back(own->str());
        }
        if (const auto cells = doc.maybe("compose")) {
            if (!cells->j->is_object()) cells->fail("expected an object of cells");
            for (const auto& [key, value] : cells->j->items())
                t.comp_cells[key] = Cursor{&value, cells->path + "/" + key}.str();
        }
        if (const auto cells = doc.maybe("symmetry")) {
            if (!cells->j->is_object()) cells->fail("expected an object of cells");
            for (const auto& [key, value] : cells->j->items())
                t.sym_cells[key] = Cursor{&value, cells->path + "/" + key}.str();
        }
        return table_mcat(t);
    }
    doc.at("kind").fail("unknown kind \"" + kind +
                        "\" (known: category, preadditive, monoidal, products, monoid, table)");
}

json load_json(const std::string& file) {
    std::ifstream in(file);
    require_input(in.good(), "cannot open \"" + file + "\"");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("description parse of \"" + file + "\": " + e.what());
    }
}

BackendPtr load_source(const std::string& fixture_name, const std::string& input_file,
                       const Budget& b) {
    require_input(fixture_name.empty() != input_file.empty(),
                  "pass exactly one of --fixture NAME or --input FILE");
    if (!fixture_name.empty()) return fixture(fixture_name, b);
    const json j = load_json(input_file);
    return description_backend(Cursor{&j, ""});
}

FiniteCategory category_by_name(const std::string& nm) {
    if (nm == "1" || nm == "T") return terminal_category();
    if (nm == "W") return walking_arrow();
    if (nm == "Z2") return z2_category();
    throw InputError("unknown category \"" + nm + "\" (known: 1, W, Z2)");
}

// --- output ------------------------------------------------------------------

void emit(const json& doc, const std::string& text, const std::string& format) {
    if (format == "structured")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

json hom_table_json(const Backend& m, const Budget& b) {
    json rows = json::array();
    for (const Signature& sig : all_signatures(m, b.max_arity)) {
        const HomSet h = m.hom(sig, b.max_enum);
        rows.push_back(json{{"sig", signature_label(m, sig)},
                            {"count", h.arrows.size()},
                            {"truncated", h.truncated}});
    }
    return rows;
}

std::string hom_table_text(const json& rows) {
    std::ostringstream os;
    for (const json& r : rows) {
        os << "  " << r.at("sig").get<std::string>() << "  "
           << r.at("count").get<std::size_t>();
        if (r.at("truncated").get<bool>()) os << " (truncated)";
        os << "\n";
    }
    return os.str();
}

json backend_summary(const Backend& m, const Budget& b) {
    json objects = json::array();
    for (ObjId x = 0; x < m.object_count(); ++x) objects.push_back(m.object_name(x));
    return json{{"schema_version", kSchemaVersion},
                {"kind", "summary"},
                {"backend", m.describe()},
                {"cartesian", m.cartesian()},
                {"objects", objects},
                {"homs", hom_table_json(m, b)}};
}

std::string summary_text(const json& doc) {
    std::ostringstream os;
    os << doc.at("backend").get<std::string>()
       << (doc.at("cartesian").get<bool>() ? "  (cartesian)" : "") << "\n";
    os << "objects:";
    for (const json& o : doc.at("objects")) os << " " << o.get<std::string>();
    os << "\nhom-set sizes:\n" << hom_table_text(doc.at("homs"));
    return os.str();
}

// --- subcommands ---------------------------------------------------------------

int cmd_validate(const BackendPtr& m, const std::string& level,
                 const std::string& replay_file, const std::string& format,
                 const Budget& b) {
    if (!replay_file.empty()) {
        const json j = load_json(replay_file);
        const json* w = &j;
        if (j.contains("laws")) {
            w = nullptr;
            for (const json& lr : j.at("laws"))
                if (lr.contains("witness")) {
                    w = &lr.at("witness");
                    break;
                }
            require_input(w != nullptr, "replay document carries no witness");
        } else if (j.contains("witness")) {
            w = &j.at("witness");
        }
        const Counterexample ce = counterexample_from_json(*w);
        const bool again = replay(*m, ce, b);
        emit(json{{"schema_version", kSchemaVersion},
                  {"kind", "replay"},
                  {"backend", m->describe()},
                  {"law", ce.law},
                  {"reproduced", again}},
             "replay " + ce.law + " on " + m->describe() + ": " +
                 (again ? "reproduced\n" : "not reproduced\n"),
             format);
        return again ? kExitCounterexample : kExitPass;
    }
    ValidationReport rep;
    rep.backend = m->describe();
    rep.budget = b;
    const auto append = [&](const ValidationReport& part) {
        for (const LawResult& lr : part.laws) rep.laws.push_back(lr);
    };
    if (level == "auto") {
        append(validate_multicat(*m, b));
        append(validate_symmetric(*m, b));
        if (m->cartesian()) append(validate_cartesian(*m, b));
    } else if (level == "multicat") {
        append(validate_multicat(*m, b));
    } else if (level == "symmetric") {
        append(validate_symmetric(*m, b));
    } else if (level == "cartesian") {
        append(validate_cartesian(*m, b));
    } else {
        throw InputError("--level is auto, multicat, symmetric or cartesian");
    }
    emit(report_json(rep), report_text(rep), format);
    return exit_code_of(rep);
}

std::string theorem_text(const TheoremOutcome& out) {
    std::ostringstream os;
    os << "theorem " << out.doc.at("id").get<std::string>() << ": "
       << (out.exit_code == kExitPass          ? "pass"
           : out.exit_code == kExitCounterexample ? "counterexample"
                                                  : "indeterminate")
       << "\n";
    for (const char* key : {"fixtures", "pairs", "categories", "families"}) {
        if (!out.doc.contains(key)) continue;
        for (const json& row : out.doc.at(key)) {
            std::string name;
            for (const char* id : {"fixture", "title", "left", "category"})
                if (row.contains(id) && row.at(id).is_string()) {
                    name = row.at(id).get<std::string>();
                    break;
                }
            if (name.empty() && row.contains("family")) name = row.at("family").dump();
            if (row.contains("ok") && row.at("ok").is_null()) {
                os << "  " << name << ": skipped\n";
                continue;
            }
            bool ok = false;
            bool flagged = false;
            for (const char* flag : {"agreement", "agree", "ok"})
                if (row.contains(flag) && row.at(flag).is_boolean()) {
                    ok = row.at(flag).get<bool>();
                    flagged = true;
                    break;
                }
            if (!flagged && row.contains("report"))
                ok = row.at("report").at("ok").get<bool>();
            os << "  " << name << ": " << (ok ? "ok" : "violated") << "\n";
        }
    }
    return os.str();
}

int cmd_theorem(const std::string& id, bool list, const std::string& format,
                const Budget& b) {
    if (list) {
        json ids = json::array();
        std::string text;
        for (const std::string& nm : theorem_ids()) {
            ids.push_back(nm);
            text += nm + "\n";
        }
        emit(json{{"schema_version", kSchemaVersion}, {"kind", "theorem-list"},
                  {"ids", ids}},
             text, format);
        return kExitPass;
    }
    require_input(!id.empty(), "pass a theorem id or --list");
    const TheoremOutcome out = run_theorem(id, b);
    emit(out.doc, theorem_text(out), format);
    return out.exit_code;
}

// Description document for a table snapshot; feeds back into --input.
json table_description(const TableData& t) {
    json arrows = json::array();
    for (const TableData::TArrow& a : t.arrows)
        arrows.push_back(json{{"name", a.name}, {"dom", a.dom}, {"cod", a.cod}});
    json identities = json::object();
    for (std::size_t x = 0; x < t.objects.size(); ++x)
        identities[t.objects[x]] = t.identities[x];
    return json{{"kind", "table"},    {"name", t.name},
                {"objects", t.objects}, {"arrows", arrows},
                {"identities", identities}, {"compose", t.comp_cells},
                {"symmetry", t.sym_cells}};
}

int cmd_construct(const BackendPtr& m, bool snapshot, const std::string& format,
                  const Budget& b) {
    if (snapshot) {
        const TableData t = snapshot_table(*m, b.max_arity, b.max_enum);
        std::cout << table_description(t).dump(2) << "\n";
        return kExitPass;
    }
    const json doc = backend_summary(*m, b);
    emit(doc, summary_text(doc), format);
    return kExitPass;
}

int cmd_hom(const std::string& fixture_name, const std::string& input_file,
            const std::vector<std::string>& internal,
            const std::vector<std::string>& exp, const std::string& format,
            const Budget& b) {
    const int modes = (!fixture_name.empty() || !input_file.empty()) +
                      !internal.empty() + !exp.empty();
    require_input(modes == 1,
                  "pass one of --fixture/--input, --internal L M, or --exp C M");
    BackendPtr h;
    if (!internal.empty()) {
        h = internal_hom(fixture(internal[0], b), fixture(internal[1], b), b);
    } else if (!exp.empty()) {
        h = seq_exponent(category_by_name(exp[0]), fixture(exp[1], b), b);
    } else {
        h = load_source(fixture_name, input_file, b);
    }
    const json doc = backend_summary(*h, b);
    emit(doc, summary_text(doc), format);
    return kExitPass;
}

int cmd_monoids(const BackendPtr& m, bool central, const std::string& format,
                const Budget& b) {
    json rows = json::array();
    std::string text;
    if (central) {
        const auto fams = central_families(*m, b);
        for (const std::vector<MonoidOn>& fam : fams) {
            json objs = json::array();
            std::string line = "  family:";
            for (ObjId x = 0; x < fam.size(); ++x) {
                objs.push_back(json{{"object", m->object_name(x)},
                                    {"unit", m->arrow_label(fam[x].unit)},
                                    {"mul", m->arrow_label(fam[x].mul)}});
                line += " " + m->object_name(x) + "(" + m->arrow_label(fam[x].unit) +
                        ", " + m->arrow_label(fam[x].mul) + ")";
            }
            rows.push_back(std::move(objs));
            text += line + "\n";
        }
        emit(json{{"schema_version", kSchemaVersion}, {"kind", "central-families"},
                  {"backend", m->describe()}, {"count", rows.size()},
                  {"families", rows}},
             m->describe() + ": " + std::to_string(rows.size()) +
                 " central monoid families\n" + text,
             format);
        return kExitPass;
    }
    const BackendPtr mon = monoid_mcat(m, b);
    const std::vector<MonoidObject>* objs = monoid_objects_of(*mon);
    require_input(objs != nullptr, "monoid listing needs a monoid backend");
    for (const MonoidObject& mo : *objs) {
        rows.push_back(json{{"object", m->object_name(mo.carrier)},
                            {"unit", m->arrow_label(mo.structure.unit)},
                            {"mul", m->arrow_label(mo.structure.mul)}});
        text += "  " + m->object_name(mo.carrier) + "  unit " +
                m->arrow_label(mo.structure.unit) + "  mul " +
                m->arrow_label(mo.structure.mul) + "\n";
    }
    emit(json{{"schema_version", kSchemaVersion}, {"kind", "monoids"},
              {"backend", m->describe()}, {"count", rows.size()}, {"monoids", rows}},
         m->describe() + ": " + std::to_string(rows.size()) +
             " commutative monoid objects\n" + text,
         format);
    return kExitPass;
}

int cmd_products(const BackendPtr& m, const std::string& family_arg,
                 const std::string& format, const Budget& b) {
    std::map<std::string, ObjId> byname;
    for (ObjId x = 0; x < m->object_count(); ++x) byname[m->object_name(x)] = x;
    std::vector<ObjId> family;
    std::stringstream ss(family_arg);
    std::string nm;
    while (std::getline(ss, nm, ',')) {
        if (nm.empty()) continue;
        const auto it = byname.find(nm);
        require_input(it != byname.end(),
                      "unknown object \"" + nm + "\" in --family");
        family.push_back(it->second);
    }
    const auto aw = algebraic_product_search(*m, family, b);
    const auto uw = universal_product_search(*m, family, b);
    const auto pu = find_preuniversal(*m, family, b);
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "products"},
             {"backend", m->describe()},
             {"family", family_arg},
             {"algebraic", nullptr},
             {"universal", nullptr},
             {"preuniversal", nullptr}};
    std::ostringstream text;
    text << m->describe() << "  family (" << family_arg << ")\n";
    if (aw) {
        json ps = json::array();
        for (const Arrow& p : aw->projections) ps.push_back(m->arrow_label(p));
        doc["algebraic"] = json{{"object", m->object_name(aw->c)},
                                {"pairing", m->arrow_label(aw->pairing)},
                                {"projections", ps}};
        text << "  algebraic: object " << m->object_name(aw->c) << ", pairing "
             << m->arrow_label(aw->pairing) << "\n";
    } else {
        text << "  algebraic: absent\n";
    }
    if (uw) {
        json ps = json::array();
        for (const Arrow& p : uw->projections) ps.push_back(m->arrow_label(p));
        doc["universal"] =
            json{{"object", m->object_name(uw->c)}, {"projections", ps}};
        text << "  universal: object " << m->object_name(uw->c) << "\n";
    } else {
        text << "  universal: absent\n";
    }
    if (pu) {
        doc["preuniversal"] = json{{"object", m->object_name(pu->sig.codomain)},
                                   {"arrow", m->arrow_label(*pu)}};
        text << "  preuniversal: object " << m->object_name(pu->sig.codomain)
             << ", arrow " << m->arrow_label(*pu) << "\n";
    } else {
        text << "  preuniversal: absent\n";
    }
    const bool agree =
        aw.has_value() == uw.has_value() && uw.has_value() == pu.has_value();
    doc["agree"] = agree;
    text << (agree ? "  searches agree\n" : "  searches disagree\n");
    emit(doc, text.str(), format);
    return agree ? kExitPass : kExitCounterexample;
}

int cmd_models(const std::string& theory, std::size_t size, bool iso,
               const std::string& kron, const std::string& format, const Budget& b) {
    if (!kron.empty()) {
        const ValidationReport rep = kronecker_semantics_check(category_by_name(kron), size, b);
        emit(report_json(rep), report_text(rep), format);
        return exit_code_of(rep);
    }
    require_input(!theory.empty(), "pass --theory NAME (or --kronecker C)");
    const std::vector<Model> ms = enumerate_models(fixture(theory, b), size, b);
    json rows = json::array();
    std::string text;
    for (const Model& mo : ms) {
        rows.push_back(mo.functor.describe());
        text += "  " + mo.functor.describe() + "\n";
    }
    json doc{{"schema_version", kSchemaVersion}, {"kind", "models"},
             {"theory", theory},  {"size_cap", size},
             {"count", ms.size()}, {"models", rows}};
    std::string head = theory + " models with carriers up to " + std::to_string(size) +
                       ": " + std::to_string(ms.size()) + "\n";
    if (iso) {
        const std::size_t orbits = model_iso_count(ms);
        doc["orbits"] = orbits;
        head += "relabeling orbits: " + std::to_string(orbits) + "\n";
    }
    emit(doc, head + text, format);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite multicategory toolkit"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags are accepted after the subcommand too

    Budget base;
    try {
        base = env_budget();
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInputError;
    }
    Budget b = base;
    app.add_option("--budget-arity", b.max_arity, "arity cap for sweeps")
        ->default_val(base.max_arity);
    app.add_option("--budget-depth", b.max_depth, "composition depth cap")
        ->default_val(base.max_depth);
    app.add_option("--budget-enum", b.max_enum, "enumeration cap per sweep")
        ->default_val(base.max_enum);
    std::string format = "text";
    app.add_option("--format", format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    bool list_fixtures = false;
    app.add_flag("--fixtures", list_fixtures, "list the built-in backend catalog");

    std::string fixture_name, input_file;
    const auto add_source = [&](CLI::App* sub) {
        sub->add_option("--fixture", fixture_name, "catalog backend name");
        sub->add_option("--input", input_file, "description document file");
    };

    CLI::App* validate = app.add_subcommand("validate", "run the axiom suites");
    add_source(validate);
    std::string level = "auto";
    validate->add_option("--level", level, "auto, multicat, symmetric or cartesian");
    std::string replay_file;
    validate->add_option("--replay", replay_file, "witness document to re-check");

    CLI::App* theorem = app.add_subcommand("theorem", "run a theorem suite");
    std::string theorem_id;
    theorem->add_option("id", theorem_id, "suite identifier");
    bool theorem_list = false;
    theorem->add_flag("--list", theorem_list, "list suite identifiers");

    CLI::App* construct = app.add_subcommand("construct", "summarize or snapshot a backend");
    add_source(construct);
    bool snapshot = false;
    construct->add_flag("--snapshot", snapshot, "emit an explicit table description");

    CLI::App* hom = app.add_subcommand("hom", "hom-set cardinality tables");
    add_source(hom);
    std::vector<std::string> internal_args, exp_args;
    hom->add_option("--internal", internal_args, "two catalog names: the hom backend [L, M]")
        ->expected(2);
    hom->add_option("--exp", exp_args, "category name and catalog name: the exponent")
        ->expected(2);

    CLI::App* monoids = app.add_subcommand("monoids", "list commutative monoid objects");
    add_source(monoids);
    bool central = false;
    monoids->add_flag("--central", central, "list jointly central families instead");

    CLI::App* products = app.add_subcommand("products", "search the three product notions");
    add_source(products);
    std::string family_arg;
    products->add_option("--family", family_arg, "comma-separated object names");

    CLI::App* models = app.add_subcommand("models", "enumerate set-valued models");
    std::string theory, kron;
    models->add_option("--theory", theory, "catalog name of the theory backend");
    std::size_t size_cap = 2;
    models->add_option("--size", size_cap, "carrier size cap")->default_val(2);
    bool iso = false;
    models->add_flag("--iso", iso, "also count relabeling orbits");
    models->add_option("--kronecker", kron,
                       "category name: compare models against monoid presheaves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (list_fixtures) {
            json rows = json::array();
            std::string text;
            for (const auto& [nm, desc] : fixture_catalog()) {
                rows.push_back(json{{"name", nm}, {"about", desc}});
                text += nm + "\t" + desc + "\n";
            }
            emit(json{{"schema_version", kSchemaVersion}, {"kind", "fixtures"},
                      {"fixtures", rows}},
                 text, format);
            return kExitPass;
        }
        if (validate->parsed())
            return cmd_validate(load_source(fixture_name, input_file, b), level,
                                replay_file, format, b);
        if (theorem->parsed()) return cmd_theorem(theorem_id, theorem_list, format, b);
        if (construct->parsed())
            return cmd_construct(load_source(fixture_name, input_file, b), snapshot,
                                 format, b);
        if (hom->parsed())
            return cmd_hom(fixture_name, input_file, internal_args, exp_args, format, b);
        if (monoids->parsed())
            return cmd_monoids(load_source(fixture_name, input_file, b), central,
                               format, b);
        if (products->parsed())
            return cmd_products(load_source(fixture_name, input_file, b), family_arg,
                                format, b);
        if (models->parsed())
            return cmd_models(theory, size_cap, iso, kron, format, b);
        std::cout << app.help();
        return kExitInputError;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const UnsupportedAction& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInputError;
    }
}
