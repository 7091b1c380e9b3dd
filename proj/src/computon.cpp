#include "computon/computon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace computon {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

}  // namespace

DeviceId::DeviceId(std::string id) : id_(std::move(id)) {
    if (!valid(id_))
        throw std::invalid_argument(
            "device id '" + id_ +
            "' is neither builtin:<name> nor an absolute HTTP URL");
}

bool DeviceId::valid(std::string_view id) {
    if (starts_with(id, "builtin:")) return id.size() > 8;
    if (starts_with(id, "http://")) return id.size() > 7;
    if (starts_with(id, "https://")) return id.size() > 8;
    return false;
}

bool DeviceId::is_builtin() const { return starts_with(id_, "builtin:"); }

std::string_view DeviceId::builtin_name() const {
    if (!is_builtin()) return {};
    return std::string_view(id_).substr(8);
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "\n";
        out += v.rule + ": " + v.detail;
    }
    return out;
}

namespace {

void check_wiring(const Computon& c, ValidationReport& rep) {
    auto want = [&](const FinMap& f, FinSet dom, FinSet cod, const char* name) {
        if (f.dom() != dom || f.cod() != cod)
            rep.violations.push_back(
                {"structure", std::string(name) + " does not match the component cardinalities"});
    };
    want(c.src, c.inflows, c.ports, "src");
    want(c.tgt, c.outflows, c.ports, "tgt");
    want(c.out_unit, c.outflows, c.units, "out_unit");
    want(c.in_unit, c.inflows, c.units, "in_unit");
    want(c.colour, c.ports, c.colours, "colour");
    want(c.relate, c.inflows, c.outflows, "relate");
    if (c.device.size() != c.outflows.card)
        rep.violations.push_back({"structure", "device table length != outflow count"});
    if (c.port_labels.size() != c.ports.card)
        rep.violations.push_back({"structure", "label count != port count"});
}

}  // namespace

ValidationReport validate(const Computon& c) {
    ValidationReport rep;
    check_wiring(c, rep);
    if (!rep.ok()) return rep;  // wiring errors make the rest meaningless

    if (c.ports.card == 0)
        rep.violations.push_back({"nonempty ports", "a computon needs at least one port"});
    if (c.colours.card == 0)
        rep.violations.push_back({"restriction (i)", "colour 0 must exist"});

    if (!is_surjective(c.out_unit))
        rep.violations.push_back({"surjectivity", "out_unit misses a unit"});
    if (!is_surjective(c.in_unit))
        rep.violations.push_back({"surjectivity", "in_unit misses a unit"});
    if (!is_surjective(c.relate))
        rep.violations.push_back({"surjectivity", "relate misses an outflow"});

    // (ii): every unit has a control inflow and a control outflow.
    {
        std::vector<bool> ctrl_in(c.units.card, false), ctrl_out(c.units.card, false);
        for (Nat i = 0; i < c.inflows.card; ++i)
            if (c.colour(c.src(i)) == 0) ctrl_in[c.in_unit(i)] = true;
        for (Nat o = 0; o < c.outflows.card; ++o)
            if (c.colour(c.tgt(o)) == 0) ctrl_out[c.out_unit(o)] = true;
        for (Nat u = 0; u < c.units.card; ++u) {
            if (!ctrl_in[u])
                rep.violations.push_back(
                    {"restriction (ii)", "unit " + std::to_string(u) + " has no control inflow"});
            if (!ctrl_out[u])
                rep.violations.push_back(
                    {"restriction (ii)", "unit " + std::to_string(u) + " has no control outflow"});
        }
    }

    // (iii): out_unit . relate = in_unit.
    for (Nat i = 0; i < c.inflows.card; ++i)
        if (c.out_unit(c.relate(i)) != c.in_unit(i))
            rep.violations.push_back(
                {"restriction (iii)",
                 "inflow " + std::to_string(i) + " feeds an outflow of a different unit"});

    // (iv): a control inport and a control outport exist.
    {
        std::vector<bool> written(c.ports.card, false), read(c.ports.card, false);
        for (Nat o = 0; o < c.outflows.card; ++o) written[c.tgt(o)] = true;
        for (Nat i = 0; i < c.inflows.card; ++i) read[c.src(i)] = true;
        bool has_ctrl_in = false, has_ctrl_out = false;
        for (Nat p = 0; p < c.ports.card; ++p) {
            if (c.colour(p) != 0) continue;
            if (!written[p]) has_ctrl_in = true;
            if (!read[p]) has_ctrl_out = true;
        }
        if (!has_ctrl_in)
            rep.violations.push_back({"restriction (iv)", "no control inport"});
        if (!has_ctrl_out)
            rep.violations.push_back({"restriction (iv)", "no control outport"});
    }

    {
        std::set<std::string> seen;
        for (Nat p = 0; p < c.port_labels.size(); ++p)
            if (!seen.insert(c.port_labels[p]).second)
                rep.violations.push_back(
                    {"port labels", "duplicate label '" + c.port_labels[p] + "'"});
    }
    return rep;
}

std::vector<Nat> inports(const Computon& c) {
    std::vector<bool> written(c.ports.card, false);
    for (Nat o = 0; o < c.outflows.card; ++o) written[c.tgt(o)] = true;
    std::vector<Nat> out;
    for (Nat p = 0; p < c.ports.card; ++p)
        if (!written[p]) out.push_back(p);
    return out;
}

std::vector<Nat> outports(const Computon& c) {
    std::vector<bool> read(c.ports.card, false);
    for (Nat i = 0; i < c.inflows.card; ++i) read[c.src(i)] = true;
    std::vector<Nat> out;
    for (Nat p = 0; p < c.ports.card; ++p)
        if (!read[p]) out.push_back(p);
    return out;
}

namespace {

std::vector<Nat> sorted_unique(std::vector<Nat> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::vector<Nat> pre_set(const Computon& c, Nat unit) {
    if (unit >= c.units.card) throw std::domain_error("pre_set: unit out of range");
    std::vector<Nat> v;
    for (Nat i = 0; i < c.inflows.card; ++i)
        if (c.in_unit(i) == unit) v.push_back(c.src(i));
    return sorted_unique(std::move(v));
}

std::vector<Nat> post_set(const Computon& c, Nat unit) {
    if (unit >= c.units.card) throw std::domain_error("post_set: unit out of range");
    std::vector<Nat> v;
    for (Nat o = 0; o < c.outflows.card; ++o)
        if (c.out_unit(o) == unit) v.push_back(c.tgt(o));
    return sorted_unique(std::move(v));
}

std::vector<Nat> port_pre(const Computon& c, Nat port) {
    if (port >= c.ports.card) throw std::domain_error("port_pre: port out of range");
    std::vector<Nat> v;
    for (Nat o = 0; o < c.outflows.card; ++o)
        if (c.tgt(o) == port) v.push_back(c.out_unit(o));
    return sorted_unique(std::move(v));
}

std::vector<Nat> port_post(const Computon& c, Nat port) {
    if (port >= c.ports.card) throw std::domain_error("port_post: port out of range");
    std::vector<Nat> v;
    for (Nat i = 0; i < c.inflows.card; ++i)
        if (c.src(i) == port) v.push_back(c.in_unit(i));
    return sorted_unique(std::move(v));
}

bool is_connected(const Computon& c) {
    if (c.inflows.card == 0 && c.outflows.card == 0) return true;  // no paths to demand

    std::vector<bool> is_outport(c.ports.card, true);
    for (Nat i = 0; i < c.inflows.card; ++i) is_outport[c.src(i)] = false;

    // A unit is "good" when some flow sequence from it reaches an outport.
    std::vector<bool> good(c.units.card, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Nat o = 0; o < c.outflows.card; ++o) {
            Nat u = c.out_unit(o);
            if (good[u]) continue;
            Nat q = c.tgt(o);
            bool ok = is_outport[q];
            if (!ok)
                for (Nat i = 0; i < c.inflows.card && !ok; ++i)
                    if (c.src(i) == q && good[c.in_unit(i)]) ok = true;
            if (ok) {
                good[u] = true;
                changed = true;
            }
        }
    }

    std::vector<bool> written(c.ports.card, false);
    for (Nat o = 0; o < c.outflows.card; ++o) written[c.tgt(o)] = true;
    for (Nat p = 0; p < c.ports.card; ++p) {
        bool quantified = !written[p];  // inport
        bool departs = false, reaches = false;
        for (Nat i = 0; i < c.inflows.card; ++i)
            if (c.src(i) == p) {
                quantified = departs = true;
                if (good[c.in_unit(i)]) reaches = true;
            }
        if (quantified && (!departs || !reaches)) return false;
    }
    return true;
}

bool is_trivial(const Computon& c) {
    return c.units.card == 0 && c.inflows.card == 0 && c.outflows.card == 0;
}

bool is_primitive(const Computon& c) {
    return c.units.card == 1 && c.inflows.card + c.outflows.card == c.ports.card &&
           is_injective(c.src) && is_injective(c.tgt);
}

Computon mk_trivial(std::vector<std::string> labels, std::vector<Nat> port_colours) {
    if (labels.size() != port_colours.size())
        throw std::invalid_argument("mk_trivial: one colour per label required");
    Computon c;
    c.units = {0};
    c.ports = {labels.size()};
    c.inflows = {0};
    c.outflows = {0};
    Nat n = 0;
    for (Nat col : port_colours) n = std::max(n, col + 1);
    c.colours = {std::max<Nat>(n, 1)};
    c.src = FinMap::empty(c.ports);
    c.tgt = FinMap::empty(c.ports);
    c.out_unit = FinMap::empty(c.units);
    c.in_unit = FinMap::empty(c.units);
    c.colour = FinMap(c.ports, c.colours, std::move(port_colours));
    c.relate = FinMap::empty(c.outflows);
    c.port_labels = std::move(labels);
    auto rep = validate(c);
    if (!rep.ok()) throw std::invalid_argument("mk_trivial: " + rep.to_string());
    return c;
}

Computon mk_primitive(const PrimitiveSpec& spec) {
    Computon c;
    c.units = {1};
    c.ports = {spec.ports};
    c.inflows = spec.src.dom();
    c.outflows = spec.tgt.dom();
    c.colours = {spec.colours};
    c.src = spec.src;
    c.tgt = spec.tgt;
    c.out_unit = FinMap::constant(c.outflows, c.units, 0);
    c.in_unit = FinMap::constant(c.inflows, c.units, 0);
    c.colour = spec.colour;
    c.relate = spec.relate;
    c.device = spec.device;
    c.port_labels = spec.port_labels;

    auto rep = validate(c);
    if (!rep.ok()) throw std::invalid_argument("mk_primitive: " + rep.to_string());
    if (!is_injective(c.src))
        throw std::invalid_argument("mk_primitive: src must be injective");
    if (!is_injective(c.tgt))
        throw std::invalid_argument("mk_primitive: tgt must be injective");
    if (c.inflows.card + c.outflows.card != c.ports.card)
        throw std::invalid_argument("mk_primitive: every port needs exactly one flow");
    return c;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

struct IsoSearch {
    const Computon& a;
    const Computon& b;

    std::vector<Nat> unit_to;  // a-unit -> b-unit or kUnassigned
    std::vector<Nat> port_to;
    std::vector<bool> unit_used;
    std::vector<bool> port_used;

    static constexpr Nat kUnassigned = static_cast<Nat>(-1);

    // Per-port fibers, precomputed for both sides.
    std::vector<std::vector<Nat>> a_in_at, a_out_at, b_in_at, b_out_at;

    explicit IsoSearch(const Computon& a_, const Computon& b_) : a(a_), b(b_) {
        unit_to.assign(a.units.card, kUnassigned);
        port_to.assign(a.ports.card, kUnassigned);
        unit_used.assign(b.units.card, false);
        port_used.assign(b.ports.card, false);
        a_in_at = flows_at(a, true);
        a_out_at = flows_at(a, false);
        b_in_at = flows_at(b, true);
        b_out_at = flows_at(b, false);
    }

    static std::vector<std::vector<Nat>> flows_at(const Computon& c, bool in) {
        std::vector<std::vector<Nat>> at(c.ports.card);
        if (in) {
            for (Nat i = 0; i < c.inflows.card; ++i) at[c.src(i)].push_back(i);
        } else {
            for (Nat o = 0; o < c.outflows.card; ++o) at[c.tgt(o)].push_back(o);
        }
        return at;
    }

    bool port_compatible(Nat p, Nat q) const {
        if (a.colour(p) != b.colour(q)) return false;
        if (a_in_at[p].size() != b_in_at[q].size()) return false;
        if (a_out_at[p].size() != b_out_at[q].size()) return false;
        // Adjacent units must correspond under the fixed unit bijection.
        std::multiset<Nat> au, bu;
        for (Nat i : a_in_at[p]) au.insert(unit_to[a.in_unit(i)]);
        for (Nat i : b_in_at[q]) bu.insert(b.in_unit(i));
        if (au != bu) return false;
        au.clear();
        bu.clear();
        for (Nat o : a_out_at[p]) au.insert(unit_to[a.out_unit(o)]);
        for (Nat o : b_out_at[q]) bu.insert(b.out_unit(o));
        return au == bu;
    }

    // With units and ports fixed, flows match iff their transported
    // signatures group up identically; flows inside a group are
    // interchangeable.
    bool match_flows(Isomorphism& iso) const {
        using OutSig = std::tuple<Nat, Nat, std::string, std::multiset<std::pair<Nat, Nat>>>;
        std::map<OutSig, std::vector<Nat>> ga, gb;
        for (Nat o = 0; o < a.outflows.card; ++o) {
            std::multiset<std::pair<Nat, Nat>> feeders;
            for (Nat i = 0; i < a.inflows.card; ++i)
                if (a.relate(i) == o)
                    feeders.insert({port_to[a.src(i)], unit_to[a.in_unit(i)]});
            ga[{unit_to[a.out_unit(o)], port_to[a.tgt(o)], a.device[o].str(),
                std::move(feeders)}]
                .push_back(o);
        }
        for (Nat o = 0; o < b.outflows.card; ++o) {
            std::multiset<std::pair<Nat, Nat>> feeders;
            for (Nat i = 0; i < b.inflows.card; ++i)
                if (b.relate(i) == o) feeders.insert({b.src(i), b.in_unit(i)});
            gb[{b.out_unit(o), b.tgt(o), b.device[o].str(), std::move(feeders)}].push_back(o);
        }
        if (ga.size() != gb.size()) return false;
        std::vector<Nat> out_to(a.outflows.card);
        for (auto ita = ga.begin(), itb = gb.begin(); ita != ga.end(); ++ita, ++itb) {
            if (ita->first != itb->first || ita->second.size() != itb->second.size())
                return false;
            for (Nat k = 0; k < ita->second.size(); ++k)
                out_to[ita->second[k]] = itb->second[k];
        }

        using InSig = std::tuple<Nat, Nat, Nat>;
        std::map<InSig, std::vector<Nat>> ia, ib;
        for (Nat i = 0; i < a.inflows.card; ++i)
            ia[{port_to[a.src(i)], unit_to[a.in_unit(i)], out_to[a.relate(i)]}].push_back(i);
        for (Nat i = 0; i < b.inflows.card; ++i)
            ib[{b.src(i), b.in_unit(i), b.relate(i)}].push_back(i);
        if (ia.size() != ib.size()) return false;
        std::vector<Nat> in_to(a.inflows.card);
        for (auto ita = ia.begin(), itb = ib.begin(); ita != ia.end(); ++ita, ++itb) {
            if (ita->first != itb->first || ita->second.size() != itb->second.size())
                return false;
            for (Nat k = 0; k < ita->second.size(); ++k)
                in_to[ita->second[k]] = itb->second[k];
        }

        iso.unit_map = FinMap(a.units, b.units, unit_to);
        iso.port_map = FinMap(a.ports, b.ports, port_to);
        iso.inflow_map = FinMap(a.inflows, b.inflows, std::move(in_to));
        iso.outflow_map = FinMap(a.outflows, b.outflows, std::move(out_to));
        return true;
    }

    bool assign_ports(Nat p, Isomorphism& iso) {
        if (p == a.ports.card) return match_flows(iso);
        for (Nat q = 0; q < b.ports.card; ++q) {
            if (port_used[q] || !port_compatible(p, q)) continue;
            port_to[p] = q;
            port_used[q] = true;
            if (assign_ports(p + 1, iso)) return true;
            port_used[q] = false;
            port_to[p] = kUnassigned;
        }
        return false;
    }

    bool unit_compatible(Nat u, Nat v) const {
        Nat ain = 0, aout = 0, bin = 0, bout = 0;
        std::multiset<std::string> adev, bdev;
        std::multiset<Nat> acol_in, bcol_in, acol_out, bcol_out;
        for (Nat i = 0; i < a.inflows.card; ++i)
            if (a.in_unit(i) == u) {
                ++ain;
                acol_in.insert(a.colour(a.src(i)));
            }
        for (Nat i = 0; i < b.inflows.card; ++i)
            if (b.in_unit(i) == v) {
                ++bin;
                bcol_in.insert(b.colour(b.src(i)));
            }
        for (Nat o = 0; o < a.outflows.card; ++o)
            if (a.out_unit(o) == u) {
                ++aout;
                adev.insert(a.device[o].str());
                acol_out.insert(a.colour(a.tgt(o)));
            }
        for (Nat o = 0; o < b.outflows.card; ++o)
            if (b.out_unit(o) == v) {
                ++bout;
                bdev.insert(b.device[o].str());
                bcol_out.insert(b.colour(b.tgt(o)));
            }
        return ain == bin && aout == bout && adev == bdev && acol_in == bcol_in &&
               acol_out == bcol_out;
    }

    bool assign_units(Nat u, Isomorphism& iso) {
        if (u == a.units.card) return assign_ports(0, iso);
        for (Nat v = 0; v < b.units.card; ++v) {
            if (unit_used[v] || !unit_compatible(u, v)) continue;
            unit_to[u] = v;
            unit_used[v] = true;
            if (assign_units(u + 1, iso)) return true;
            unit_used[v] = false;
            unit_to[u] = kUnassigned;
        }
        return false;
    }
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Computon& a, const Computon& b) {
    if (a.units != b.units || a.ports != b.ports || a.inflows != b.inflows ||
        a.outflows != b.outflows || a.colours != b.colours)
        return std::nullopt;
    {
        std::multiset<Nat> ca(a.colour.table().begin(), a.colour.table().end());
        std::multiset<Nat> cb(b.colour.table().begin(), b.colour.table().end());
        if (ca != cb) return std::nullopt;
        std::multiset<std::string> da, db;
        for (const auto& d : a.device) da.insert(d.str());
        for (const auto& d : b.device) db.insert(d.str());
        if (da != db) return std::nullopt;
    }
    IsoSearch search(a, b);
    Isomorphism iso;
    if (search.assign_units(0, iso)) return iso;
    return std::nullopt;
}

bool computons_isomorphic(const Computon& a, const Computon& b) {
    return find_isomorphism(a, b).has_value();
}

}  // namespace computon
