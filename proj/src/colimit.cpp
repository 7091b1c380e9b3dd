#include "computon/colimit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace computon {

namespace {

std::vector<Nat> interface_union(const Computon& c) {
    std::vector<Nat> v = inports(c);
    std::vector<Nat> o = outports(c);
    v.insert(v.end(), o.begin(), o.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool lands_on_interface(const Morphism& via, const std::vector<Nat>& apex_ports,
                        const std::vector<Nat>& iface) {
    for (Nat p : apex_ports)
        if (!std::binary_search(iface.begin(), iface.end(), via.port_map(p))) return false;
    return true;
}

std::set<std::string> device_set(const Computon& c) {
    std::set<std::string> out;
    for (const auto& d : c.device) out.insert(d.str());
    return out;
}

// Unique label for `candidate` given what is already taken: append the
// smallest numeric suffix that frees it.
std::string disambiguate(const std::string& candidate, std::set<std::string>& taken) {
    std::string label = candidate;
    for (Nat k = 2; !taken.insert(label).second; ++k)
        label = candidate + "_" + std::to_string(k);
    return label;
}

}  // namespace

Pushability is_pushable(const Span& s) {
    if (!s.left.source || !s.right.source || !s.left.target || !s.right.target)
        return {false, "span has a missing computon"};
    if (*s.left.source != *s.right.source) return {false, "legs do not share the apex"};
    const Computon& apex = *s.apex();
    const Computon& l = *s.left.target;
    const Computon& r = *s.right.target;

    std::vector<Nat> touched_r = vec_i(s.right);
    {
        auto vo = vec_o(s.right);
        touched_r.insert(touched_r.end(), vo.begin(), vo.end());
    }
    if (!lands_on_interface(s.left, touched_r, interface_union(l)))
        return {false, "boundary: apex ports attached on the right map inside the left operand"};

    std::vector<Nat> touched_l = vec_i(s.left);
    {
        auto vo = vec_o(s.left);
        touched_l.insert(touched_l.end(), vo.begin(), vo.end());
    }
    if (!lands_on_interface(s.right, touched_l, interface_union(r)))
        return {false, "boundary: apex ports attached on the left map inside the right operand"};

    if (apex.colours.card > std::min(l.colours.card, r.colours.card))
        return {false, "types: apex colours do not embed in both operands"};

    std::set<std::string> devs = device_set(apex);
    std::set<std::string> dl = device_set(l), dr = device_set(r);
    for (const auto& d : devs)
        if (!dl.count(d) || !dr.count(d))
            return {false, "devices: apex device '" + d + "' missing from an operand"};

    // A span may pass the four boundary/palette clauses yet close every
    // control loop, leaving the quotient with no port where control starts
    // or ends. Such a gluing has no pushout computon either.
    {
        auto po_p = pushout_fns(s.left.port_map, s.right.port_map);
        std::vector<bool> written(po_p.size, false), read(po_p.size, false);
        std::vector<bool> control(po_p.size, false);
        for (Nat o = 0; o < l.outflows.card; ++o) written[po_p.into_left(l.tgt(o))] = true;
        for (Nat o = 0; o < r.outflows.card; ++o) written[po_p.into_right(r.tgt(o))] = true;
        for (Nat i = 0; i < l.inflows.card; ++i) read[po_p.into_left(l.src(i))] = true;
        for (Nat i = 0; i < r.inflows.card; ++i) read[po_p.into_right(r.src(i))] = true;
        for (Nat p = 0; p < l.ports.card; ++p)
            if (l.colour(p) == 0) control[po_p.into_left(p)] = true;
        for (Nat p = 0; p < r.ports.card; ++p)
            if (r.colour(p) == 0) control[po_p.into_right(p)] = true;
        bool has_in = false, has_out = false;
        for (Nat k = 0; k < po_p.size; ++k) {
            if (!control[k]) continue;
            if (!written[k]) has_in = true;
            if (!read[k]) has_out = true;
        }
        if (!has_in || !has_out)
            return {false, "interface: the gluing leaves no control " +
                               std::string(!has_in ? "inport" : "outport")};
    }

    return {true, {}};
}

namespace {

// Transport a structure map through componentwise disjoint unions.
FinMap coproduct_map(const DisjointUnion& dom, const DisjointUnion& cod, const FinMap& f1,
                     const FinMap& f2) {
    std::vector<Nat> t(dom.size);
    for (Nat x = 0; x < dom.size; ++x) t[x] = find_eq(dom, cod, x, f1, f2);
    return FinMap(FinSet{dom.size}, FinSet{cod.size}, std::move(t));
}

Morphism make_validated(ComputonPtr src, ComputonPtr dst, FinMap mu, FinMap mp, FinMap mi,
                        FinMap mo, const char* what) {
    auto m = mk_morphism(std::move(src), std::move(dst), std::move(mu), std::move(mp),
                         std::move(mi), std::move(mo));
    if (!m)
        throw std::logic_error(std::string("internal: ") + what +
                               " is not a morphism: " + m.error());
    return std::move(m).value();
}

}  // namespace

ColimitResult coproduct(ComputonPtr a, ComputonPtr b) {
    const Computon& l = *a;
    const Computon& r = *b;
    auto du_u = disjoint_union(l.units, r.units);
    auto du_p = disjoint_union(l.ports, r.ports);
    auto du_i = disjoint_union(l.inflows, r.inflows);
    auto du_o = disjoint_union(l.outflows, r.outflows);

    auto obj = std::make_shared<Computon>();
    obj->units = {du_u.size};
    obj->ports = {du_p.size};
    obj->inflows = {du_i.size};
    obj->outflows = {du_o.size};
    obj->colours = {std::max(l.colours.card, r.colours.card)};

    obj->src = coproduct_map(du_i, du_p, l.src, r.src);
    obj->tgt = coproduct_map(du_o, du_p, l.tgt, r.tgt);
    obj->out_unit = coproduct_map(du_o, du_u, l.out_unit, r.out_unit);
    obj->in_unit = coproduct_map(du_i, du_u, l.in_unit, r.in_unit);
    obj->relate = coproduct_map(du_i, du_o, l.relate, r.relate);

    {
        std::vector<Nat> t(du_p.size);
        for (Nat p = 0; p < l.ports.card; ++p) t[p] = l.colour(p);
        for (Nat p = 0; p < r.ports.card; ++p) t[l.ports.card + p] = r.colour(p);
        obj->colour = FinMap(obj->ports, obj->colours, std::move(t));
    }

    obj->device = l.device;
    obj->device.insert(obj->device.end(), r.device.begin(), r.device.end());

    std::set<std::string> taken;
    obj->port_labels.reserve(du_p.size);
    for (const auto& lab : l.port_labels) obj->port_labels.push_back(disambiguate(lab, taken));
    for (const auto& lab : r.port_labels) obj->port_labels.push_back(disambiguate(lab, taken));

    ColimitResult out;
    out.object = obj;
    out.coleg_left = make_validated(std::move(a), obj, du_u.inj_left, du_p.inj_left,
                                    du_i.inj_left, du_o.inj_left, "coproduct left coleg");
    out.coleg_right = make_validated(std::move(b), obj, du_u.inj_right, du_p.inj_right,
                                     du_i.inj_right, du_o.inj_right, "coproduct right coleg");
    return out;
}

namespace {

// Fill one structure map of a pushout object: each class takes the value of
// its smallest left representative, or of its smallest right one when no
// left representative exists.
FinMap pushout_map(const PushoutFns& dom, const PushoutFns& cod, const FinMap& f1,
                   const FinMap& f2) {
    constexpr Nat kUnset = static_cast<Nat>(-1);
    std::vector<Nat> t(dom.size, kUnset);
    for (Nat x2 = f2.dom().card; x2-- > 0;) t[dom.into_right(x2)] = cod.into_right(f2(x2));
    for (Nat x1 = f1.dom().card; x1-- > 0;) t[dom.into_left(x1)] = cod.into_left(f1(x1));
    for (Nat v : t)
        if (v == kUnset) throw std::logic_error("internal: pushout injections not jointly onto");
    return FinMap(FinSet{dom.size}, FinSet{cod.size}, std::move(t));
}

}  // namespace

Result<ColimitResult> pushout(const Span& s) {
    using R = Result<ColimitResult>;
    Pushability p = is_pushable(s);
    if (!p.pushable) return R::failure("span is not pushable: " + p.violation);

    const Computon& l = *s.left.target;
    const Computon& r = *s.right.target;

    auto po_u = pushout_fns(s.left.unit_map, s.right.unit_map);
    auto po_p = pushout_fns(s.left.port_map, s.right.port_map);
    auto po_i = pushout_fns(s.left.inflow_map, s.right.inflow_map);
    auto po_o = pushout_fns(s.left.outflow_map, s.right.outflow_map);

    auto obj = std::make_shared<Computon>();
    obj->units = {po_u.size};
    obj->ports = {po_p.size};
    obj->inflows = {po_i.size};
    obj->outflows = {po_o.size};
    obj->colours = {std::max(l.colours.card, r.colours.card)};

    obj->src = pushout_map(po_i, po_p, l.src, r.src);
    obj->tgt = pushout_map(po_o, po_p, l.tgt, r.tgt);
    obj->out_unit = pushout_map(po_o, po_u, l.out_unit, r.out_unit);
    obj->in_unit = pushout_map(po_i, po_u, l.in_unit, r.in_unit);
    obj->relate = pushout_map(po_i, po_o, l.relate, r.relate);

    {
        constexpr Nat kUnset = static_cast<Nat>(-1);
        std::vector<Nat> t(po_p.size, kUnset);
        for (Nat q = r.ports.card; q-- > 0;) t[po_p.into_right(q)] = r.colour(q);
        for (Nat q = l.ports.card; q-- > 0;) t[po_p.into_left(q)] = l.colour(q);
        obj->colour = FinMap(obj->ports, obj->colours, std::move(t));
    }
    {
        obj->device.assign(po_o.size, DeviceId("builtin:unset"));
        for (Nat o = r.outflows.card; o-- > 0;) obj->device[po_o.into_right(o)] = r.device[o];
        for (Nat o = l.outflows.card; o-- > 0;) obj->device[po_o.into_left(o)] = l.device[o];
    }
    {
        // Left labels win on merged classes; right-only classes disambiguate
        // against everything chosen so far.
        constexpr Nat kUnset = static_cast<Nat>(-1);
        std::vector<Nat> left_rep(po_p.size, kUnset), right_rep(po_p.size, kUnset);
        for (Nat q = l.ports.card; q-- > 0;) left_rep[po_p.into_left(q)] = q;
        for (Nat q = r.ports.card; q-- > 0;) right_rep[po_p.into_right(q)] = q;
        std::set<std::string> taken;
        obj->port_labels.resize(po_p.size);
        for (Nat k = 0; k < po_p.size; ++k)
            if (left_rep[k] != kUnset)
                obj->port_labels[k] = disambiguate(l.port_labels[left_rep[k]], taken);
        for (Nat k = 0; k < po_p.size; ++k)
            if (left_rep[k] == kUnset)
                obj->port_labels[k] = disambiguate(r.port_labels[right_rep[k]], taken);
    }

    auto rep = validate(*obj);
    if (!rep.ok())
        throw std::logic_error("internal: pushout of a pushable span is invalid: " +
                               rep.to_string());

    ColimitResult out;
    out.object = obj;
    out.coleg_left = make_validated(s.left.target, obj, po_u.into_left, po_p.into_left,
                                    po_i.into_left, po_o.into_left, "pushout left coleg");
    out.coleg_right = make_validated(s.right.target, obj, po_u.into_right, po_p.into_right,
                                     po_i.into_right, po_o.into_right, "pushout right coleg");
    return R::success(std::move(out));
}

Result<Morphism> unique_from_coproduct(const ColimitResult& copr, const Morphism& f,
                                       const Morphism& g) {
    using R = Result<Morphism>;
    if (!f.source || !copr.coleg_left.source || *f.source != *copr.coleg_left.source)
        return R::failure("f must start at the coproduct's left operand");
    if (!g.source || !copr.coleg_right.source || *g.source != *copr.coleg_right.source)
        return R::failure("g must start at the coproduct's right operand");
    if (!f.target || !g.target || *f.target != *g.target)
        return R::failure("f and g must share a target");
    if (f.target->colours.card < copr.object->colours.card)
        return R::failure("target colour palette smaller than the coproduct's");

    const Computon& l = *f.source;
    auto glue = [&](const FinMap& lf, const FinMap& rf, FinSet cod, Nat split) {
        const FinSet dom{lf.dom().card + rf.dom().card};
        std::vector<Nat> t(dom.card);
        for (Nat x = 0; x < lf.dom().card; ++x) t[x] = lf(x);
        for (Nat x = 0; x < rf.dom().card; ++x) t[split + x] = rf(x);
        return FinMap(dom, cod, std::move(t));
    };
    auto mu = glue(f.unit_map, g.unit_map, f.target->units, l.units.card);
    auto mp = glue(f.port_map, g.port_map, f.target->ports, l.ports.card);
    auto mi = glue(f.inflow_map, g.inflow_map, f.target->inflows, l.inflows.card);
    auto mo = glue(f.outflow_map, g.outflow_map, f.target->outflows, l.outflows.card);
    return mk_morphism(copr.object, f.target, std::move(mu), std::move(mp), std::move(mi),
                       std::move(mo));
}

}  // namespace computon
