#include "computon/morphism.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace computon {

namespace {

std::vector<Nat> sorted_unique(std::vector<Nat> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool subset(const std::vector<Nat>& small, const std::vector<Nat>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Nat> vec_i(const Morphism& m) {
    const Computon& a = *m.source;
    const Computon& b = *m.target;
    std::vector<Nat> out;
    for (Nat p = 0; p < a.ports.card; ++p) {
        std::set<Nat> there;
        for (Nat u : port_pre(b, m.port_map(p))) there.insert(u);
        for (Nat u : port_pre(a, p)) there.erase(m.unit_map(u));
        if (!there.empty()) out.push_back(p);
    }
    return out;
}

std::vector<Nat> vec_o(const Morphism& m) {
    const Computon& a = *m.source;
    const Computon& b = *m.target;
    std::vector<Nat> out;
    for (Nat p = 0; p < a.ports.card; ++p) {
        std::set<Nat> there;
        for (Nat u : port_post(b, m.port_map(p))) there.insert(u);
        for (Nat u : port_post(a, p)) there.erase(m.unit_map(u));
        if (!there.empty()) out.push_back(p);
    }
    return out;
}

Result<Morphism> mk_morphism(ComputonPtr source, ComputonPtr target, FinMap unit_map,
                             FinMap port_map, FinMap inflow_map, FinMap outflow_map) {
    using R = Result<Morphism>;
    if (!source || !target) return R::failure("null operand");
    const Computon& a = *source;
    const Computon& b = *target;

    if (unit_map.dom() != a.units || unit_map.cod() != b.units ||
        port_map.dom() != a.ports || port_map.cod() != b.ports ||
        inflow_map.dom() != a.inflows || inflow_map.cod() != b.inflows ||
        outflow_map.dom() != a.outflows || outflow_map.cod() != b.outflows)
        return R::failure("component maps do not match the computon cardinalities");

    if (a.colours.card > b.colours.card)
        return R::failure("colour embedding: source has more colours than target");

    for (Nat i = 0; i < a.inflows.card; ++i) {
        if (b.in_unit(inflow_map(i)) != unit_map(a.in_unit(i)))
            return R::failure("square in_unit . inflow_map = unit_map . in_unit fails at inflow " +
                              std::to_string(i));
        if (b.src(inflow_map(i)) != port_map(a.src(i)))
            return R::failure("square src . inflow_map = port_map . src fails at inflow " +
                              std::to_string(i));
        if (b.relate(inflow_map(i)) != outflow_map(a.relate(i)))
            return R::failure(
                "square relate . inflow_map = outflow_map . relate fails at inflow " +
                std::to_string(i));
    }
    for (Nat o = 0; o < a.outflows.card; ++o) {
        if (b.out_unit(outflow_map(o)) != unit_map(a.out_unit(o)))
            return R::failure(
                "square out_unit . outflow_map = unit_map . out_unit fails at outflow " +
                std::to_string(o));
        if (b.tgt(outflow_map(o)) != port_map(a.tgt(o)))
            return R::failure("square tgt . outflow_map = port_map . tgt fails at outflow " +
                              std::to_string(o));
        if (b.device[outflow_map(o)] != a.device[o])
            return R::failure("device of outflow " + std::to_string(o) +
                              " not preserved verbatim");
    }
    for (Nat p = 0; p < a.ports.card; ++p)
        if (b.colour(port_map(p)) != a.colour(p))
            return R::failure("colour square fails at port " + std::to_string(p));

    Morphism m{std::move(source), std::move(target), std::move(unit_map),
               std::move(port_map), std::move(inflow_map), std::move(outflow_map)};

    std::vector<Nat> touched = vec_i(m);
    {
        std::vector<Nat> vo = vec_o(m);
        touched.insert(touched.end(), vo.begin(), vo.end());
        touched = sorted_unique(std::move(touched));
    }
    std::vector<Nat> interface_ports = inports(a);
    {
        std::vector<Nat> po = outports(a);
        interface_ports.insert(interface_ports.end(), po.begin(), po.end());
        interface_ports = sorted_unique(std::move(interface_ports));
    }
    if (!subset(touched, interface_ports))
        return R::failure("boundary: an interior source port is attached to new units");

    return R::success(std::move(m));
}

Morphism identity_morphism(ComputonPtr c) {
    Morphism m;
    m.unit_map = FinMap::identity(c->units);
    m.port_map = FinMap::identity(c->ports);
    m.inflow_map = FinMap::identity(c->inflows);
    m.outflow_map = FinMap::identity(c->outflows);
    m.source = c;
    m.target = std::move(c);
    return m;
}

bool is_monomorphism(const Morphism& m) {
    return is_injective(m.unit_map) && is_injective(m.port_map) &&
           is_injective(m.inflow_map) && is_injective(m.outflow_map);
}

Morphism compose(const Morphism& f, const Morphism& g) {
    if (!f.target || !g.source || *f.target != *g.source)
        throw std::domain_error("compose: middle computon mismatch");
    Morphism m;
    m.source = f.source;
    m.target = g.target;
    m.unit_map = f.unit_map.then(g.unit_map);
    m.port_map = f.port_map.then(g.port_map);
    m.inflow_map = f.inflow_map.then(g.inflow_map);
    m.outflow_map = f.outflow_map.then(g.outflow_map);
    return m;
}

namespace {

Result<Marker> mk_marker(Marker::Kind kind, ComputonPtr trivial_source, ComputonPtr target,
                         FinMap port_map) {
    using R = Result<Marker>;
    if (!trivial_source || !is_trivial(*trivial_source))
        return R::failure("marker source must be a trivial computon");
    auto m = mk_morphism(std::move(trivial_source), target, FinMap::empty(target->units),
                         std::move(port_map), FinMap::empty(target->inflows),
                         FinMap::empty(target->outflows));
    if (!m) return R::failure(m.error());
    if (!is_monomorphism(m.value())) return R::failure("marker must be a monomorphism");
    std::vector<Nat> got = image(m.value().port_map);
    std::vector<Nat> want =
        kind == Marker::Kind::in ? inports(*target) : outports(*target);
    if (got != want)
        return R::failure(std::string("marker image must equal the ") +
                          (kind == Marker::Kind::in ? "inports" : "outports") +
                          " exactly");
    return R::success(Marker{kind, std::move(m).value()});
}

}  // namespace

Result<Marker> mk_in_marker(ComputonPtr trivial_source, ComputonPtr target, FinMap port_map) {
    return mk_marker(Marker::Kind::in, std::move(trivial_source), std::move(target),
                     std::move(port_map));
}

Result<Marker> mk_out_marker(ComputonPtr trivial_source, ComputonPtr target, FinMap port_map) {
    return mk_marker(Marker::Kind::out, std::move(trivial_source), std::move(target),
                     std::move(port_map));
}

}  // namespace computon
