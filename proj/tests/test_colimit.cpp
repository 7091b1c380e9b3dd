#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "computon/colimit.hpp"
#include "computon/operators.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace computon;
namespace fx = computon::fixtures;

TEST_CASE("pushability of the worked spans") {
    auto mul = fx::mul_primitive();
    auto add = fx::add_primitive();
    CHECK(is_pushable(fx::mul_add_span(mul, add)).pushable);

    Span idspan{identity_morphism(mul), identity_morphism(mul)};
    CHECK(is_pushable(idspan).pushable);
}

TEST_CASE("gluing onto an interior port is not pushable and names the clause") {
    auto comp = fx::mul_succ_composite();
    Nat fin = comp.colimit.coleg_left.port_map(3);  // interior merged control port
    auto add = fx::add_primitive();

    auto apex = std::make_shared<const Computon>(mk_trivial({"x"}, {0}));
    auto left = mk_morphism(apex, comp.composite.computon,
                            FinMap::empty(comp.composite.computon->units),
                            FinMap(apex->ports, comp.composite.computon->ports, {fin}),
                            FinMap::empty(comp.composite.computon->inflows),
                            FinMap::empty(comp.composite.computon->outflows));
    REQUIRE(left.ok());
    auto right = mk_morphism(apex, add, FinMap::empty(add->units),
                             FinMap(apex->ports, add->ports, {0}), FinMap::empty(add->inflows),
                             FinMap::empty(add->outflows));
    REQUIRE(right.ok());

    Span bad{left.value(), right.value()};
    auto p = is_pushable(bad);
    CHECK_FALSE(p.pushable);
    CHECK(p.violation.find("boundary") != std::string::npos);

    auto po = pushout(bad);
    CHECK_FALSE(po.ok());
    CHECK(po.error().find("boundary") != std::string::npos);
}

TEST_CASE("coproduct of the two worked primitives") {
    auto mul = fx::mul_primitive();
    auto add = fx::add_primitive();
    auto copr = coproduct(mul, add);
    const Computon& c = *copr.object;
    CHECK(c.units.card == 2);
    CHECK(c.ports.card == 10);
    CHECK(c.inflows.card == 6);
    CHECK(c.outflows.card == 4);
    CHECK(c.colours.card == 3);
    CHECK(validate(c).ok());
    CHECK(is_monomorphism(copr.coleg_left));
    CHECK(is_monomorphism(copr.coleg_right));

    // Right-operand labels survive, disambiguated only on collision.
    CHECK(c.port_labels[0] == "go");
    CHECK(c.port_labels[5] == "start");
}

TEST_CASE("coproduct against a one-port trivial grows the port count by one") {
    auto mul = fx::mul_primitive();
    auto one = fx::identity_trivial();
    CHECK(coproduct(mul, one).object->ports.card == mul->ports.card + 1);
    CHECK(coproduct(one, mul).object->ports.card == mul->ports.card + 1);
}

TEST_CASE("self-coproduct doubles everything but the colour palette") {
    auto mul = fx::mul_primitive();
    auto copr = coproduct(mul, mul);
    const Computon& c = *copr.object;
    CHECK(c.units.card == 2 * mul->units.card);
    CHECK(c.ports.card == 2 * mul->ports.card);
    CHECK(c.inflows.card == 2 * mul->inflows.card);
    CHECK(c.outflows.card == 2 * mul->outflows.card);
    CHECK(c.colours.card == mul->colours.card);
    // Labels disambiguate on the right copy.
    CHECK(c.port_labels[0] == "go");
    CHECK(c.port_labels[5] == "go_2");
    CHECK(validate(c).ok());
}

TEST_CASE("pushout of the worked sequencing span") {
    auto mul = fx::mul_primitive();
    auto add = fx::add_primitive();
    auto po = pushout(fx::mul_add_span(mul, add));
    REQUIRE(po.ok());
    const Computon& c = *po.value().object;
    CHECK(c.units.card == 2);
    CHECK(c.ports.card == 8);
    CHECK(c.inflows.card == 6);
    CHECK(c.outflows.card == 4);
    CHECK(c.colours.card == 3);
    CHECK(validate(c).ok());

    // Merged ports keep the left operand's labels.
    CHECK(c.port_labels[po.value().coleg_left.port_map(3)] == "fin");
    CHECK(c.port_labels[po.value().coleg_left.port_map(4)] == "product");
}

TEST_CASE("pushout commutes with its generating span") {
    gen::Rng rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        auto l = gen::random_primitive(rng);
        auto r = gen::random_primitive(rng);
        Span s = gen::random_seq_span(rng, l, r);
        auto po = pushout(s);
        REQUIRE(po.ok());
        Morphism a = compose(s.left, po.value().coleg_left);
        Morphism b = compose(s.right, po.value().coleg_right);
        CHECK(a.unit_map == b.unit_map);
        CHECK(a.port_map == b.port_map);
        CHECK(a.inflow_map == b.inflow_map);
        CHECK(a.outflow_map == b.outflow_map);
        CHECK(validate(*po.value().object).ok());
    }
}

TEST_CASE("pushout colegs over trivial-apex monic-leg spans are monomorphisms") {
    gen::Rng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        auto l = gen::random_primitive(rng);
        auto r = gen::random_primitive(rng);
        auto po = pushout(gen::random_seq_span(rng, l, r));
        REQUIRE(po.ok());
        CHECK(is_monomorphism(po.value().coleg_left));
        CHECK(is_monomorphism(po.value().coleg_right));
    }
}

namespace {

// Rebuild the mediating morphism from class representatives.
Morphism mediate(const ColimitResult& po, const Morphism& c1, const Morphism& c2) {
    auto build = [](const FinMap& b1, const FinMap& b2, const FinMap& f1, const FinMap& f2) {
        constexpr Nat kUnset = static_cast<Nat>(-1);
        std::vector<Nat> t(b1.cod().card, kUnset);
        for (Nat x = f2.dom().card; x-- > 0;) t[b2(x)] = f2(x);
        for (Nat x = f1.dom().card; x-- > 0;) t[b1(x)] = f1(x);
        for (Nat v : t) REQUIRE(v != kUnset);
        return FinMap(b1.cod(), f1.cod(), std::move(t));
    };
    Morphism h;
    h.source = po.object;
    h.target = c1.target;
    h.unit_map = build(po.coleg_left.unit_map, po.coleg_right.unit_map, c1.unit_map, c2.unit_map);
    h.port_map = build(po.coleg_left.port_map, po.coleg_right.port_map, c1.port_map, c2.port_map);
    h.inflow_map =
        build(po.coleg_left.inflow_map, po.coleg_right.inflow_map, c1.inflow_map, c2.inflow_map);
    h.outflow_map = build(po.coleg_left.outflow_map, po.coleg_right.outflow_map, c1.outflow_map,
                          c2.outflow_map);
    return h;
}

}  // namespace

TEST_CASE("pushout universal property: the mediating morphism exists and is unique") {
    gen::Rng rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        auto l = gen::random_primitive(rng);
        auto r = gen::random_primitive(rng);
        Span s = gen::random_seq_span(rng, l, r);
        auto po = pushout(s);
        REQUIRE(po.ok());

        // A cocone: embed the pushout object side-by-side with a bystander.
        auto bystander = gen::random_primitive(rng);
        auto wide = coproduct(po.value().object, bystander);
        Morphism gamma = wide.coleg_left;
        Morphism c1 = compose(po.value().coleg_left, gamma);
        Morphism c2 = compose(po.value().coleg_right, gamma);

        Morphism h = mediate(po.value(), c1, c2);
        // The mediating morphism is exactly gamma and commutes on both legs.
        CHECK(h.unit_map == gamma.unit_map);
        CHECK(h.port_map == gamma.port_map);
        CHECK(h.inflow_map == gamma.inflow_map);
        CHECK(h.outflow_map == gamma.outflow_map);
        auto valid = mk_morphism(h.source, h.target, h.unit_map, h.port_map, h.inflow_map,
                                 h.outflow_map);
        CHECK(valid.ok());

        // Uniqueness: the colegs are jointly surjective, so enumerating all
        // port components commuting with the cocone finds exactly one.
        Nat count = 0;
        std::vector<Nat> t(po.value().object->ports.card);
        std::function<void(Nat)> rec = [&](Nat k) {
            if (k == t.size()) {
                FinMap cand(po.value().object->ports, wide.object->ports, t);
                for (Nat p = 0; p < l->ports.card; ++p)
                    if (cand(po.value().coleg_left.port_map(p)) != c1.port_map(p)) return;
                for (Nat p = 0; p < r->ports.card; ++p)
                    if (cand(po.value().coleg_right.port_map(p)) != c2.port_map(p)) return;
                ++count;
                return;
            }
            for (Nat v = 0; v < wide.object->ports.card; ++v) {
                t[k] = v;
                rec(k + 1);
            }
        };
        if (po.value().object->ports.card <= 5) {
            rec(0);
            CHECK(count == 1);
        }
    }
}

TEST_CASE("unique_from_coproduct satisfies its defining property") {
    auto succ = fx::succ_primitive();
    auto fact = fx::fact_primitive();
    auto [in_l, in_r] = fx::in_markers(succ, fact);
    auto [out_l, out_r] = fx::out_markers(succ, fact);

    auto copr = coproduct(in_l.mono.source, out_l.mono.source);
    auto f = unique_from_coproduct(copr, in_l.mono, out_l.mono);
    REQUIRE(f.ok());
    auto g = unique_from_coproduct(copr, in_r.mono, out_r.mono);
    REQUIRE(g.ok());

    for (Nat p = 0; p < in_l.mono.source->ports.card; ++p)
        CHECK(f.value().port_map(copr.coleg_left.port_map(p)) == in_l.mono.port_map(p));
    for (Nat p = 0; p < out_l.mono.source->ports.card; ++p)
        CHECK(f.value().port_map(copr.coleg_right.port_map(p)) == out_l.mono.port_map(p));

    // Swapping the operands mediates to an isomorphic colimit.
    auto po_a = pushout(Span{f.value(), g.value()});
    REQUIRE(po_a.ok());
    auto po_b = pushout(Span{g.value(), f.value()});
    REQUIRE(po_b.ok());
    CHECK(computons_isomorphic(*po_a.value().object, *po_b.value().object));
}

TEST_CASE("unique_from_coproduct rejects mismatched targets") {
    auto succ = fx::succ_primitive();
    auto fact = fx::fact_primitive();
    auto [in_l, in_r] = fx::in_markers(succ, fact);
    auto [out_l, out_r] = fx::out_markers(succ, fact);
    auto copr = coproduct(in_l.mono.source, out_l.mono.source);
    CHECK_FALSE(unique_from_coproduct(copr, in_l.mono, out_r.mono).ok());
}
