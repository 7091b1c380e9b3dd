#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "computon/morphism.hpp"
#include "computon/operators.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace computon;
namespace fx = computon::fixtures;

namespace {

// Lemma: preimages of interface ports are interface ports.
void check_interface_preservation(const Morphism& m) {
    auto in2 = inports(*m.target);
    auto out2 = outports(*m.target);
    auto in1 = inports(*m.source);
    auto out1 = outports(*m.source);
    for (Nat p = 0; p < m.source->ports.card; ++p) {
        if (std::binary_search(in2.begin(), in2.end(), m.port_map(p)))
            CHECK(std::binary_search(in1.begin(), in1.end(), p));
        if (std::binary_search(out2.begin(), out2.end(), m.port_map(p)))
            CHECK(std::binary_search(out1.begin(), out1.end(), p));
    }
}

}  // namespace

TEST_CASE("identity morphism validates and has empty attachment sets") {
    auto mul = fx::mul_primitive();
    Morphism id = identity_morphism(mul);
    auto again = mk_morphism(mul, mul, id.unit_map, id.port_map, id.inflow_map, id.outflow_map);
    CHECK(again.ok());
    CHECK(vec_i(id).empty());
    CHECK(vec_o(id).empty());
    CHECK(is_monomorphism(id));
    check_interface_preservation(id);
}

TEST_CASE("span legs of the worked example validate; attachment lands in vec_o") {
    auto mul = fx::mul_primitive();
    auto add = fx::add_primitive();
    Span s = fx::mul_add_span(mul, add);

    CHECK(is_monomorphism(s.left));
    CHECK(is_monomorphism(s.right));

    // The left leg hits mul's outports, which mul's unit writes into: the
    // apex ports gain writers.
    CHECK(vec_i(s.left) == std::vector<Nat>{0, 1});
    CHECK(vec_o(s.left).empty());
    // The right leg hits add's inports, which add's unit reads.
    CHECK(vec_o(s.right) == std::vector<Nat>{0, 1});
    CHECK(vec_i(s.right).empty());

    check_interface_preservation(s.left);
    check_interface_preservation(s.right);
}

TEST_CASE("marker morphisms into a trivial target have empty attachment sets") {
    auto t = std::make_shared<const Computon>(mk_trivial({"a", "b"}, {0, 1}));
    auto apex = std::make_shared<const Computon>(mk_trivial({"m0", "m1"}, {0, 1}));
    auto m = mk_in_marker(apex, t, FinMap(apex->ports, t->ports, {0, 1}));
    REQUIRE(m.ok());
    CHECK(vec_i(m.value().mono).empty());
    CHECK(vec_o(m.value().mono).empty());
}

TEST_CASE("boundary condition rejects embeddings that grow units on interior ports") {
    // Extend mul |> succ with a unit that taps the interior merged control
    // port; the identity embedding of the composite then violates the
    // boundary condition.
    auto comp = fx::mul_succ_composite();
    const Computon& c = *comp.composite.computon;
    Nat fin = comp.colimit.coleg_left.port_map(3);
    {
        auto in = inports(c);
        auto out = outports(c);
        REQUIRE_FALSE(std::binary_search(in.begin(), in.end(), fin));
        REQUIRE_FALSE(std::binary_search(out.begin(), out.end(), fin));
    }

    Computon ext = c;
    ext.units = {c.units.card + 1};
    ext.ports = {c.ports.card + 1};
    ext.colour = FinMap(ext.ports, c.colours,
                        [&] {
                            auto t = c.colour.table();
                            t.push_back(0);
                            return t;
                        }());
    ext.port_labels.push_back("tap");
    {
        auto t = c.src.table();
        t.push_back(fin);
        ext.inflows = {c.inflows.card + 1};
        ext.src = FinMap(ext.inflows, ext.ports, std::move(t));
        auto u = c.in_unit.table();
        u.push_back(c.units.card);
        ext.in_unit = FinMap(ext.inflows, ext.units, std::move(u));
    }
    {
        auto t = c.tgt.table();
        t.push_back(c.ports.card);  // the fresh port
        ext.outflows = {c.outflows.card + 1};
        ext.tgt = FinMap(ext.outflows, ext.ports, std::move(t));
        auto u = c.out_unit.table();
        u.push_back(c.units.card);
        ext.out_unit = FinMap(ext.outflows, ext.units, std::move(u));
        ext.device.push_back(DeviceId("builtin:epsilon"));
    }
    {
        auto t = c.relate.table();
        t.push_back(c.outflows.card);
        ext.relate = FinMap(ext.inflows, ext.outflows, std::move(t));
    }
    REQUIRE(validate(ext).ok());

    auto ext_ptr = std::make_shared<const Computon>(std::move(ext));
    auto embed = mk_morphism(
        comp.composite.computon, ext_ptr,
        FinMap(c.units, ext_ptr->units, FinMap::identity(c.units).table()),
        FinMap(c.ports, ext_ptr->ports, FinMap::identity(c.ports).table()),
        FinMap(c.inflows, ext_ptr->inflows, FinMap::identity(c.inflows).table()),
        FinMap(c.outflows, ext_ptr->outflows, FinMap::identity(c.outflows).table()));
    CHECK_FALSE(embed.ok());
    CHECK(embed.error().find("boundary") != std::string::npos);
}

TEST_CASE("monomorphism checks") {
    auto mul = fx::mul_primitive();
    CHECK(is_monomorphism(identity_morphism(mul)));

    // A port-collapsing endomap of a two-port trivial computon.
    auto t = std::make_shared<const Computon>(mk_trivial({"a", "b"}, {0, 0}));
    auto collapse = mk_morphism(t, t, FinMap::empty(t->units),
                                FinMap(t->ports, t->ports, {0, 0}), FinMap::empty(t->inflows),
                                FinMap::empty(t->outflows));
    REQUIRE(collapse.ok());
    CHECK_FALSE(is_monomorphism(collapse.value()));
}

TEST_CASE("markers demand the exact interface image") {
    auto succ = fx::succ_primitive();
    auto apex = std::make_shared<const Computon>(mk_trivial({"m0", "m1"}, {0, 1}));

    auto in = mk_in_marker(apex, succ, FinMap(apex->ports, succ->ports, {0, 1}));
    CHECK(in.ok());
    CHECK(in.value().kind == Marker::Kind::in);

    // The same shape onto the outports fails as in-marker, passes as
    // out-marker (the colours line up).
    auto wrong = mk_in_marker(apex, succ, FinMap(apex->ports, succ->ports, {2, 3}));
    CHECK_FALSE(wrong.ok());
    auto out = mk_out_marker(apex, succ, FinMap(apex->ports, succ->ports, {2, 3}));
    CHECK(out.ok());

    // Covering only one of two inports is not a marker.
    auto small_apex = std::make_shared<const Computon>(mk_trivial({"m0"}, {0}));
    auto partial = mk_in_marker(small_apex, succ, FinMap(small_apex->ports, succ->ports, {0}));
    CHECK_FALSE(partial.ok());

    check_interface_preservation(in.value().mono);
    check_interface_preservation(out.value().mono);
}

TEST_CASE("markers of a fixed computon differ by a source port bijection") {
    auto succ = fx::succ_primitive();
    auto apex1 = std::make_shared<const Computon>(mk_trivial({"m0", "m1"}, {0, 1}));
    auto apex2 = std::make_shared<const Computon>(mk_trivial({"w0", "w1"}, {1, 0}));
    auto a = mk_in_marker(apex1, succ, FinMap(apex1->ports, succ->ports, {0, 1}));
    auto b = mk_in_marker(apex2, succ, FinMap(apex2->ports, succ->ports, {1, 0}));
    REQUIRE(a.ok());
    REQUIRE(b.ok());

    // Search the port bijections of the trivial sources for one commuting
    // with both markers.
    bool found = false;
    for (const auto& perm :
         std::vector<std::vector<Nat>>{{0, 1}, {1, 0}}) {
        bool commutes = true;
        for (Nat p = 0; p < 2; ++p)
            if (b.value().mono.port_map(perm[p]) != a.value().mono.port_map(p))
                commutes = false;
        if (commutes && apex1->colour(0) == apex2->colour(perm[0]) &&
            apex1->colour(1) == apex2->colour(perm[1]))
            found = true;
    }
    CHECK(found);
}

TEST_CASE("composition agrees componentwise, preserves validity and monicity") {
    auto mul = fx::mul_primitive();
    auto add = fx::add_primitive();
    Span s = fx::mul_add_span(mul, add);
    auto po = pushout(s);
    REQUIRE(po.ok());

    Morphism through = compose(s.left, po.value().coleg_left);
    auto revalidated = mk_morphism(through.source, through.target, through.unit_map,
                                   through.port_map, through.inflow_map, through.outflow_map);
    CHECK(revalidated.ok());
    CHECK(is_monomorphism(through));

    // Pushout commutativity: both composite legs agree.
    Morphism other = compose(s.right, po.value().coleg_right);
    CHECK(through.port_map.table() == other.port_map.table());

    Morphism id = identity_morphism(s.left.source);
    Morphism left_id = compose(id, s.left);
    CHECK(left_id.port_map == s.left.port_map);

    CHECK_THROWS_AS(compose(po.value().coleg_left, s.left), std::domain_error);
}

TEST_CASE("interface preservation holds for generated morphisms") {
    gen::Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto l = gen::random_primitive(rng);
        auto r = gen::random_primitive(rng);
        Span s = gen::random_seq_span(rng, l, r);
        check_interface_preservation(s.left);
        check_interface_preservation(s.right);
        auto po = pushout(s);
        REQUIRE(po.ok());
        check_interface_preservation(po.value().coleg_left);
        check_interface_preservation(po.value().coleg_right);
    }
}

TEST_CASE("single-entry perturbations of a valid morphism are rejected unless the squares survive") {
    gen::Rng rng(37);
    int rejected = 0, accepted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto l = gen::random_primitive(rng);
        auto r = gen::random_primitive(rng);
        Span s = gen::random_seq_span(rng, l, r);
        auto po = pushout(s);
        REQUIRE(po.ok());
        const Morphism& m = po.value().coleg_left;

        // Flip one table entry of one component and revalidate.
        auto flip = [&](FinMap f) {
            if (f.dom().card == 0 || f.cod().card < 2) return f;
            auto t = f.table();
            Nat at = rng() % t.size();
            t[at] = (t[at] + 1 + rng() % (f.cod().card - 1)) % f.cod().card;
            return FinMap(f.dom(), f.cod(), std::move(t));
        };
        FinMap mu = m.unit_map, mp = m.port_map, mi = m.inflow_map, mo = m.outflow_map;
        switch (rng() % 4) {
            case 0: mu = flip(mu); break;
            case 1: mp = flip(mp); break;
            case 2: mi = flip(mi); break;
            default: mo = flip(mo); break;
        }
        bool unchanged = mu == m.unit_map && mp == m.port_map && mi == m.inflow_map &&
                         mo == m.outflow_map;
        auto res = mk_morphism(m.source, m.target, mu, mp, mi, mo);
        if (unchanged) {
            CHECK(res.ok());
            continue;
        }
        // Re-check the squares directly; acceptance must match exactly.
        bool squares = true;
        const Computon& a = *m.source;
        const Computon& b = *m.target;
        for (Nat i = 0; i < a.inflows.card && squares; ++i)
            squares = b.in_unit(mi(i)) == mu(a.in_unit(i)) && b.src(mi(i)) == mp(a.src(i)) &&
                      b.relate(mi(i)) == mo(a.relate(i));
        for (Nat o = 0; o < a.outflows.card && squares; ++o)
            squares = b.out_unit(mo(o)) == mu(a.out_unit(o)) && b.tgt(mo(o)) == mp(a.tgt(o)) &&
                      b.device[mo(o)] == a.device[o];
        for (Nat p = 0; p < a.ports.card && squares; ++p)
            squares = b.colour(mp(p)) == a.colour(p);
        if (!squares) {
            CHECK_FALSE(res.ok());
            ++rejected;
        } else if (res.ok()) {
            ++accepted;
        }
    }
    CHECK(rejected > 0);  // the perturbation actually exercised rejections
}
