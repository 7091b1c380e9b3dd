#include "computon/operators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace computon {

ParsingTree::Ptr ParsingTree::leaf(std::string name, LeafClass cls) {
    auto t = std::shared_ptr<ParsingTree>(new ParsingTree());
    t->name_ = std::move(name);
    t->leaf_class_ = cls;
    return t;
}

ParsingTree::Ptr ParsingTree::node(Op op, Ptr left, Ptr right) {
    if (!left || !right) throw std::invalid_argument("parsing tree nodes are binary");
    auto t = std::shared_ptr<ParsingTree>(new ParsingTree());
    t->op_ = op;
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
}

Nat ParsingTree::height() const {
    if (is_leaf()) return 0;
    return std::max(left_->height(), right_->height()) + 1;
}

void ParsingTree::leaves(std::vector<const ParsingTree*>& out) const {
    if (is_leaf()) {
        out.push_back(this);
        return;
    }
    left_->leaves(out);
    right_->leaves(out);
}

const char* to_string(ParsingTree::Op op) {
    switch (op) {
        case ParsingTree::Op::seq_total: return "SEQ_TOTAL";
        case ParsingTree::Op::seq_partial: return "SEQ_PARTIAL";
        case ParsingTree::Op::async: return "ASYNC";
        case ParsingTree::Op::branch_open: return "BRA_OPEN";
        case ParsingTree::Op::branch_closed: return "BRA_CLOSED";
    }
    return "?";
}

const char* to_string(ParsingTree::LeafClass cls) {
    switch (cls) {
        case ParsingTree::LeafClass::trivial: return "trivial";
        case ParsingTree::LeafClass::primitive: return "primitive";
        case ParsingTree::LeafClass::unknown: return "unknown";
    }
    return "?";
}

Composite leaf_composite(ComputonPtr c, std::string name) {
    ParsingTree::LeafClass cls = ParsingTree::LeafClass::unknown;
    if (validate(*c).ok()) {
        if (is_trivial(*c))
            cls = ParsingTree::LeafClass::trivial;
        else if (is_primitive(*c))
            cls = ParsingTree::LeafClass::primitive;
    }
    return Composite{std::move(c), ParsingTree::leaf(std::move(name), cls)};
}

bool is_sound(const Composite& c) {
    if (!c.tree) return false;
    std::vector<const ParsingTree*> ls;
    c.tree->leaves(ls);
    for (const ParsingTree* l : ls)
        if (l->leaf_class() == ParsingTree::LeafClass::unknown) return false;
    return true;
}

SequentiableCheck is_sequentiable(const Span& s) {
    if (!s.left.source || !s.right.source || !s.left.target || !s.right.target)
        return {false, "span has a missing computon"};
    if (*s.left.source != *s.right.source) return {false, "legs do not share the apex"};
    const Computon& apex = *s.apex();
    if (!is_trivial(apex)) return {false, "apex is not a trivial computon"};
    if (!is_monomorphism(s.left) || !is_monomorphism(s.right))
        return {false, "legs must be monomorphisms"};

    std::vector<Nat> l_out = outports(*s.left.target);
    for (Nat p = 0; p < apex.ports.card; ++p)
        if (!std::binary_search(l_out.begin(), l_out.end(), s.left.port_map(p)))
            return {false, "left leg hits a non-outport"};
    std::vector<Nat> r_in = inports(*s.right.target);
    for (Nat p = 0; p < apex.ports.card; ++p)
        if (!std::binary_search(r_in.begin(), r_in.end(), s.right.port_map(p)))
            return {false, "right leg hits a non-inport"};

    if (apex.colours.card > std::min(s.left.target->colours.card, s.right.target->colours.card))
        return {false, "apex colours do not embed in both operands"};
    // Trivial apexes carry no devices, so the device clause cannot fail; it
    // is rechecked by is_pushable anyway.
    return {true, {}};
}

namespace {

bool image_equals(const FinMap& m, const std::vector<Nat>& want) {
    return image(m) == want;
}

}  // namespace

Result<SeqResult> seq(const Composite& left, const Composite& right, const Span& s) {
    using R = Result<SeqResult>;
    auto chk = is_sequentiable(s);
    if (!chk.sequentiable) return R::failure("span is not sequentiable: " + chk.violation);
    if (!left.computon || *s.left.target != *left.computon)
        return R::failure("span left operand differs from the left composite");
    if (!right.computon || *s.right.target != *right.computon)
        return R::failure("span right operand differs from the right composite");

    auto po = pushout(s);
    if (!po) return R::failure(po.error());

    bool total = image_equals(s.left.port_map, outports(*left.computon)) &&
                 image_equals(s.right.port_map, inports(*right.computon));
    SeqKind kind = total ? SeqKind::total : SeqKind::partial;

    SeqResult out;
    out.colimit = std::move(po).value();
    out.kind = kind;
    out.composite.computon = out.colimit.object;
    out.composite.tree = ParsingTree::node(
        total ? ParsingTree::Op::seq_total : ParsingTree::Op::seq_partial, left.tree,
        right.tree);
    return R::success(std::move(out));
}

Result<Span> mk_seq_span(ComputonPtr left, ComputonPtr right,
                         const std::vector<std::pair<Nat, Nat>>& pairs) {
    using R = Result<Span>;
    std::vector<std::string> labels;
    std::vector<Nat> colours;
    std::vector<Nat> lmap, rmap;
    for (const auto& [lp, rp] : pairs) {
        if (lp >= left->ports.card || rp >= right->ports.card)
            return R::failure("span pair references a port out of range");
        if (left->colour(lp) != right->colour(rp))
            return R::failure("span pairs ports of different colours: '" +
                              left->port_labels[lp] + "' vs '" + right->port_labels[rp] + "'");
        labels.push_back("x" + std::to_string(labels.size()));
        colours.push_back(left->colour(lp));
        lmap.push_back(lp);
        rmap.push_back(rp);
    }
    Computon apex;
    try {
        apex = mk_trivial(std::move(labels), std::move(colours));
    } catch (const std::invalid_argument& e) {
        return R::failure(std::string("span apex: ") + e.what());
    }
    auto apex_ptr = std::make_shared<const Computon>(std::move(apex));
    auto mk_leg = [&](const ComputonPtr& t, std::vector<Nat> table) {
        return mk_morphism(apex_ptr, t, FinMap::empty(t->units),
                           FinMap(apex_ptr->ports, t->ports, std::move(table)),
                           FinMap::empty(t->inflows), FinMap::empty(t->outflows));
    };
    auto lleg = mk_leg(left, std::move(lmap));
    if (!lleg) return R::failure("left leg: " + lleg.error());
    auto rleg = mk_leg(right, std::move(rmap));
    if (!rleg) return R::failure("right leg: " + rleg.error());
    return R::success(Span{std::move(lleg).value(), std::move(rleg).value()});
}

Span mk_control_span(ComputonPtr left, ComputonPtr right) {
    Nat lp = static_cast<Nat>(-1), rp = static_cast<Nat>(-1);
    for (Nat p : outports(*left))
        if (left->colour(p) == 0) {
            lp = p;
            break;
        }
    for (Nat p : inports(*right))
        if (right->colour(p) == 0) {
            rp = p;
            break;
        }
    if (lp == static_cast<Nat>(-1) || rp == static_cast<Nat>(-1))
        throw std::invalid_argument("mk_control_span: operands lack control interface ports");
    auto s = mk_seq_span(std::move(left), std::move(right), {{lp, rp}});
    if (!s) throw std::logic_error("internal: control span rejected: " + s.error());
    return std::move(s).value();
}

AsyncResult p_async(const Composite& left, const Composite& right) {
    AsyncResult out;
    out.colimit = coproduct(left.computon, right.computon);
    out.composite.computon = out.colimit.object;
    out.composite.tree = ParsingTree::node(ParsingTree::Op::async, left.tree, right.tree);
    return out;
}

GlueSpan mk_glue_for(ComputonPtr async_obj) {
    const Computon& a = *async_obj;
    std::vector<Nat> ctrl_out;
    for (Nat p : outports(a))
        if (a.colour(p) == 0) ctrl_out.push_back(p);
    if (ctrl_out.empty())
        throw std::invalid_argument("mk_glue_for: operand has no control outport");
    const Nat k = ctrl_out.size();

    PrimitiveSpec spec;
    spec.ports = k + 1;
    spec.colours = 1;
    {
        std::vector<Nat> s(k);
        for (Nat j = 0; j < k; ++j) s[j] = j;
        spec.src = FinMap(FinSet{k}, FinSet{k + 1}, std::move(s));
    }
    spec.tgt = FinMap(FinSet{1}, FinSet{k + 1}, {k});
    spec.colour = FinMap::constant(FinSet{k + 1}, FinSet{1}, 0);
    spec.relate = FinMap::constant(FinSet{k}, FinSet{1}, 0);
    spec.device = {DeviceId("builtin:epsilon")};
    for (Nat j = 0; j < k; ++j) spec.port_labels.push_back("join" + std::to_string(j));
    spec.port_labels.push_back("synced");
    auto glue = std::make_shared<const Computon>(mk_primitive(spec));

    std::vector<std::string> apex_labels;
    std::vector<Nat> apex_colours(k, 0);
    for (Nat j = 0; j < k; ++j) apex_labels.push_back("s" + std::to_string(j));
    auto apex = std::make_shared<const Computon>(
        mk_trivial(std::move(apex_labels), std::move(apex_colours)));

    auto mk_leg = [&](const ComputonPtr& t, std::vector<Nat> table) {
        auto m = mk_morphism(apex, t, FinMap::empty(t->units),
                             FinMap(apex->ports, t->ports, std::move(table)),
                             FinMap::empty(t->inflows), FinMap::empty(t->outflows));
        if (!m) throw std::logic_error("internal: glue span leg rejected: " + m.error());
        return std::move(m).value();
    };
    std::vector<Nat> glue_in(k);
    for (Nat j = 0; j < k; ++j) glue_in[j] = j;

    GlueSpan out;
    out.span = Span{mk_leg(async_obj, std::move(ctrl_out)), mk_leg(glue, std::move(glue_in))};
    out.glue = leaf_composite(std::move(glue), "glue");
    return out;
}

Result<SeqResult> sync(const Composite& left, const Composite& right) {
    AsyncResult par = p_async(left, right);
    GlueSpan gs = mk_glue_for(par.composite.computon);
    return seq(par.composite, gs.glue, gs.span);
}

Result<BranchResult> bra_open(const Composite& left, const Composite& right,
                              const Marker& marker_left, const Marker& marker_right) {
    using R = Result<BranchResult>;
    if (marker_left.kind != Marker::Kind::in || marker_right.kind != Marker::Kind::in)
        return R::failure("open branching takes two in-markers");
    if (!marker_left.mono.source || !marker_right.mono.source ||
        *marker_left.mono.source != *marker_right.mono.source)
        return R::failure("markers do not share the apex");
    if (!left.computon || *marker_left.mono.target != *left.computon)
        return R::failure("left marker does not target the left operand");
    if (!right.computon || *marker_right.mono.target != *right.computon)
        return R::failure("right marker does not target the right operand");

    auto po = pushout(Span{marker_left.mono, marker_right.mono});
    if (!po)
        throw std::logic_error("internal: marker span not pushable: " + po.error());

    BranchResult out;
    out.colimit = std::move(po).value();
    out.composite.computon = out.colimit.object;
    out.composite.tree =
        ParsingTree::node(ParsingTree::Op::branch_open, left.tree, right.tree);
    return R::success(std::move(out));
}

Result<BranchResult> bra_closed(const Composite& left, const Composite& right,
                                const Marker& in_left, const Marker& in_right,
                                const Marker& out_left, const Marker& out_right) {
    using R = Result<BranchResult>;
    if (in_left.kind != Marker::Kind::in || in_right.kind != Marker::Kind::in)
        return R::failure("first marker pair must be in-markers");
    if (out_left.kind != Marker::Kind::out || out_right.kind != Marker::Kind::out)
        return R::failure("second marker pair must be out-markers");
    if (!in_left.mono.source || !in_right.mono.source ||
        *in_left.mono.source != *in_right.mono.source)
        return R::failure("in-markers do not share the apex");
    if (!out_left.mono.source || !out_right.mono.source ||
        *out_left.mono.source != *out_right.mono.source)
        return R::failure("out-markers do not share the apex");
    if (!left.computon || *in_left.mono.target != *left.computon ||
        *out_left.mono.target != *left.computon)
        return R::failure("left markers do not target the left operand");
    if (!right.computon || *in_right.mono.target != *right.computon ||
        *out_right.mono.target != *right.computon)
        return R::failure("right markers do not target the right operand");
    for (const Composite* op : {&left, &right})
        if (!is_connected(*op->computon) || op->computon->units.card == 0)
            return R::failure("operand not connected");

    ColimitResult apex_copr = coproduct(in_left.mono.source, out_left.mono.source);
    auto f = unique_from_coproduct(apex_copr, in_left.mono, out_left.mono);
    if (!f) return R::failure("left colimit leg: " + f.error());
    auto g = unique_from_coproduct(apex_copr, in_right.mono, out_right.mono);
    if (!g) return R::failure("right colimit leg: " + g.error());

    auto po = pushout(Span{std::move(f).value(), std::move(g).value()});
    if (!po)
        throw std::logic_error("internal: b-diagram span not pushable: " + po.error());

    BranchResult out;
    out.colimit = std::move(po).value();
    out.composite.computon = out.colimit.object;
    out.composite.tree =
        ParsingTree::node(ParsingTree::Op::branch_closed, left.tree, right.tree);
    return R::success(std::move(out));
}

}  // namespace computon
