#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "computon/colimit.hpp"

namespace computon {

// Syntactic record of which operators built a composite. Leaves carry the
// source computon's name and classification; inner nodes are binary.
class ParsingTree {
public:
    enum class Op { seq_total, seq_partial, async, branch_open, branch_closed };
    enum class LeafClass { trivial, primitive, unknown };

    using Ptr = std::shared_ptr<const ParsingTree>;

    static Ptr leaf(std::string name, LeafClass cls);
    static Ptr node(Op op, Ptr left, Ptr right);

    bool is_leaf() const { return !left_; }
    const std::string& name() const { return name_; }
    LeafClass leaf_class() const { return leaf_class_; }
    Op op() const { return op_; }
    const Ptr& left() const { return left_; }
    const Ptr& right() const { return right_; }

    Nat height() const;
    void leaves(std::vector<const ParsingTree*>& out) const;

private:
    ParsingTree() = default;
    std::string name_;
    LeafClass leaf_class_ = LeafClass::unknown;
    Op op_ = Op::async;
    Ptr left_;
    Ptr right_;
};

const char* to_string(ParsingTree::Op op);
const char* to_string(ParsingTree::LeafClass cls);

struct Composite {
    ComputonPtr computon;
    ParsingTree::Ptr tree;
};

// Wrap a source computon as a height-0 tree, classifying it on the spot.
Composite leaf_composite(ComputonPtr c, std::string name);

// Sound = every leaf is trivial or primitive; the only class the runtime
// executes.
bool is_sound(const Composite& c);

enum class SeqKind { total, partial };

struct SequentiableCheck {
    bool sequentiable = false;
    std::string violation;
};

// Trivial apex, monic legs, left leg into outports, right leg into inports,
// shared colours and devices.
SequentiableCheck is_sequentiable(const Span& s);

struct SeqResult {
    Composite composite;
    SeqKind kind;
    ColimitResult colimit;
};

// Pipeline composition along a sequentiable span; total exactly when the
// span exhausts the left outports and the right inports.
Result<SeqResult> seq(const Composite& left, const Composite& right, const Span& s);

// Convenience span builders. pairs are (left port, right port) index pairs;
// the generated trivial apex takes its colours from them.
Result<Span> mk_seq_span(ComputonPtr left, ComputonPtr right,
                         const std::vector<std::pair<Nat, Nat>>& pairs);
// The always-available 1-control-port span: smallest control outport of the
// left against smallest control inport of the right.
Span mk_control_span(ComputonPtr left, ComputonPtr right);

struct AsyncResult {
    Composite composite;
    ColimitResult colimit;
};

// Side-by-side composition; always defined.
AsyncResult p_async(const Composite& left, const Composite& right);

struct GlueSpan {
    Composite glue;  // pure-control primitive joining the async's control outports
    Span span;       // sequentiable span feeding the async's control outports into it
};

// Builds the join stage for sync: one glue inport per control outport of
// `async_obj`, a single echo outflow, and the span identifying them.
GlueSpan mk_glue_for(ComputonPtr async_obj);

// Two-stage construction: async both operands, then sequence the result
// into a glue over all its control outports.
Result<SeqResult> sync(const Composite& left, const Composite& right);

struct BranchResult {
    Composite composite;
    ColimitResult colimit;
};

// Pushout of a span of in-markers sharing one apex; operand outports stay
// distinct.
Result<BranchResult> bra_open(const Composite& left, const Composite& right,
                              const Marker& marker_left, const Marker& marker_right);

// Colimit of a b-diagram: in-markers over one apex, out-markers over
// another, both operands connected (hence with units).
Result<BranchResult> bra_closed(const Composite& left, const Composite& right,
                                const Marker& in_left, const Marker& in_right,
                                const Marker& out_left, const Marker& out_right);

}  // namespace computon
