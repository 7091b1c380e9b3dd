#pragma once

#include "computon/morphism.hpp"

namespace computon {

struct Span {
    Morphism left;   // apex -> left operand
    Morphism right;  // apex -> right operand

    const ComputonPtr& apex() const { return left.source; }
};

struct Pushability {
    bool pushable = false;
    std::string violation;  // the failed clause when not pushable
};

// A span admits a pushout exactly when gluing touches only interface ports
// of both operands, the apex colour palette embeds in both, and the apex
// device set is shared.
Pushability is_pushable(const Span& s);

struct ColimitResult {
    ComputonPtr object;
    Morphism coleg_left;
    Morphism coleg_right;
};

// Side-by-side composite: componentwise disjoint unions, colour palette by
// union, structure maps transported sourcewise. Right-operand labels are
// suffixed on collision.
ColimitResult coproduct(ComputonPtr a, ComputonPtr b);

// Componentwise quotient of the span per the equivalence-closure kernel;
// merged ports keep the left operand's label. Fails exactly when the span
// is not pushable, naming the clause.
Result<ColimitResult> pushout(const Span& s);

// The mediating morphism h with h . coleg_left = f and h . coleg_right = g.
Result<Morphism> unique_from_coproduct(const ColimitResult& copr, const Morphism& f,
                                       const Morphism& g);

}  // namespace computon
