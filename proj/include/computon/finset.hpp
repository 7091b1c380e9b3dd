#pragma once

#include <cstddef>
#include <vector>

namespace computon {

using Nat = std::size_t;

// A finite set {0, ..., card-1}. Cardinality alone identifies the
// isomorphism class, so no element storage is needed.
struct FinSet {
    Nat card = 0;

    friend bool operator==(const FinSet&, const FinSet&) = default;
};

// A total function between finite sets, tabulated. Every table entry is
// strictly below cod.card.
class FinMap {
public:
    FinMap() = default;
    FinMap(FinSet dom, FinSet cod, std::vector<Nat> table);

    static FinMap identity(FinSet s);
    static FinMap constant(FinSet dom, FinSet cod, Nat value);
    // The empty map into an arbitrary codomain.
    static FinMap empty(FinSet cod);

    Nat operator()(Nat x) const;

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }
    const std::vector<Nat>& table() const { return table_; }

    // Composition g . f with f applied first: f.then(g).
    FinMap then(const FinMap& g) const;

    friend bool operator==(const FinMap&, const FinMap&) = default;

private:
    FinSet dom_;
    FinSet cod_;
    std::vector<Nat> table_;
};

// Sorted, duplicate-free list of values attained by f.
std::vector<Nat> image(const FinMap& f);

// Ascending list of all x with f(x) = y. Throws std::domain_error if y is
// not in the codomain.
std::vector<Nat> fiber(const FinMap& f, Nat y);

bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);

// Y + Z tagged as {0..|Y|-1} then {|Y|..|Y|+|Z|-1}.
struct DisjointUnion {
    FinSet left;
    FinSet right;
    Nat size = 0;
    FinMap inj_left;
    FinMap inj_right;
};

DisjointUnion disjoint_union(FinSet a, FinSet b);

// Union of initial segments: size max(|Y|,|Z|), both injections identity
// embeddings.
struct UnionSet {
    FinSet left;
    FinSet right;
    Nat size = 0;
    FinMap inj_left;
    FinMap inj_right;
};

UnionSet union_sets(FinSet a, FinSet b);

// The cocone of a pushout of finite sets: |Y + Z| / ~ together with the two
// induced maps.
struct PushoutFns {
    Nat size = 0;
    FinMap into_left;   // i_Y : Y -> quotient
    FinMap into_right;  // i_Z : Z -> quotient
};

// Pushout of the span Y <-g- X -h-> Z: the quotient of Y + Z by the
// equivalence closure of { g(x) ~ h(x) }. Classes are numbered by first
// occurrence scanning Y ascending, then remaining Z elements ascending.
// Throws std::domain_error when the legs disagree on the apex.
PushoutFns pushout_fns(const FinMap& g, const FinMap& h);

// Literal transcription of the incremental construction that builds the
// cocone maps by walking Y-fibers. Kept for conformance testing only: it
// diverges from pushout_fns on spans where one Y-fiber bridges two
// previously distinct Z-classes.
PushoutFns reference_algorithm1(const FinMap& g, const FinMap& h);

// Transport an element of A1+A2 along componentwise maps g1, g2 into B1+B2.
Nat find_eq(const DisjointUnion& a, const DisjointUnion& b, Nat elem,
            const FinMap& g1, const FinMap& g2);

}  // namespace computon
