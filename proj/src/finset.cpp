#include "computon/finset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace computon {

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<Nat> table)
    : dom_(dom), cod_(cod), table_(std::move(table)) {
    if (table_.size() != dom_.card)
        throw std::invalid_argument("FinMap: table length " +
                                    std::to_string(table_.size()) +
                                    " != domain cardinality " +
                                    std::to_string(dom_.card));
    for (Nat x = 0; x < table_.size(); ++x)
        if (table_[x] >= cod_.card)
            throw std::invalid_argument("FinMap: entry " + std::to_string(table_[x]) +
                                        " at " + std::to_string(x) +
                                        " outside codomain of size " +
                                        std::to_string(cod_.card));
}

FinMap FinMap::identity(FinSet s) {
    std::vector<Nat> t(s.card);
    std::iota(t.begin(), t.end(), Nat{0});
    return FinMap(s, s, std::move(t));
}

FinMap FinMap::constant(FinSet dom, FinSet cod, Nat value) {
    return FinMap(dom, cod, std::vector<Nat>(dom.card, value));
}

FinMap FinMap::empty(FinSet cod) {
    return FinMap(FinSet{0}, cod, {});
}

Nat FinMap::operator()(Nat x) const {
    if (x >= dom_.card)
        throw std::domain_error("FinMap: argument " + std::to_string(x) +
                                " outside domain of size " + std::to_string(dom_.card));
    return table_[x];
}

FinMap FinMap::then(const FinMap& g) const {
    if (cod_ != g.dom())
        throw std::domain_error("FinMap::then: codomain/domain mismatch");
    std::vector<Nat> t(table_.size());
    for (Nat x = 0; x < table_.size(); ++x) t[x] = g.table()[table_[x]];
    return FinMap(dom_, g.cod(), std::move(t));
}

std::vector<Nat> image(const FinMap& f) {
    std::vector<Nat> out = f.table();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Nat> fiber(const FinMap& f, Nat y) {
    if (y >= f.cod().card)
        throw std::domain_error("fiber: " + std::to_string(y) +
                                " outside codomain of size " +
                                std::to_string(f.cod().card));
    std::vector<Nat> out;
    for (Nat x = 0; x < f.dom().card; ++x)
        if (f.table()[x] == y) out.push_back(x);
    return out;
}

bool is_injective(const FinMap& f) {
    std::vector<bool> seen(f.cod().card, false);
    for (Nat v : f.table()) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool is_surjective(const FinMap& f) {
    std::vector<bool> seen(f.cod().card, false);
    Nat hit = 0;
    for (Nat v : f.table())
        if (!seen[v]) {
            seen[v] = true;
            ++hit;
        }
    return hit == f.cod().card;
}

DisjointUnion disjoint_union(FinSet a, FinSet b) {
    DisjointUnion du;
    du.left = a;
    du.right = b;
    du.size = a.card + b.card;
    FinSet carrier{du.size};
    std::vector<Nat> tl(a.card), tr(b.card);
    std::iota(tl.begin(), tl.end(), Nat{0});
    std::iota(tr.begin(), tr.end(), a.card);
    du.inj_left = FinMap(a, carrier, std::move(tl));
    du.inj_right = FinMap(b, carrier, std::move(tr));
    return du;
}

UnionSet union_sets(FinSet a, FinSet b) {
    UnionSet u;
    u.left = a;
    u.right = b;
    u.size = std::max(a.card, b.card);
    FinSet carrier{u.size};
    std::vector<Nat> tl(a.card), tr(b.card);
    std::iota(tl.begin(), tl.end(), Nat{0});
    std::iota(tr.begin(), tr.end(), Nat{0});
    u.inj_left = FinMap(a, carrier, std::move(tl));
    u.inj_right = FinMap(b, carrier, std::move(tr));
    return u;
}

namespace {

// Minimal union-find over 0..n-1.
class UnionFind {
public:
    explicit UnionFind(Nat n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), Nat{0});
    }
    Nat find(Nat x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(Nat a, Nat b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[b] = a;
    }

private:
    std::vector<Nat> parent_;
};

constexpr Nat kUnset = static_cast<Nat>(-1);

}  // namespace

PushoutFns pushout_fns(const FinMap& g, const FinMap& h) {
    if (g.dom() != h.dom())
        throw std::domain_error("pushout_fns: span legs disagree on the apex");
    const Nat ny = g.cod().card;
    const Nat nz = h.cod().card;

    UnionFind uf(ny + nz);
    for (Nat x = 0; x < g.dom().card; ++x) uf.unite(g(x), ny + h(x));

    // Canonical numbering: first occurrence scanning Y, then remaining Z.
    std::vector<Nat> class_of(ny + nz, kUnset);
    Nat next = 0;
    std::vector<Nat> ty(ny), tz(nz);
    for (Nat y = 0; y < ny; ++y) {
        Nat root = uf.find(y);
        if (class_of[root] == kUnset) class_of[root] = next++;
        ty[y] = class_of[root];
    }
    for (Nat z = 0; z < nz; ++z) {
        Nat root = uf.find(ny + z);
        if (class_of[root] == kUnset) class_of[root] = next++;
        tz[z] = class_of[root];
    }

    PushoutFns out;
    out.size = next;
    FinSet carrier{next};
    out.into_left = FinMap(g.cod(), carrier, std::move(ty));
    out.into_right = FinMap(h.cod(), carrier, std::move(tz));
    return out;
}

PushoutFns reference_algorithm1(const FinMap& g, const FinMap& h) {
    if (g.dom() != h.dom())
        throw std::domain_error("reference_algorithm1: span legs disagree on the apex");
    const Nat ny = g.cod().card;
    const Nat nz = h.cod().card;

    std::vector<Nat> iy(ny, kUnset), iz(nz, kUnset);
    Nat current = 0;
    for (Nat y = 0; y < ny; ++y) {
        Nat eq = current;
        std::vector<Nat> fib = fiber(g, y);
        for (Nat x : fib)
            if (iz[h(x)] != kUnset) {
                eq = iz[h(x)];
                break;
            }
        for (Nat x : fib) iz[h(x)] = eq;
        iy[y] = eq;
        if (eq == current) ++current;
    }
    for (Nat z = 0; z < nz; ++z)
        if (iz[z] == kUnset) iz[z] = current++;

    PushoutFns out;
    out.size = current;
    FinSet carrier{current};
    out.into_left = FinMap(g.cod(), carrier, std::move(iy));
    out.into_right = FinMap(h.cod(), carrier, std::move(iz));
    return out;
}

Nat find_eq(const DisjointUnion& a, const DisjointUnion& b, Nat elem,
            const FinMap& g1, const FinMap& g2) {
    if (elem >= a.size)
        throw std::domain_error("find_eq: element outside the disjoint union");
    if (elem < a.left.card) return b.inj_left(g1(elem));
    return b.inj_right(g2(elem - a.left.card));
}

}  // namespace computon
