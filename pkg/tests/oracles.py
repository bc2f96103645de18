"""Slow, literal re-implementations used as test oracles.

Everything here works on frozensets of labels and plain Python loops; nothing
is shared with the library except the input relation's neighborhoods.
"""

from itertools import chain, combinations


def powerset(u):
    u = list(u)
    return [frozenset(c) for c in chain.from_iterable(combinations(u, k) for k in range(len(u) + 1))]


def neighborhoods(relation):
    u = relation.universe
    return {u.labels[i]: frozenset(u.members(row)) for i, row in enumerate(relation.rows)}


def inverse(nb):
    return {x: frozenset(y for y in nb if x in nb[y]) for x in nb}


def lower(nb, xs):
    return frozenset(x for x in nb if nb[x] <= xs)


def upper(nb, xs):
    return frozenset(x for x in nb if nb[x] & xs)


def rough_sets(nb):
    return {(lower(nb, x), upper(nb, x)) for x in powerset(nb)}


def pair_leq(p, q):
    return p[0] <= q[0] and p[1] <= q[1]


def normal_cuts(elems):
    """All A with A = lower-bounds(upper-bounds(A)), by brute force over principal ideals."""
    def ub(a):
        return frozenset(q for q in elems if all(pair_leq(p, q) for p in a))

    def lb(b):
        return frozenset(p for p in elems if all(pair_leq(p, q) for q in b))

    cuts = {frozenset(elems)}
    principal = [frozenset(q for q in elems if pair_leq(q, p)) for p in elems]
    grew = True
    while grew:
        new = {c & d for c in cuts for d in principal} | cuts
        grew = new != cuts
        cuts = new
    return {c for c in cuts if lb(ub(c)) == c}


def join(elems, leq, a, b):
    ups = [c for c in elems if leq(a, c) and leq(b, c)]
    least = [c for c in ups if all(leq(c, d) for d in ups)]
    return least[0] if len(least) == 1 else None


def meet(elems, leq, a, b):
    downs = [c for c in elems if leq(c, a) and leq(c, b)]
    great = [c for c in downs if all(leq(d, c) for d in downs)]
    return great[0] if len(great) == 1 else None


def equivalence_closure_classes(nb):
    classes = {x: {x} for x in nb}
    changed = True
    while changed:
        changed = False
        for x in nb:
            for y in nb[x]:
                if classes[x] is not classes[y]:
                    merged = classes[x] | classes[y]
                    for z in merged:
                        classes[z] = merged
                    changed = True
    return {frozenset(c) for c in classes.values()}


class NaiveLattice:
    """A lattice of pairs with operations found by searching bounds."""

    def __init__(self, elems, full):
        self.elems = sorted(elems, key=lambda p: (len(p[1]), sorted(p[1]), sorted(p[0])))
        self.full = full
        self.bottom = next(p for p in self.elems if all(pair_leq(p, q) for q in self.elems))
        self.top = next(p for p in self.elems if all(pair_leq(q, p) for q in self.elems))

    def join(self, a, b):
        return join(self.elems, pair_leq, a, b)

    def meet(self, a, b):
        return meet(self.elems, pair_leq, a, b)

    def inv(self, p):
        return (self.full - p[1], self.full - p[0])

    def complements(self, a):
        return [b for b in self.elems if self.meet(a, b) == self.bottom and self.join(a, b) == self.top]

    def is_central(self, a):
        if not self.complements(a):
            return False
        j, m = self.join, self.meet
        for y in self.elems:
            for z in self.elems:
                if j(j(m(a, y), m(y, z)), m(z, a)) != m(m(j(a, y), j(y, z)), j(z, a)):
                    return False
        return True

    def pseudocomplement(self, a):
        ann = [b for b in self.elems if self.meet(a, b) == self.bottom]
        top = [b for b in ann if all(pair_leq(c, b) for c in ann)]
        return top[0] if len(top) == 1 else None


def bz_axioms(lat: NaiveLattice, neg):
    """Literal BZ1..BZ8 verdicts for a dict-valued negation."""
    j, m, s, le = lat.join, lat.meet, lat.inv, pair_leq
    E = lat.elems
    return {
        "BZ1": all(m(a, neg[a]) == lat.bottom for a in E),
        "BZ2": all(le(a, neg[neg[a]]) for a in E),
        "BZ3": all(le(neg[b], neg[a]) for a in E for b in E if le(a, b)),
        "BZ4": all(s(neg[a]) == neg[neg[a]] for a in E),
        "BZ5": all(le(neg[a], s(a)) for a in E),
        "BZ6": all(neg[neg[neg[a]]] == neg[a] for a in E),
        "BZ7": all(m(neg[a], s(neg[a])) == lat.bottom and j(neg[a], s(neg[a])) == lat.top for a in E),
        "BZ8": all(le(neg[m(a, s(a))], j(neg[a], neg[s(a)])) for a in E),
    }


def neg_from_classes(lat: NaiveLattice, classes):
    """(A,B) ↦ (X,X) with X the union of classes inside the complement of B."""
    out = {}
    for a, b in lat.elems:
        x = frozenset().union(*[c for c in classes if c <= lat.full - b])
        out[(a, b)] = (x, x)
    return out
