"""Fix-point lattices of ideal-lattice endomorphisms, computed poset-side.

The dual map's graph is quotiented into a poset of classes; unioning the
classes of each quotient ideal gives back exactly the fixed ideals of the
base, so the whole fix-point lattice is read off without ever iterating the
endomorphism or materializing its lattice.

Two quotient constructions are implemented.  ``phi_components`` merges the
connected components of the undirected map graph and is the cheap path;
``coequalizer_general`` closes the base order together with both directions
of the map edges and condenses the strongly connected classes.  The general
construction is authoritative: it always yields a partial order, while the
component shortcut must be checked for antisymmetry and is differentially
tested against it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitgraph import UnionFind, bits, condensation_reach, dag_reach, tarjan_scc
from .duality import dual_map, hom_from_dual, lift_hom
from .errors import MaxStepsExceeded, NotAnIdealOfC, QuotientNotAntisymmetric, SizeBoundExceeded
from .lattice import LatticeHom, explicit_lattice_bound, ideal_lattice
from .poset import MonotoneMap, OrderIdeal, Poset, iter_ideal_masks


class QuotientPoset:
    """Partition of a poset into classes carrying an induced partial order.

    ``classes`` lists each class's member identifiers; ``class_poset`` is
    the order on class names (a class is named ``[x]`` after its least
    member).  The generating preorder is recoverable: x is below y in it
    exactly when class_leq([x], [y]).
    """

    __slots__ = ("base", "classes", "class_poset", "member_masks", "_class_idx", "_gen")

    def __init__(self, base, classes, class_poset, member_masks, class_idx):
        self.base = base
        self.classes = classes
        self.class_poset = class_poset
        self.member_masks = member_masks
        self._class_idx = class_idx
        self._gen = None

    def __len__(self):
        return len(self.classes)

    def class_name_of(self, x) -> str:
        return self.class_poset.elements[self._class_idx[self.base.index(x)]]

    def class_leq(self, c1, c2) -> bool:
        return self.class_poset.leq(c1, c2)

    def gen_preorder(self) -> tuple:
        """Rows of the generating preorder over base elements (audit view)."""
        if self._gen is None:
            class_rows = []
            for c in range(len(self.classes)):
                row = 0
                for c2 in bits(self.class_poset.up_masks[c]):
                    row |= self.member_masks[c2]
                class_rows.append(row)
            self._gen = tuple(class_rows[self._class_idx[i]] for i in range(len(self.base)))
        return self._gen

    def __eq__(self, other):
        if not isinstance(other, QuotientPoset):
            return NotImplemented
        return (
            self.base == other.base
            and self.classes == other.classes
            and self.class_poset == other.class_poset
        )

    __hash__ = None

    def __repr__(self):
        return f"QuotientPoset({len(self.classes)} classes over {len(self.base)} elements)"


def _endo_base(phi: MonotoneMap) -> Poset:
    if not phi.is_endo():
        raise ValueError("quotient construction expects a self-map")
    return phi.domain


def _canonical_classes(base, groups):
    """Order classes by least member; return (names, member_masks, class_idx)."""
    ordered = sorted(groups, key=lambda g: g[0])
    names = []
    masks = []
    class_idx = [0] * len(base)
    for ci, group in enumerate(ordered):
        names.append(f"[{base.elements[group[0]]}]")
        mask = 0
        for v in group:
            mask |= 1 << v
            class_idx[v] = ci
        masks.append(mask)
    return names, tuple(masks), class_idx


def phi_components(phi: MonotoneMap) -> QuotientPoset:
    """Quotient by connected components of the undirected map graph.

    Classes merge every x with its image; the class order is the transitive
    closure of the base order pushed onto classes.  That closure is not
    guaranteed to be antisymmetric, so a 2-cycle between distinct classes
    raises QuotientNotAntisymmetric; see ``coequalizer_general`` for the
    construction that cannot fail.
    """
    base = _endo_base(phi)
    n = len(base)
    uf = UnionFind(n)
    for i in range(n):
        uf.union(i, phi.image[i])
    names, member_masks, class_idx = _canonical_classes(base, list(uf.groups().values()))
    m = len(names)
    cadj = [0] * m
    for i in range(n):
        row = 0
        for j in bits(base.up_masks[i]):
            row |= 1 << class_idx[j]
        cadj[class_idx[i]] |= row
    comps = tarjan_scc(cadj)
    for comp in comps:
        if len(comp) > 1:
            a, b = sorted(comp)[:2]
            raise QuotientNotAntisymmetric(names[a], names[b])
    up = dag_reach(cadj, [c[0] for c in comps])
    classes = tuple(base.ids_from(mask) for mask in member_masks)
    return QuotientPoset(base, classes, Poset(names, up), member_masks, class_idx)


def coequalizer_general(phi: MonotoneMap) -> QuotientPoset:
    """Quotient by the smallest preorder extending the order with x = phi(x).

    Classes are the strongly connected parts of that preorder (x and y
    identified when each reaches the other); the class order is its
    condensation, which is a partial order by construction.
    """
    base = _endo_base(phi)
    n = len(base)
    adj = list(base.up_masks)
    for i in range(n):
        j = phi.image[i]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    comps = tarjan_scc(adj)
    comp_of, reach = condensation_reach(adj, comps)
    names, member_masks, class_idx = _canonical_classes(base, [sorted(c) for c in comps])
    m = len(names)
    # reach rows are indexed by emission order; remap to canonical order.
    canon_of_emit = [0] * m
    for e, comp in enumerate(comps):
        canon_of_emit[e] = class_idx[comp[0]]
    up = [0] * m
    for e in range(m):
        row = 0
        for e2 in bits(reach[e]):
            row |= 1 << canon_of_emit[e2]
        up[canon_of_emit[e]] = row
    classes = tuple(base.ids_from(mask) for mask in member_masks)
    return QuotientPoset(base, classes, Poset(names, up), member_masks, class_idx)


class FixpointLattice:
    """All fix-points of the endomorphism induced by a monotone self-map.

    Members are the unions of quotient-ideal classes, streamed in the
    canonical ideal order of the quotient; each one is re-checked to be
    down-closed in the base on emission.  The member count equals the
    quotient's ideal count, so counting never builds the members.
    """

    __slots__ = ("phi", "quotient", "_members")

    def __init__(self, phi: MonotoneMap, quotient: QuotientPoset):
        self.phi = phi
        self.quotient = quotient
        self._members = None

    def iter_members(self):
        base = self.quotient.base
        masks = self.quotient.member_masks
        for qmask in iter_ideal_masks(self.quotient.class_poset):
            union = 0
            for c in bits(qmask):
                union |= masks[c]
            yield OrderIdeal(base, union)

    def count(self, max_count=None) -> int:
        total = 0
        for _ in iter_ideal_masks(self.quotient.class_poset, max_count=max_count):
            total += 1
        return total

    @property
    def members(self) -> tuple:
        if self._members is None:
            self._members = tuple(self.iter_members())
        return self._members

    def source_hom(self, max_size=None) -> LatticeHom:
        """Materialize the endomorphism on the base's ideal lattice."""
        lat = ideal_lattice(self.quotient.base, max_size)
        return hom_from_dual(self.phi, lat, lat)

    def __repr__(self):
        return f"FixpointLattice(quotient of {len(self.quotient)} classes)"


def fixpoints_via_duality(phi: MonotoneMap) -> FixpointLattice:
    """Fix-point lattice of the endomorphism induced by a monotone self-map.

    Runs entirely on the poset side via the authoritative quotient
    construction; no ideal lattice is materialized.
    """
    return FixpointLattice(phi, coequalizer_general(phi))


def hom_quotient(hom: LatticeHom, max_size=None) -> QuotientPoset:
    """Quotient for an explicit endomorphism: lift, dualize, take components."""
    _, lifted = lift_hom(hom, max_size)
    return phi_components(dual_map(lifted))


def algorithm1(hom: LatticeHom, ideal, quotient=None, max_size=None):
    """Fix-point of an explicit endomorphism selected by a quotient ideal.

    ``ideal`` is an OrderIdeal of the quotient's class poset (or an iterable
    of class names, checked for down-closure).  The union of its classes is
    a set of join-irreducibles of the domain; their join is returned.  The
    empty ideal gives bottom, the full one gives top.
    """
    if not hom.is_endo():
        raise ValueError("algorithm1 expects an endomorphism")
    lat = hom.domain
    quo = quotient if quotient is not None else hom_quotient(hom, max_size)
    if isinstance(ideal, OrderIdeal):
        if ideal.carrier != quo.class_poset:
            raise NotAnIdealOfC(ideal.members)
        qmask = ideal.mask
    else:
        names = list(ideal)
        qmask = quo.class_poset.mask_from(names)
        if not quo.class_poset.is_down_closed(qmask):
            raise NotAnIdealOfC(names)
    out = lat.bot_idx
    for c in bits(qmask):
        for i in bits(quo.member_masks[c]):
            out = lat.join_idx(out, lat.index(quo.base.elements[i]))
    return lat.elements[out]


def bruteforce_fixpoints(hom: LatticeHom) -> tuple:
    """Fixed elements of an explicit endomorphism, by exhaustive scan.

    The oracle the dual route is judged against: independent of quotients,
    duals and ideal streaming.
    """
    if not hom.is_endo():
        raise ValueError("fix-points need an endomorphism")
    bound = explicit_lattice_bound()
    if len(hom.domain) > bound:
        raise SizeBoundExceeded(bound, f"lattice has {len(hom.domain)} elements")
    return tuple(x for i, x in enumerate(hom.domain.elements) if hom.image[i] == i)


@dataclass(frozen=True)
class CycleReport:
    """A closed orbit hit by iteration: its entry element and length."""

    entry: str
    length: int


def kleene_iterate(hom: LatticeHom, start, max_steps=None):
    """Iterate x -> f(x) from ``start`` until fixed or a cycle closes.

    Returns the fix-point element, or a CycleReport if the walk re-enters a
    previously seen element.  One of the two happens within |L| steps, so
    MaxStepsExceeded can only fire when ``max_steps`` is set below that.
    """
    if not hom.is_endo():
        raise ValueError("iteration needs an endomorphism")
    lat = hom.domain
    i = lat.index(start)
    seen = {i: 0}
    steps = 0
    while True:
        j = hom.image[i]
        if j == i:
            return lat.elements[i]
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise MaxStepsExceeded(f"no fix-point or cycle within {max_steps} steps")
        if j in seen:
            return CycleReport(entry=lat.elements[j], length=steps - seen[j])
        seen[j] = steps
        i = j
