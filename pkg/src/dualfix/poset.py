"""Finite partial orders, order ideals, and monotone maps.

Element identifiers are opaque strings at the API edge.  Internally every
structure works on dense indices into the identifier list (kept sorted so
index order equals identifier order), and subsets are int bitmasks.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .bitgraph import bits, dag_reach, mask_of, tarjan_scc, transpose_masks
from .errors import (
    AntisymmetryViolation,
    DuplicateElement,
    NotMonotone,
    SizeBoundExceeded,
    UnknownElement,
)


class Poset:
    """Immutable finite partial order.

    ``up_masks[i]`` holds {j | i <= j} and ``down_masks[i]`` holds
    {j | j <= i} as bitmasks; both are reflexive-transitively closed.
    Use :func:`build_poset` to construct one from generating pairs.
    """

    __slots__ = ("elements", "up_masks", "down_masks", "_index")

    def __init__(self, elements, up_masks, down_masks=None):
        # Trusted constructor: callers guarantee a closed partial order on a
        # sorted identifier list.
        self.elements = tuple(elements)
        assert list(self.elements) == sorted(self.elements)
        self.up_masks = tuple(up_masks)
        if down_masks is None:
            down_masks = transpose_masks(self.up_masks)
        self.down_masks = tuple(down_masks)
        self._index = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.up_masks == other.up_masks

    def __hash__(self):
        return hash((self.elements, self.up_masks))

    def __repr__(self):
        return f"Poset({len(self)} elements, {sum(m.bit_count() for m in self.up_masks)} relations)"

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def leq(self, x, y) -> bool:
        return bool(self.up_masks[self.index(x)] >> self.index(y) & 1)

    def leq_idx(self, i, j) -> bool:
        return bool(self.up_masks[i] >> j & 1)

    def mask_from(self, members: Iterable) -> int:
        return mask_of(self.index(x) for x in members)

    def ids_from(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in bits(mask))

    def down_closure(self, mask: int) -> int:
        out = mask
        for i in bits(mask):
            out |= self.down_masks[i]
        return out

    def is_down_closed(self, mask: int) -> bool:
        for i in bits(mask):
            if self.down_masks[i] & ~mask:
                return False
        return True

    def minimal_mask(self) -> int:
        return mask_of(i for i in range(len(self)) if self.down_masks[i] == 1 << i)

    def covers(self) -> list:
        """Covering pairs (lesser, greater): the transitive reduction."""
        out = []
        for i in range(len(self)):
            strict_up = self.up_masks[i] ^ (1 << i)
            for j in bits(strict_up):
                strict_down = self.down_masks[j] ^ (1 << j)
                if strict_up & strict_down == 0:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def restrict(self, indices) -> "Poset":
        """Sub-poset on the given element indices, order inherited."""
        idxs = sorted(indices)
        keep = mask_of(idxs)
        pos = {v: k for k, v in enumerate(idxs)}
        up = []
        for v in idxs:
            row = 0
            for w in bits(self.up_masks[v] & keep):
                row |= 1 << pos[w]
            up.append(row)
        return Poset([self.elements[v] for v in idxs], up)


def build_poset(elements, pairs) -> Poset:
    """Build a poset from elements and generating (lesser, greater) pairs.

    The stored relation is the reflexive-transitive closure of ``pairs``;
    pairs need not be covering pairs and reflexive pairs are harmless.  A
    closure cycle between distinct elements means the input is a preorder
    and raises AntisymmetryViolation.
    """
    seen = set()
    for x in elements:
        if x in seen:
            raise DuplicateElement(x)
        seen.add(x)
    ids = sorted(seen)
    index = {x: i for i, x in enumerate(ids)}
    adj = [0] * len(ids)
    for lo, hi in pairs:
        if lo not in index:
            raise UnknownElement(lo, "in pairs")
        if hi not in index:
            raise UnknownElement(hi, "in pairs")
        adj[index[lo]] |= 1 << index[hi]
    comps = tarjan_scc(adj)
    for comp in comps:
        if len(comp) > 1:
            a, b = sorted(comp)[:2]
            raise AntisymmetryViolation(ids[a], ids[b])
    up = dag_reach(adj, [c[0] for c in comps])
    return Poset(ids, up)


class OrderIdeal:
    """A down-closed subset of a poset, stored as a member bitmask.

    Construction validates down-closure, so every live instance is a real
    order ideal of its carrier.
    """

    __slots__ = ("carrier", "mask")

    def __init__(self, carrier: Poset, members):
        mask = members if isinstance(members, int) else carrier.mask_from(members)
        if not carrier.is_down_closed(mask):
            raise ValueError(f"not down-closed: {list(carrier.ids_from(mask))}")
        self.carrier = carrier
        self.mask = mask

    @property
    def members(self) -> tuple:
        return self.carrier.ids_from(self.mask)

    @property
    def name(self) -> str:
        """Canonical set-literal name, e.g. ``{a,b}``."""
        return "{" + ",".join(self.members) + "}"

    def __contains__(self, x):
        return bool(self.mask >> self.carrier.index(x) & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __eq__(self, other):
        if not isinstance(other, OrderIdeal):
            return NotImplemented
        return self.carrier == other.carrier and self.mask == other.mask

    def __hash__(self):
        return hash((self.carrier, self.mask))

    def __repr__(self):
        return f"OrderIdeal({self.name})"


def principal_ideal(poset: Poset, x) -> OrderIdeal:
    """The least ideal containing x: everything at or below it."""
    return OrderIdeal(poset, poset.down_masks[poset.index(x)])


def is_order_ideal(poset: Poset, members) -> bool:
    """True iff the subset is down-closed in the poset."""
    return poset.is_down_closed(poset.mask_from(members))


def iter_ideal_masks(poset: Poset, max_count=None) -> Iterator[int]:
    """Stream the bitmasks of every order ideal in canonical order.

    Canonical order: ascending cardinality, then lexicographic on the sorted
    member identifiers.  Ideals of one size are produced by extending the
    previous size by one minimal element of the complement, so memory tracks
    the widest size class, not the full count.  With ``max_count`` set,
    raises SizeBoundExceeded as soon as the total provably exceeds it.
    """
    down = poset.down_masks
    n = len(poset)
    full = (1 << n) - 1
    yield 0
    count = 1
    layer = [0]
    while layer:
        grown = set()
        for m in layer:
            comp = full & ~m
            rest = comp
            while rest:
                low = rest & -rest
                rest ^= low
                i = low.bit_length() - 1
                if down[i] & comp == low:  # minimal in the complement
                    grown.add(m | low)
                    if max_count is not None and count + len(grown) > max_count:
                        raise SizeBoundExceeded(max_count, "order ideal count")
        if not grown:
            return
        layer = sorted(grown, key=_lex_key)
        count += len(layer)
        yield from layer


def _lex_key(mask):
    return tuple(bits(mask))


def enumerate_ideals(poset: Poset) -> Iterator[OrderIdeal]:
    """Yield every order ideal exactly once, in canonical order.

    The empty ideal comes first and the full carrier last.  The count can be
    exponential in the poset size; consume accordingly.
    """
    for mask in iter_ideal_masks(poset):
        yield OrderIdeal(poset, mask)


class MonotoneMap:
    """A total order-preserving map between posets.

    Build through :func:`is_monotone`; ``unchecked`` skips only the order
    check and exists for oracle harnesses that need deliberately broken maps.
    """

    __slots__ = ("domain", "codomain", "image")

    def __init__(self, domain: Poset, codomain: Poset, image):
        self.domain = domain
        self.codomain = codomain
        self.image = tuple(image)

    @classmethod
    def identity(cls, poset: Poset) -> "MonotoneMap":
        return cls(poset, poset, range(len(poset)))

    @classmethod
    def unchecked(cls, table, domain: Poset, codomain: Poset) -> "MonotoneMap":
        return cls(domain, codomain, _total_image(table, domain, codomain))

    @property
    def table(self) -> dict:
        return {x: self.codomain.elements[self.image[i]] for i, x in enumerate(self.domain.elements)}

    def __call__(self, x):
        return self.codomain.elements[self.image[self.domain.index(x)]]

    def after(self, other: "MonotoneMap") -> "MonotoneMap":
        """Composition self . other (apply ``other`` first)."""
        if other.codomain != self.domain:
            raise ValueError("composition domains do not match")
        return MonotoneMap(other.domain, self.codomain, (self.image[i] for i in other.image))

    def is_endo(self) -> bool:
        return self.domain == self.codomain

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.image == other.image
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.image))

    def __repr__(self):
        return f"MonotoneMap({self.table!r})"


def _total_image(table, domain, codomain):
    for key in table:
        if key not in domain:
            raise UnknownElement(key, "not in the domain")
    image = []
    for x in domain.elements:
        if x not in table:
            raise UnknownElement(x, "no image supplied")
        image.append(codomain.index(table[x]))
    return image


def is_monotone(table, domain: Poset, codomain: Poset) -> MonotoneMap:
    """Validate a raw element table as a monotone map and wrap it.

    Raises NotMonotone carrying the first pair x <= y whose images are not
    ordered, scanning pairs in identifier order.
    """
    image = _total_image(table, domain, codomain)
    for i in range(len(domain)):
        for j in bits(domain.up_masks[i]):
            if not codomain.leq_idx(image[i], image[j]):
                raise NotMonotone(domain.elements[i], domain.elements[j])
    return MonotoneMap(domain, codomain, image)
