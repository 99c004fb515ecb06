"""Transport of maps between ideal lattices and their base posets.

A homomorphism of ideal lattices determines a monotone map the other way
between the base posets, and vice versa.  ``lift_hom`` renames an arbitrary
explicit endomorphism into ideal-lattice form so both directions apply.
"""

from __future__ import annotations

from .bitgraph import bits
from .errors import NoMinimum
from .lattice import LatticeHom, birkhoff_eta, ideal_lattice, is_homomorphism, join_irreducibles
from .poset import MonotoneMap, is_monotone


def dual_map(hom: LatticeHom) -> MonotoneMap:
    """The monotone map dual to an ideal-lattice homomorphism.

    For f: O(P) -> O(Q) the dual sends each base point y of Q to the least
    x in P with y in f(down-set of x).  A validated homomorphism always
    yields a unique least candidate; NoMinimum flags a map that merely
    pretends to be one.
    """
    dom, cod = hom.domain, hom.codomain
    if dom.ideal_base is None or cod.ideal_base is None:
        raise ValueError("dual_map needs ideal lattices; use lift_hom first")
    p, q = dom.ideal_base, cod.ideal_base
    # f(down-set of x) for each x in P, as member masks over Q.
    images = [
        cod.element_masks[hom.image[dom.ideal_index(p.down_masks[x])]]
        for x in range(len(p))
    ]
    table = {}
    for y in range(len(q)):
        candidates = 0
        for x in range(len(p)):
            if images[x] >> y & 1:
                candidates |= 1 << x
        if not candidates:
            raise NoMinimum(q.elements[y])
        least = None
        for x in bits(candidates):
            if candidates & ~p.up_masks[x] == 0:
                least = x
                break
        if least is None:
            raise NoMinimum(q.elements[y])
        table[q.elements[y]] = p.elements[least]
    return is_monotone(table, q, p)


def hom_from_dual(phi: MonotoneMap, domain_lattice=None, codomain_lattice=None, max_size=None) -> LatticeHom:
    """The ideal-lattice homomorphism induced by a monotone map.

    phi: Q -> P induces f: O(P) -> O(Q) with f(a) the preimage of a under
    phi.  Already-materialized ideal lattices of P and Q may be passed to
    avoid rebuilding them in enumeration loops.
    """
    q, p = phi.domain, phi.codomain
    dom = domain_lattice if domain_lattice is not None else ideal_lattice(p, max_size)
    cod = codomain_lattice if codomain_lattice is not None else ideal_lattice(q, max_size)
    assert dom.ideal_base == p and cod.ideal_base == q
    nq = len(q)
    table = {}
    for i, a in enumerate(dom.elements):
        amask = dom.element_masks[i]
        pre = 0
        for y in range(nq):
            if amask >> phi.image[y] & 1:
                pre |= 1 << y
        table[a] = cod.elements[cod.ideal_index(pre)]
    return is_homomorphism(table, dom, cod)


def lift_hom(hom: LatticeHom, max_size=None):
    """Rename an explicit endomorphism into ideal-lattice form.

    Returns (base, lifted) where base is the poset of join-irreducibles of
    the domain and lifted is the conjugate of ``hom`` by the element ->
    irreducibles-below-it bijection, validated on the ideal lattice of base.
    """
    if not hom.is_endo():
        raise ValueError("lift_hom expects an endomorphism")
    lat = hom.domain
    base = join_irreducibles(lat)
    eta = birkhoff_eta(lat)
    lifted = ideal_lattice(base, max_size)
    table = {}
    for a in lat.elements:
        src = lifted.elements[lifted.ideal_index(eta[a].mask)]
        dst = lifted.elements[lifted.ideal_index(eta[hom(a)].mask)]
        table[src] = dst
    return base, is_homomorphism(table, lifted, lifted)
