"""Shared oracles and enumerations.

The brute_* functions are the independent routes the library is judged
against: they work from the definitions by exhaustive search and never call
the code paths they check.
"""

from functools import lru_cache
from itertools import combinations, permutations, product

from dualfix import MonotoneMap, Poset, build_poset, iter_ideal_masks, principal_ideal
from dualfix.bitgraph import bits

LETTERS = "abcdefgh"


# ---------------------------------------------------------------- oracles


def brute_closure_pairs(elements, pairs):
    """Reflexive-transitive closure by naive expansion over pair sets."""
    rel = {(x, x) for x in elements} | {tuple(p) for p in pairs}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def brute_ideal_sets(poset):
    """Every down-closed subset, by filtering the full powerset."""
    els = poset.elements
    out = []
    for r in range(len(els) + 1):
        for combo in combinations(els, r):
            s = set(combo)
            if all(y in s for x in s for y in els if poset.leq(y, x)):
                out.append(frozenset(s))
    return out


def brute_is_monotone(image, poset):
    return all(
        poset.leq_idx(image[i], image[j])
        for i in range(len(poset))
        for j in range(len(poset))
        if poset.leq_idx(i, j)
    )


def brute_join_irreducibles(lat):
    """Definitional scan: non-bottom and never a join of two smaller elements."""
    out = []
    for x in lat.elements:
        if x == lat.bot:
            continue
        if not any(
            lat.join(a, b) == x
            for a in lat.elements
            for b in lat.elements
            if a != x and b != x
        ):
            out.append(x)
    return sorted(out)


def brute_dual_table(hom):
    """min{x | y in f(principal ideal of x)} by direct candidate search."""
    p, q = hom.domain.ideal_base, hom.codomain.ideal_base
    table = {}
    for y in q.elements:
        candidates = []
        for x in p.elements:
            image_name = hom(principal_ideal(p, x).name)
            image_mask = hom.codomain.element_masks[hom.codomain.index(image_name)]
            if image_mask >> q.index(y) & 1:
                candidates.append(x)
        least = [m for m in candidates if all(p.leq(m, x) for x in candidates)]
        assert len(least) == 1, f"no unique minimum for {y}: {candidates}"
        table[y] = least[0]
    return table


def brute_preorder_pairs(poset, phi):
    """Smallest preorder extending the order with x ~ phi(x), by naive closure."""
    pairs = [(x, y) for x in poset.elements for y in poset.elements if poset.leq(x, y)]
    for x in poset.elements:
        pairs.append((x, phi(x)))
        pairs.append((phi(x), x))
    return brute_closure_pairs(poset.elements, pairs)


# ----------------------------------------------------------- enumerations


@lru_cache(maxsize=None)
def labeled_posets(n):
    """Every poset on n labeled elements a..; A001035 counts 1,1,3,19,219,4231."""
    ids = list(LETTERS[:n])
    if n == 0:
        return (build_poset([], []),)
    out = []
    slots = list(combinations(range(n), 2))
    for choice in product((0, 1, 2), repeat=len(slots)):
        rel = [1 << i for i in range(n)]
        for (i, j), c in zip(slots, choice):
            if c == 1:
                rel[i] |= 1 << j
            elif c == 2:
                rel[j] |= 1 << i
        transitive = True
        for i in range(n):
            row = rel[i]
            acc = row
            for k in bits(row):
                acc |= rel[k]
            if acc != row:
                transitive = False
                break
        if transitive:
            out.append(Poset(ids, rel))
    return tuple(out)


def _canonical_form(up_masks):
    """Isomorphism-invariant key: minimal strict-pair tuple over the
    relabelings consistent with a refined per-element invariant."""
    n = len(up_masks)
    strict = [(i, j) for i in range(n) for j in bits(up_masks[i] ^ (1 << i))]
    if not strict:
        return (n,)
    down_masks = [0] * n
    for i in range(n):
        for j in bits(up_masks[i]):
            down_masks[j] |= 1 << i
    inv = [(up_masks[i].bit_count(), down_masks[i].bit_count()) for i in range(n)]
    for _ in range(2):
        inv = [
            (
                inv[i],
                tuple(sorted(inv[j] for j in bits(up_masks[i] ^ (1 << i)))),
                tuple(sorted(inv[j] for j in bits(down_masks[i] ^ (1 << i)))),
            )
            for i in range(n)
        ]
    order = sorted(range(n), key=lambda i: (inv[i], i))
    groups = []
    for i in order:
        if groups and inv[groups[-1][-1]] == inv[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best = None
    for arrangement in product(*(permutations(g) for g in groups)):
        pos = {}
        k = 0
        for block in arrangement:
            for i in block:
                pos[i] = k
                k += 1
        key = tuple(sorted((pos[i], pos[j]) for i, j in strict))
        if best is None or key < best:
            best = key
    return (n,) + best


@lru_cache(maxsize=None)
def noniso_posets(n):
    """One representative per isomorphism class; A000112 counts 1,1,2,5,16,63,318.

    Built by extending each smaller poset with one new maximal element whose
    strict down-set ranges over all order ideals; every poset arises this way
    because removing a maximal element leaves a poset.
    """
    if n == 0:
        return (build_poset([], []),)
    ids = list(LETTERS[:n])
    new_bit = 1 << (n - 1)
    seen = {}
    for smaller in noniso_posets(n - 1):
        for ideal_mask in iter_ideal_masks(smaller):
            up = [
                smaller.up_masks[i] | (new_bit if ideal_mask >> i & 1 else 0)
                for i in range(n - 1)
            ]
            up.append(new_bit)
            canon = _canonical_form(up)
            if canon not in seen:
                seen[canon] = Poset(ids, up)
    return tuple(seen.values())


def noniso_posets_upto(n):
    out = []
    for k in range(n + 1):
        out.extend(noniso_posets(k))
    return out


def monotone_selfmaps(poset):
    """Every monotone self-map, by filtering all tables definitionally."""
    n = len(poset)
    if n == 0:
        return [MonotoneMap(poset, poset, ())]
    strict = [
        (i, j)
        for i in range(n)
        for j in bits(poset.up_masks[i] ^ (1 << i))
    ]
    out = []
    for image in product(range(n), repeat=n):
        if all(poset.leq_idx(image[i], image[j]) for i, j in strict):
            out.append(MonotoneMap(poset, poset, image))
    return out


def random_poset(rng, n, prefix="e"):
    ids = [f"{prefix}{k:02d}" for k in range(n)]
    shuffled = ids[:]
    rng.shuffle(shuffled)
    p = rng.choice([0.1, 0.2, 0.3, 0.5])
    pairs = [
        (shuffled[i], shuffled[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_poset(ids, pairs)


def random_monotone_selfmap(rng, poset):
    """Random monotone self-map: assign images along a linear extension,
    each constrained above the images of everything already below."""
    n = len(poset)
    if n == 0:
        return MonotoneMap(poset, poset, ())
    order = sorted(range(n), key=lambda i: poset.down_masks[i].bit_count())
    full = (1 << n) - 1
    for _ in range(50):
        image = [0] * n
        ok = True
        for v in order:
            allowed = full
            for w in bits(poset.down_masks[v] ^ (1 << v)):
                allowed &= poset.up_masks[image[w]]
            if not allowed:
                ok = False
                break
            image[v] = rng.choice(list(bits(allowed)))
        if ok:
            return MonotoneMap(poset, poset, image)
    return MonotoneMap(poset, poset, [rng.randrange(n)] * n)


def random_monotone_between(rng, domain, codomain):
    """Random monotone map between different posets, same construction."""
    n, m = len(domain), len(codomain)
    if n == 0:
        return MonotoneMap(domain, codomain, ())
    order = sorted(range(n), key=lambda i: domain.down_masks[i].bit_count())
    full = (1 << m) - 1
    for _ in range(50):
        image = [0] * n
        ok = True
        for v in order:
            allowed = full
            for w in bits(domain.down_masks[v] ^ (1 << v)):
                allowed &= codomain.up_masks[image[w]]
            if not allowed:
                ok = False
                break
            image[v] = rng.choice(list(bits(allowed)))
        if ok:
            return MonotoneMap(domain, codomain, image)
    return MonotoneMap(domain, codomain, [rng.randrange(m)] * n)
