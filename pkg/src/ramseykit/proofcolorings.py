"""Coloring transformations between hom-sets and their quotients.

``quotient_coloring`` pulls a class coloring back to morphisms,
``powerset_coloring`` pushes a morphism coloring down to classes with
set-valued tokens, ``factor_coloring`` splits each morphism into
(class color, group element), and ``orbit_two_coloring`` builds the
two-coloring that separates ``f . G_A`` from ``f . alpha . G_A``.
Each construction comes with a verifier that recounts its promise directly.
"""

from __future__ import annotations

import numpy as np

from .quotients import (
    DIRECT,
    Coloring,
    GroupFamily,
    HomClass,
    get_category,
    hom_classes,
    image_colors,
)

__all__ = [
    "Coloring",
    "quotient_coloring",
    "powerset_coloring",
    "factor_coloring",
    "orbit_two_coloring",
    "check_quotient_coloring",
    "check_powerset_implication",
    "check_factor_bound",
    "check_orbit_coloring",
    "min_colors_seen",
    "powerset_recount",
    "factor_recount",
]


def quotient_coloring(chi: Coloring, category=DIRECT) -> Coloring:
    """chi'(f) = chi(class of f), on every member of every class in chi's domain."""
    dom = []
    assign = {}
    for cls in chi.domain:
        c = chi[cls]
        for m in cls.members:
            dom.append(m)
            assign[m] = c
    dom.sort(key=lambda m: m.key)
    return Coloring(dom, assign)


def powerset_coloring(chi: Coloring, family: GroupFamily, category=DIRECT) -> Coloring:
    """chi'(f / G) = {chi(g) : g in f . G_A} as a frozenset token."""
    cat = get_category(category)
    first = chi.domain[0]
    A, C = cat.source(first), cat.target(first)
    classes = hom_classes(A, C, family, cat)
    assign = {cls: frozenset(chi.color_of_morphism(m) for m in cls.members) for cls in classes}
    return Coloring(classes, assign)


def factor_coloring(chi: Coloring, family: GroupFamily, category=DIRECT) -> Coloring:
    """xi(f) = (chi(class of f), alpha) where f = representative . alpha, alpha in G_A."""
    cat = get_category(category)
    dom = []
    assign = {}
    for cls in chi.domain:
        A = cat.source(cls.representative)
        G = family.group(A, cat)
        c = chi[cls]
        for m in cls.members:
            alphas = [a for a in G if cat.compose(cls.representative, a).key == m.key]
            if len(alphas) != 1:
                raise RuntimeError(f"{len(alphas)} group elements factor {m.key} through its representative")
            dom.append(m)
            assign[m] = (c, alphas[0])
    dom.sort(key=lambda m: m.key)
    return Coloring(dom, assign)


def _closure(gens, cat, A):
    """Subgroup of Aut(A) generated by ``gens`` (finite, so closure under composition suffices)."""
    elems = {cat.identity(A).key: cat.identity(A)}
    frontier = list(elems.values())
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = cat.compose(x, g)
                if y.key not in elems:
                    elems[y.key] = y
                    nxt.append(y)
        frontier = nxt
    return sorted(elems.values(), key=lambda a: a.key)


def orbit_two_coloring(A, C, family: GroupFamily, alpha, category=DIRECT) -> Coloring:
    """Two-coloring of classes(A, C) on which every w: A -> C sees both colors.

    hom(A, C) splits into orbits of H = <alpha, G_A> acting on the right; with
    f_i the least member of each orbit, ``f_i . G_A`` gets 0 and
    ``f_i . alpha . G_A`` gets 1.  Classes not of either form get 0.
    """
    cat = get_category(category)
    G = family.group(A, cat)
    if alpha.key in {g.key for g in G}:
        raise ValueError("alpha lies in G_A; no separating coloring exists")
    if cat.compose(alpha, cat.identity(A)).key not in {a.key for a in cat.automorphisms(A)}:
        raise ValueError("alpha is not an automorphism of A")
    classes = hom_classes(A, C, family, cat)
    if not classes:
        raise ValueError("hom(A, C) is empty")
    H = _closure(list(G) + [alpha], cat, A)
    index = {}
    for cls in classes:
        for m in cls.members:
            index[m.key] = cls
    assign = {}
    done = set()
    for cls in classes:
        f = cls.representative
        if f.key in done:
            continue
        orbit = {cat.compose(f, h).key for h in H}
        done |= orbit
        fi = cat.from_key(A, C, min(orbit))
        assign.setdefault(index[fi.key], 0)
        assign[index[cat.compose(fi, alpha).key]] = 1
    for cls in classes:
        assign.setdefault(cls, 0)
    return Coloring(classes, assign)


# --- verifiers ---------------------------------------------------------------


def min_colors_seen(chi: Coloring, B, category=DIRECT) -> int:
    """min over w: B -> C of |chi(w . hom(A, B))| (morphism or class colorings alike)."""
    cat = get_category(category)
    first = chi.domain[0]
    rep = first.representative if isinstance(first, HomClass) else first
    A, C = cat.source(rep), cat.target(rep)
    hom_AB = cat.hom(A, B)
    return min(len(image_colors(chi, w, hom_AB, cat)) for w in cat.hom(B, C))


def check_quotient_coloring(chi: Coloring, B, category=DIRECT) -> bool:
    """|chi'(w . hom(A, B))| = |chi(w . classes(A, B))| for every w."""
    cat = get_category(category)
    rep = chi.domain[0].representative
    A, C = cat.source(rep), cat.target(rep)
    chi2 = quotient_coloring(chi, cat)
    hom_AB = cat.hom(A, B)
    return all(
        len(image_colors(chi, w, hom_AB, cat)) == len(image_colors(chi2, w, hom_AB, cat)) for w in cat.hom(B, C)
    )


def check_powerset_implication(chi: Coloring, B, family: GroupFamily, category=DIRECT) -> bool:
    """Per w, with n = |chi'(w . classes(A, B))|: |chi(w . hom(A, B))| <= n * |G_A|."""
    cat = get_category(category)
    first = chi.domain[0]
    A, C = cat.source(first), cat.target(first)
    g = len(family.group(A, cat))
    chi2 = powerset_coloring(chi, family, cat)
    classes_AB = hom_classes(A, B, family, cat)
    hom_AB = cat.hom(A, B)
    for w in cat.hom(B, C):
        n = len({chi2.color_of_morphism(cat.compose(w, c.representative)) for c in classes_AB})
        if len(image_colors(chi, w, hom_AB, cat)) > n * g:
            return False
    return True


def check_factor_bound(chi: Coloring, B, family: GroupFamily, category=DIRECT) -> bool:
    """With n = min_w |chi(w . classes)|, every w sees at least n * |G_A| colors of xi."""
    cat = get_category(category)
    rep = chi.domain[0].representative
    A = cat.source(rep)
    g = len(family.group(A, cat))
    n = min_colors_seen(chi, B, cat)
    xi = factor_coloring(chi, family, cat)
    return min_colors_seen(xi, B, cat) >= n * g


def check_orbit_coloring(chi: Coloring, category=DIRECT) -> bool:
    """Every w: A -> C sees both colors on w . classes(A, A)."""
    cat = get_category(category)
    rep = chi.domain[0].representative
    A, C = cat.source(rep), cat.target(rep)
    autos = cat.hom(A, A)
    for w in cat.hom(A, C):
        seen = set()
        for a in autos:
            seen.add(chi.color_of_morphism(cat.compose(w, a)))
            if len(seen) == 2:
                break
        if len(seen) < 2:
            return False
    return True


# --- exhaustive recounts -------------------------------------------------------
#
# Colorings are enumerated as integers: bit i of a 2-coloring code is the color
# of item i.  Color sets are bitmasks, so "number of colors seen" is a popcount
# of an OR over the relevant items, evaluated for a whole block of codes at once.

_CHUNK = 1 << 20


def _popcount(x):
    return np.bitwise_count(x)


def _two_coloring_blocks(n_items, cap):
    total = 1 << n_items
    if total > cap:
        raise ValueError(f"{total} colorings exceed the recount cap {cap}")
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.uint32)
        yield codes


def powerset_recount(A, B, C, family: GroupFamily, k: int = 2, category=DIRECT, cap: int = 1 << 24) -> dict:
    """Every k-coloring chi of hom(A, C) (k <= 2): per w,
    |chi(w . hom(A, B))| <= |chi'(w . classes(A, B))| * |G_A| where chi' is the
    set-valued quotient coloring.  Returns counts of checked pairs and violations."""
    cat = get_category(category)
    homAC = cat.hom(A, C)
    idx = {f.key: i for i, f in enumerate(homAC)}
    classes = hom_classes(A, C, family, cat)
    cls_members = [[idx[m.key] for m in c.members] for c in classes]
    cls_of = {}
    for ci, c in enumerate(classes):
        for m in c.members:
            cls_of[m.key] = ci
    g = len(family.group(A, cat))
    hom_AB = cat.hom(A, B)
    classes_AB = hom_classes(A, B, family, cat)
    ws = []
    for w in cat.hom(B, C):
        ws.append(
            (
                sorted({idx[cat.compose(w, f).key] for f in hom_AB}),
                sorted({cls_of[cat.compose(w, c.representative).key] for c in classes_AB}),
            )
        )
    checked = violations = 0
    if k == 1:
        # one color: both sides see exactly one color
        return {"checked": len(ws), "violations": 0}
    for codes in _two_coloring_blocks(len(homAC), cap):
        bits = [((codes >> i) & 1).astype(np.uint8) for i in range(len(homAC))]
        # token of each class: bit0 = some member has color 0, bit1 = some member has color 1
        tok = []
        for mem in cls_members:
            any1 = np.zeros(codes.shape, dtype=np.uint8)
            all1 = np.ones(codes.shape, dtype=np.uint8)
            for i in mem:
                any1 |= bits[i]
                all1 &= bits[i]
            tok_id = (1 - all1) + 2 * any1  # 1: {0}, 2: {1}, 3: {0, 1}
            tok.append(np.left_shift(np.uint8(1), tok_id.astype(np.uint8)))
        for mor, cls in ws:
            seen = np.zeros(codes.shape, dtype=np.uint8)
            for i in mor:
                seen |= np.left_shift(np.uint8(1), bits[i])
            toks = np.zeros(codes.shape, dtype=np.uint8)
            for ci in cls:
                toks |= tok[ci]
            violations += int(np.count_nonzero(_popcount(seen) > _popcount(toks) * g))
            checked += len(codes)
    return {"checked": checked, "violations": violations}


def factor_recount(A, B, C, family: GroupFamily, k: int = 2, category=DIRECT, cap: int = 1 << 16) -> dict:
    """Every k-coloring chi of classes(A, C): with n = min_w |chi(w . classes(A, B))|,
    the factor coloring xi sees at least n * |G_A| values on every w . hom(A, B)."""
    cat = get_category(category)
    classes = hom_classes(A, C, family, cat)
    G = family.group(A, cat)
    g = len(G)
    gidx = {a.key: i for i, a in enumerate(G)}
    # (class index, group index) of every morphism A -> C
    pos = {}
    for ci, c in enumerate(classes):
        for a in G:
            pos[cat.compose(c.representative, a).key] = (ci, gidx[a.key])
    hom_AB = cat.hom(A, B)
    classes_AB = hom_classes(A, B, family, cat)
    ws = []
    for w in cat.hom(B, C):
        ws.append(
            (
                sorted({pos[cat.compose(w, f).key] for f in hom_AB}),
                sorted({pos[cat.compose(w, c.representative).key][0] for c in classes_AB}),
            )
        )
    n_cls = len(classes)
    total = k**n_cls
    if k * g > 64:
        raise ValueError("k * |G_A| values do not fit a 64-bit mask")
    if total > cap:
        raise ValueError(f"{total} colorings exceed the recount cap {cap}")
    codes = np.arange(total, dtype=np.uint32)
    cols = [(codes // k**i) % k for i in range(n_cls)]
    n_min = None
    xi_min = None
    for pairs, cls in ws:
        seen = np.zeros(codes.shape, dtype=np.uint64)
        for ci in cls:
            seen |= np.left_shift(np.uint64(1), cols[ci].astype(np.uint64))
        pc = _popcount(seen)
        n_min = pc if n_min is None else np.minimum(n_min, pc)
        xs = np.zeros(codes.shape, dtype=np.uint64)
        for ci, gi in pairs:
            xs |= np.left_shift(np.uint64(1), (cols[ci] * g + gi).astype(np.uint64))
        pc = _popcount(xs)
        xi_min = pc if xi_min is None else np.minimum(xi_min, pc)
    violations = int(np.count_nonzero(xi_min.astype(np.int64) < n_min.astype(np.int64) * g))
    return {"checked": total, "violations": violations}
