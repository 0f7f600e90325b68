"""Finite relational structures, embeddings, substructures and automorphisms.

Universes are always ``0..n-1``.  A structure may carry a linear order, stored
as the sequence of points from least to greatest; embeddings between two
ordered structures must be monotone.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    relations: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {names}")
        for name, arity in self.relations:
            if arity < 1:
                raise ValueError(f"relation {name!r} has arity {arity} < 1")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    def arity(self, name: str) -> int:
        for n, a in self.relations:
            if n == name:
                return a
        raise KeyError(name)


GRAPH_SIGNATURE = Signature((("E", 2),))
EMPTY_SIGNATURE = Signature(())


class Structure:
    """A finite relational structure with optional linear order.

    ``tuples`` maps relation names to sets of integer tuples.  Instances are
    immutable and hashable; equality is componentwise.
    """

    __slots__ = ("signature", "size", "rels", "order", "_rank", "_hash")

    def __init__(self, signature: Signature, size: int, tuples=None, order=None):
        if size < 0:
            raise ValueError("size must be nonnegative")
        tuples = dict(tuples or {})
        unknown = set(tuples) - set(signature.names)
        if unknown:
            raise ValueError(f"tuples given for unknown relations {sorted(unknown)}")
        rels = []
        for name, arity in signature.relations:
            ts = frozenset(tuple(int(x) for x in t) for t in tuples.get(name, ()))
            for t in ts:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} in {name!r} does not have arity {arity}")
                if any(x < 0 or x >= size for x in t):
                    raise ValueError(f"tuple {t} in {name!r} leaves the universe 0..{size - 1}")
            rels.append(ts)
        if order is not None:
            order = tuple(int(x) for x in order)
            if sorted(order) != list(range(size)):
                raise ValueError(f"order {order} is not a permutation of 0..{size - 1}")
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "rels", tuple(rels))
        object.__setattr__(self, "order", order)
        rank = None
        if order is not None:
            rank = [0] * size
            for r, x in enumerate(order):
                rank[x] = r
            rank = tuple(rank)
        object.__setattr__(self, "_rank", rank)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Structure is immutable")

    def __reduce__(self):
        return (Structure, (self.signature, self.size, self.tuples, self.order))

    @property
    def tuples(self) -> dict[str, frozenset]:
        return dict(zip(self.signature.names, self.rels))

    @property
    def rank(self):
        """Position of each point in the order, or None if unordered."""
        return self._rank

    def relation(self, name: str) -> frozenset:
        return self.rels[self.signature.names.index(name)]

    def has_order(self) -> bool:
        return self.order is not None

    def _key(self):
        return (self.signature, self.size, self.rels, self.order)

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        parts = ", ".join(f"{n}={sorted(r)}" for n, r in zip(self.signature.names, self.rels))
        o = f", order={list(self.order)}" if self.order is not None else ""
        return f"Structure(size={self.size}, {parts}{o})"

    def to_json(self) -> dict:
        d = {
            "signature": [[n, a] for n, a in self.signature.relations],
            "size": self.size,
            "tuples": {n: sorted(list(t) for t in r) for n, r in zip(self.signature.names, self.rels)},
        }
        if self.order is not None:
            d["order"] = list(self.order)
        return d

    @classmethod
    def from_json(cls, data) -> "Structure":
        if isinstance(data, str):
            data = json.loads(data)
        sig = Signature(tuple((str(n), int(a)) for n, a in data.get("signature", [])))
        return cls(sig, int(data["size"]), data.get("tuples", {}), data.get("order"))


def linear_order(n: int) -> Structure:
    """The n-element chain 0 < 1 < ... < n-1 with no other relations."""
    return Structure(EMPTY_SIGNATURE, n, {}, range(n))


def graph(n: int, edges: Iterable[Sequence[int]] = (), ordered: bool = False) -> Structure:
    """Undirected simple graph; each edge is stored in both orientations."""
    ts = set()
    for a, b in edges:
        if a == b:
            raise ValueError("graphs are loopless")
        ts.add((a, b))
        ts.add((b, a))
    return Structure(GRAPH_SIGNATURE, n, {"E": ts}, range(n) if ordered else None)


def complete_graph(n: int, ordered: bool = False) -> Structure:
    return graph(n, itertools.combinations(range(n), 2), ordered)


def path_graph(n: int) -> Structure:
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def with_order(A: Structure, order=None) -> Structure:
    return Structure(A.signature, A.size, A.tuples, range(A.size) if order is None else order)


def without_order(A: Structure) -> Structure:
    return Structure(A.signature, A.size, A.tuples, None)


class Embedding:
    """An embedding ``dom -> cod`` given by the image vector ``map``.

    Construction validates injectivity, the relation biconditional and, when
    both sides are ordered, monotonicity.
    """

    __slots__ = ("dom", "cod", "map")

    def __init__(self, dom: Structure, cod: Structure, map: Sequence[int]):
        m = tuple(int(x) for x in map)
        problem = embedding_violation(dom, cod, m)
        if problem:
            raise ValueError(f"not an embedding: {problem}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "map", m)

    @classmethod
    def _trusted(cls, dom, cod, m) -> "Embedding":
        e = object.__new__(cls)
        object.__setattr__(e, "dom", dom)
        object.__setattr__(e, "cod", cod)
        object.__setattr__(e, "map", m)
        return e

    def __setattr__(self, key, value):
        raise AttributeError("Embedding is immutable")

    def __reduce__(self):
        return (Embedding._trusted, (self.dom, self.cod, self.map))

    def __eq__(self, other):
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.map == other.map and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash((self.map, self.dom.size, self.cod.size))

    def __repr__(self):
        return f"Embedding({list(self.map)})"

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def key(self) -> tuple[int, ...]:
        return self.map

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(self.map))

    def to_json(self) -> list[int]:
        return list(self.map)


def embedding_violation(dom: Structure, cod: Structure, m: Sequence[int]) -> str | None:
    """Return a description of the first broken embedding condition, or None."""
    if dom.signature != cod.signature:
        return "signature mismatch"
    if len(m) != dom.size:
        return f"map has length {len(m)}, expected {dom.size}"
    if any(x < 0 or x >= cod.size for x in m):
        return "map leaves the codomain"
    if len(set(m)) != len(m):
        return "map is not injective"
    if dom.order is not None and cod.order is not None:
        rb = cod.rank
        img = [rb[m[x]] for x in dom.order]
        if any(a >= b for a, b in zip(img, img[1:])):
            return "map is not order-preserving"
    for (name, arity), ra, rb in zip(dom.signature.relations, dom.rels, cod.rels):
        for t in itertools.product(range(dom.size), repeat=arity):
            if (t in ra) != (tuple(m[x] for x in t) in rb):
                return f"relation {name!r} not preserved at {t}"
    return None


def is_embedding(dom: Structure, cod: Structure, m: Sequence[int]) -> bool:
    return embedding_violation(dom, cod, tuple(m)) is None


def _check_same_signature(A: Structure, B: Structure):
    if A.signature != B.signature:
        raise SignatureMismatch(f"{A.signature} vs {B.signature}")


def _iter_embedding_maps(A: Structure, B: Structure):
    """Backtracking over partial maps, assigning points 0, 1, ... in turn."""
    n = A.size
    if n > B.size:
        return
    ordered = A.order is not None and B.order is not None
    ra, rb = A.rank, B.rank
    rels = [(arity, RA, RB) for (_, arity), RA, RB in zip(A.signature.relations, A.rels, B.rels)]
    m = [0] * n
    used = [False] * B.size

    def consistent(i):
        y = m[i]
        if ordered:
            ri, ry = ra[i], rb[y]
            for j in range(i):
                if (ra[j] < ri) != (rb[m[j]] < ry):
                    return False
        for arity, RA, RB in rels:
            if arity == 1:
                if ((i,) in RA) != ((y,) in RB):
                    return False
                continue
            # tuples over 0..i that mention i at least once
            for t in itertools.product(range(i + 1), repeat=arity):
                if i not in t:
                    continue
                if (t in RA) != (tuple(m[x] for x in t) in RB):
                    return False
        return True

    def rec(i):
        if i == n:
            yield tuple(m)
            return
        for y in range(B.size):
            if used[y]:
                continue
            m[i] = y
            if consistent(i):
                used[y] = True
                yield from rec(i + 1)
                used[y] = False

    yield from rec(0)


def enumerate_embeddings(A: Structure, B: Structure) -> list[Embedding]:
    """All embeddings A -> B, lexicographic in their map vectors."""
    _check_same_signature(A, B)
    return [Embedding._trusted(A, B, m) for m in _iter_embedding_maps(A, B)]


def induced_substructure(B: Structure, subset: Iterable[int]) -> Structure:
    """B restricted to ``subset``, relabelled 0.. in increasing label order."""
    pts = sorted(set(int(x) for x in subset))
    if not pts:
        raise ValueError("induced substructure needs a nonempty subset")
    if pts[0] < 0 or pts[-1] >= B.size:
        raise ValueError(f"subset {pts} is not inside 0..{B.size - 1}")
    relabel = {x: i for i, x in enumerate(pts)}
    tuples = {}
    for name, rel in zip(B.signature.names, B.rels):
        tuples[name] = {tuple(relabel[x] for x in t) for t in rel if all(x in relabel for x in t)}
    order = None
    if B.order is not None:
        order = [relabel[x] for x in B.order if x in relabel]
    return Structure(B.signature, len(pts), tuples, order)


def substructure_copies(A: Structure, B: Structure) -> list[tuple[int, ...]]:
    """Subsets of B's universe inducing a copy of A, sorted lexicographically."""
    _check_same_signature(A, B)
    return sorted({tuple(sorted(m)) for m in _iter_embedding_maps(A, B)})


def automorphisms(A: Structure) -> list[Embedding]:
    return enumerate_embeddings(A, A)


def identity(A: Structure) -> Embedding:
    return Embedding._trusted(A, A, tuple(range(A.size)))


def compose_embeddings(g: Embedding, f: Embedding) -> Embedding:
    """``g . f`` (first f, then g)."""
    if f.cod != g.dom:
        raise ValueError("cannot compose: codomain of f differs from domain of g")
    gm = g.map
    return Embedding._trusted(f.dom, g.cod, tuple(gm[x] for x in f.map))


def inverse(f: Embedding) -> Embedding:
    if f.dom.size != f.cod.size:
        raise ValueError("only bijective embeddings have inverses")
    inv = [0] * f.dom.size
    for i, y in enumerate(f.map):
        inv[y] = i
    return Embedding(f.cod, f.dom, inv)


def _profile(A: Structure):
    """Isomorphism invariant: per relation, tuple count and sorted per-point position counts."""
    prof = []
    for (_, arity), rel in zip(A.signature.relations, A.rels):
        counts = [[0] * arity for _ in range(A.size)]
        for t in rel:
            for pos, x in enumerate(t):
                counts[x][pos] += 1
        prof.append((len(rel), sorted(tuple(c) for c in counts)))
    return prof


def is_isomorphic(A: Structure, B: Structure) -> bool:
    _check_same_signature(A, B)
    if A.size != B.size or (A.order is None) != (B.order is None):
        return False
    if _profile(A) != _profile(B):
        return False
    return next(_iter_embedding_maps(A, B), None) is not None


def all_graphs(n: int, ordered: bool = False) -> list[Structure]:
    """Every labelled simple graph on 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for bits in range(1 << len(pairs)):
        out.append(graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1], ordered))
    return out


def graphs_up_to_iso(max_n: int) -> list[Structure]:
    """One representative per isomorphism type, for 1 <= n <= max_n."""
    reps: list[Structure] = []
    for n in range(1, max_n + 1):
        found: list[Structure] = []
        for G in all_graphs(n):
            if not any(is_isomorphic(G, H) for H in found):
                found.append(G)
        reps.extend(found)
    return reps
