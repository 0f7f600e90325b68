"""Finite enumerated approximants of Fraisse limits.

Supported ages: graphs, digraphs, tournaments and posets (strict order
relation ``P``).  Stages are grown deterministically by realizing every
one-point extension demand over small sets of earlier points; the enumeration
order is creation order.  Also provides the natural one-point extension
functors J and free (strong) amalgamation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import relstruct as rs
from .relstruct import Embedding, Signature, Structure

AGE_KINDS = ("graph", "digraph", "tournament", "poset")
DEFAULT_STAGE_CAP = 400


class StageTooLarge(RuntimeError):
    def __init__(self, message: str, required: int, cap: int):
        super().__init__(message)
        self.required = required
        self.cap = cap


class UnsupportedAge(ValueError):
    pass


def _metric_signature(distances) -> Signature:
    return Signature(tuple((f"D{d}", 2) for d in distances))


@dataclass(frozen=True)
class Age:
    """A class of finite structures given by a membership predicate.

    ``kind`` is one of graph, digraph, tournament, poset, or metric (the last
    only for one-point extensions; ``distances`` lists the allowed values).
    """

    kind: str
    distances: tuple = ()

    def __post_init__(self):
        if self.kind not in AGE_KINDS + ("metric",):
            raise UnsupportedAge(f"unknown age {self.kind!r}")
        if self.kind == "metric" and not self.distances:
            raise UnsupportedAge("metric ages need a nonempty distance set")

    @property
    def relation(self) -> str:
        return "P" if self.kind == "poset" else "E"

    @property
    def signature(self) -> Signature:
        if self.kind == "metric":
            return _metric_signature(self.distances)
        return Signature(((self.relation, 2),))

    def contains(self, A: Structure) -> bool:
        if A.signature != self.signature:
            return False
        if self.kind == "metric":
            return _is_metric(A, self.distances)
        R = A.relation(self.relation)
        if any(a == b for a, b in R):
            return False
        if self.kind == "graph":
            return all((b, a) in R for a, b in R)
        if self.kind == "digraph":
            return True
        if self.kind == "tournament":
            return all(((a, b) in R) != ((b, a) in R) for a, b in itertools.combinations(range(A.size), 2))
        # poset: irreflexive and transitive (antisymmetry follows)
        succ = {}
        for a, b in R:
            succ.setdefault(a, set()).add(b)
        return all(c in succ.get(a, ()) for a, b in R for c in succ.get(b, ()))

    def seed(self, n: int, ordered: bool = True) -> Structure:
        """Deterministic starting structure: edgeless, empty, transitive i->j, antichain."""
        self._require_stage_support()
        R = set()
        if self.kind == "tournament":
            R = set(itertools.combinations(range(n), 2))
        return Structure(self.signature, n, {self.relation: R}, range(n) if ordered else None)

    def members(self, n: int, ordered: bool = True) -> list[Structure]:
        """Every labelled member on 0..n-1 (order = identity when ``ordered``)."""
        self._require_stage_support()
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        out = []
        for bits in range(1 << len(pairs)):
            R = {p for i, p in enumerate(pairs) if bits >> i & 1}
            A = Structure(self.signature, n, {self.relation: R}, range(n) if ordered else None)
            if self.contains(A):
                out.append(A)
        return out

    def _require_stage_support(self):
        if self.kind not in AGE_KINDS:
            raise UnsupportedAge(f"{self.kind} ages support one-point extensions only")


def _is_metric(A: Structure, distances) -> bool:
    dist = {}
    for d, rel in zip(distances, A.rels):
        for a, b in rel:
            if a == b or (a, b) in dist:
                return False
            dist[(a, b)] = d
    for a, b in itertools.permutations(range(A.size), 2):
        if (a, b) not in dist or dist[(a, b)] != dist[(b, a)]:
            return False
    for a, b, c in itertools.permutations(range(A.size), 3):
        if dist[(a, c)] > dist[(a, b)] + dist[(b, c)]:
            return False
    return True


# --- extension types ----------------------------------------------------------

# A type over X (sorted tuple of points) records, for each x in X, the pair
# (new -> x in R, x -> new in R).


_ALL_PAIRS = [(False, False), (True, False), (False, True), (True, True)]
_PAIR_OPTIONS = {
    "graph": [(False, False), (True, True)],
    "digraph": _ALL_PAIRS,
    "tournament": [(True, False), (False, True)],
    "poset": _ALL_PAIRS,  # the age check discards 2-cycles and intransitive types
}


def _pair_code(R, v, x):
    return ((v, x) in R, (x, v) in R)


def consistent_types(age: Age, S: Structure, X: tuple) -> list[tuple]:
    """All types over X realizable inside the age, given S restricted to X."""
    options = _PAIR_OPTIONS[age.kind]
    base = rs.induced_substructure(S, X) if X else None
    out = []
    for tp in itertools.product(options, repeat=len(X)):
        n = len(X)
        R = set(base.relation(age.relation)) if base is not None else set()
        for i, (out_e, in_e) in enumerate(tp):
            if out_e:
                R.add((n, i))
            if in_e:
                R.add((i, n))
        if age.contains(Structure(age.signature, n + 1, {age.relation: R})):
            out.append(tp)
    return out


def realizes(S: Structure, rel: str, v: int, X: tuple, tp: tuple) -> bool:
    if v in X:
        return False
    R = S.relation(rel)
    return all(_pair_code(R, v, x) == c for x, c in zip(X, tp))


def _add_point(age: Age, S: Structure, X: tuple, tp: tuple) -> Structure:
    """S plus a new last point of type tp over X, related to the rest as the age requires."""
    n = S.size
    R = set(S.relation(age.relation))
    for x, (out_e, in_e) in zip(X, tp):
        if out_e:
            R.add((n, x))
        if in_e:
            R.add((x, n))
    if age.kind == "tournament":
        for y in range(n):
            if y not in X:
                R.add((y, n))
    elif age.kind == "poset":
        below = {x for x, c in zip(X, tp) if c == (False, True)}
        above = {x for x, c in zip(X, tp) if c == (True, False)}
        for a, b in S.relation("P"):
            if b in below:
                R.add((a, n))
            if a in above:
                R.add((n, b))
    return Structure(age.signature, n + 1, {age.relation: R}, range(n + 1))


@dataclass(frozen=True)
class EnumeratedStructure:
    """A stage: an age member whose order is its labelling 0 < 1 < ... < n-1."""

    structure: Structure
    age: Age
    created: tuple  # round in which each point was added (0 = seed)
    rounds: int

    @property
    def size(self) -> int:
        return self.structure.size

    def points_before(self, r: int) -> tuple:
        return tuple(i for i, c in enumerate(self.created) if c < r)

    def stage_meta(self) -> dict:
        return {"age": self.age.kind, "rounds": self.rounds, "created": list(self.created), "saturation_level": self.rounds}

    def to_json(self) -> dict:
        d = self.structure.to_json()
        d["stage_meta"] = self.stage_meta()
        return d


def saturate_stage(age: Age | str, rounds: int, seed_size: int = 1, cap: int = DEFAULT_STAGE_CAP) -> EnumeratedStructure:
    """Grow a stage from the seed for ``rounds`` rounds.

    In round r every consistent type over every set X of at most ``rounds``
    points that existed after round r-1 is realized, adding a new point when
    no current point realizes it.  Demands are handled in lexicographic order.
    """
    if isinstance(age, str):
        age = Age(age)
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    S = age.seed(seed_size)
    created = [0] * seed_size
    for r in range(1, rounds + 1):
        base = tuple(range(S.size))
        for size in range(0, rounds + 1):
            for X in itertools.combinations(base, size):
                for tp in consistent_types(age, S, X):
                    if any(realizes(S, age.relation, v, X, tp) for v in range(S.size)):
                        continue
                    if S.size + 1 > cap:
                        raise StageTooLarge(f"stage would exceed {cap} points", required=S.size + 1, cap=cap)
                    S = _add_point(age, S, X, tp)
                    created.append(r)
        if not age.contains(S):
            raise RuntimeError(f"stage left the {age.kind} age in round {r}")
    return EnumeratedStructure(S, age, tuple(created), rounds)


def missing_demands(stage, level: int, over=None) -> list[tuple]:
    """Demands (X, type) with |X| <= level, X inside ``over``, not realized in the stage."""
    if isinstance(stage, EnumeratedStructure):
        S, age = stage.structure, stage.age
        if over is None:
            over = stage.points_before(stage.rounds) if stage.rounds > 0 else range(S.size)
    else:
        raise TypeError("expected an EnumeratedStructure")
    over = tuple(sorted(over))
    out = []
    for size in range(0, level + 1):
        for X in itertools.combinations(over, size):
            for tp in consistent_types(age, S, X):
                if not any(realizes(S, age.relation, v, X, tp) for v in range(S.size)):
                    out.append((X, tp))
    return out


def check_extension_axioms(stage: EnumeratedStructure, level: int, over=None) -> bool:
    """Every consistent one-point extension over at most ``level`` points of ``over`` is realized.

    ``over`` defaults to the points created before the final round.
    """
    if level <= 0:
        return True
    return not missing_demands(stage, level, over)


# --- one-point extensions -------------------------------------------------------


@dataclass(frozen=True)
class OnePointExtension:
    """A functor J adding one point: isolated, top, or max-distance."""

    kind: str
    age: Age = field(default_factory=lambda: Age("graph"))

    def apply(self, A: Structure, ordered_top: bool = False) -> Structure:
        """J(A); with ``ordered_top`` the new point also becomes the order maximum."""
        n = A.size
        tuples = {k: set(v) for k, v in A.tuples.items()}
        if self.kind == "isolated":
            pass
        elif self.kind == "top":
            tuples[self.age.relation] |= {(x, n) for x in range(n)}
        elif self.kind == "max-distance":
            rel = f"D{max(self.age.distances)}"
            tuples[rel] |= {(x, n) for x in range(n)} | {(n, x) for x in range(n)}
        else:
            raise UnsupportedAge(f"unknown extension kind {self.kind!r}")
        order = None
        if A.order is not None or ordered_top:
            base = A.order if A.order is not None else range(n)
            order = list(base) + [n]
        return Structure(A.signature, n + 1, tuples, order)

    def inclusion(self, A: Structure, ordered_top: bool = False) -> Embedding:
        return Embedding(A, self.apply(A, ordered_top), range(A.size))

    def lift(self, f: Embedding, ordered_top: bool = False) -> Embedding:
        """J(f): f on the old points, new point to new point."""
        return Embedding(self.apply(f.dom, ordered_top), self.apply(f.cod, ordered_top), f.map + (f.cod.size,))


def one_point_extension(age: Age | str) -> OnePointExtension:
    if isinstance(age, str):
        age = Age(age)
    if age.kind in ("graph", "digraph"):
        return OnePointExtension("isolated", age)
    if age.kind in ("tournament", "poset"):
        return OnePointExtension("top", age)
    if age.kind == "metric":
        return OnePointExtension("max-distance", age)
    raise UnsupportedAge(age.kind)


# --- strong amalgamation --------------------------------------------------------


def strong_amalgam(age: Age | str, A: Structure, B: Structure, C: Structure, f: Embedding, g: Embedding):
    """Free amalgam D of B and C over A, with embeddings f2: B -> D and g2: C -> D.

    D lists B's points first, then C's points outside g(A).  Tournament cross
    pairs point from the B side to the C side; posets are closed transitively.
    """
    if isinstance(age, str):
        age = Age(age)
    age._require_stage_support()
    for X in (A, B, C):
        if not age.contains(rs.without_order(X)):
            raise ValueError("amalgam inputs must lie in the age")
    if f.dom != A or g.dom != A or f.cod != B or g.cod != C:
        raise ValueError("f and g must embed A into B and C")
    ginv = {g.map[a]: a for a in range(A.size)}
    gmap = []
    nxt = B.size
    for c in range(C.size):
        if c in ginv:
            gmap.append(f.map[ginv[c]])
        else:
            gmap.append(nxt)
            nxt += 1
    n = nxt
    rel = age.relation
    R = set(B.relation(rel)) | {(gmap[a], gmap[b]) for a, b in C.relation(rel)}
    b_only = [b for b in range(B.size) if b not in set(f.map)]
    c_only = [gmap[c] for c in range(C.size) if c not in ginv]
    if age.kind == "tournament":
        R |= {(b, c) for b in b_only for c in c_only}
    elif age.kind == "poset":
        R = _transitive_closure(R, n)
    D = Structure(age.signature, n, {rel: R})
    if not age.contains(D):
        raise RuntimeError("free amalgam left the age")
    f2 = Embedding(rs.without_order(B), D, range(B.size))
    g2 = Embedding(rs.without_order(C), D, gmap)
    return D, f2, g2


def _transitive_closure(R, n):
    reach = {a: {b for x, b in R if x == a} for a in range(n)}
    changed = True
    while changed:
        changed = False
        for a in range(n):
            extra = set()
            for b in reach[a]:
                extra |= reach[b]
            if not extra <= reach[a]:
                reach[a] |= extra
                changed = True
    return {(a, b) for a in range(n) for b in reach[a]}


def check_amalgam(age, A, B, C, f, g) -> bool:
    """Commuting square, images meet exactly in the image of A, D in the age."""
    if isinstance(age, str):
        age = Age(age)
    D, f2, g2 = strong_amalgam(age, A, B, C, f, g)
    square = all(f2.map[f.map[a]] == g2.map[g.map[a]] for a in range(A.size))
    meet = set(f2.map) & set(g2.map) == {f2.map[x] for x in f.map}
    return square and meet and age.contains(D)
