"""Hom-set quotients ``hom(A, B) / ~G`` for a family of automorphism groups.

Two categories are supported.  ``DIRECT`` has finite structures as objects
and embeddings as morphisms.  ``DUAL`` is the opposite of the category of
finite linear orders with rigid surjections: its objects are order sizes and
a morphism ``A -> B`` is a rigid surjection ``B ->> A``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from . import relstruct as rs
from . import rigidsurj as rsj


class DirectCategory:
    name = "direct"

    def hom(self, A, B):
        return rs.enumerate_embeddings(A, B)

    def compose(self, g, f):
        """``g . f``: f first."""
        return rs.compose_embeddings(g, f)

    def identity(self, A):
        return rs.identity(A)

    def automorphisms(self, A):
        return rs.automorphisms(A)

    def source(self, f):
        return f.dom

    def target(self, f):
        return f.cod

    def from_key(self, A, B, key):
        return rs.Embedding(A, B, key)


class DualCategory:
    name = "dual"

    def hom(self, A: int, B: int):
        if B < A:
            return []
        return rsj.enumerate_rigid_surjections(B, A)

    def compose(self, g, f):
        # g . f in the opposite category is f o g on rigid surjections
        return rsj.compose_rsurj(f, g)

    def identity(self, A: int):
        return rsj.identity_rsurj(A)

    def automorphisms(self, A: int):
        return [rsj.identity_rsurj(A)]

    def source(self, f):
        return f.cod_size

    def target(self, f):
        return f.dom_size

    def from_key(self, A, B, key):
        return rsj.RigidSurjection(B, A, tuple(key))


DIRECT = DirectCategory()
DUAL = DualCategory()
CATEGORIES = {"direct": DIRECT, "dual": DUAL}


def get_category(category) -> Any:
    if isinstance(category, str):
        return CATEGORIES[category.lower()]
    return category


class MissingGroup(KeyError):
    pass


@dataclass(frozen=True)
class GroupFamily:
    """A choice of subgroup G_A of Aut(A) for every object A.

    ``kind`` is ``"id"``, ``"aut"`` or ``"explicit"``.  Explicit families map
    objects to lists of automorphism map vectors and are checked to be
    subgroups when first resolved.
    """

    kind: str = "id"
    explicit: tuple = ()

    @classmethod
    def identity_only(cls) -> "GroupFamily":
        return cls("id")

    @classmethod
    def full_automorphism(cls) -> "GroupFamily":
        return cls("aut")

    @classmethod
    def from_groups(cls, groups: dict) -> "GroupFamily":
        items = tuple((obj, tuple(sorted(tuple(p) for p in perms))) for obj, perms in groups.items())
        fam = cls("explicit", items)
        for obj, _ in items:
            fam.group(obj, DIRECT if isinstance(obj, rs.Structure) else DUAL)
        return fam

    def group(self, A, category=DIRECT) -> list:
        """G_A as a list of morphisms A -> A, sorted by map vector."""
        return list(_resolve_group(self, A, get_category(category).name))

    def _build(self, A, cat) -> list:
        if self.kind == "id":
            return [cat.identity(A)]
        if self.kind == "aut":
            return sorted(cat.automorphisms(A), key=lambda a: a.key)
        if self.kind == "explicit":
            for obj, perms in self.explicit:
                if obj == A:
                    elems = [cat.from_key(A, A, p) for p in perms]
                    _check_subgroup(elems, cat, A)
                    return elems
            raise MissingGroup(f"explicit family has no group for {A!r}")
        raise ValueError(f"unknown family kind {self.kind!r}")

    def to_json(self):
        if self.kind != "explicit":
            return self.kind
        return {"explicit": [[o.to_json() if hasattr(o, "to_json") else o, [list(p) for p in ps]] for o, ps in self.explicit]}


@functools.lru_cache(maxsize=4096)
def _resolve_group(family: GroupFamily, A, category_name: str) -> tuple:
    return tuple(family._build(A, CATEGORIES[category_name]))


def _check_subgroup(elems, cat, A):
    keys = {a.key for a in elems}
    if cat.identity(A).key not in keys:
        raise ValueError("explicit group lacks the identity")
    for a in elems:
        for b in elems:
            if cat.compose(a, b).key not in keys:
                raise ValueError("explicit group is not closed under composition")
    # finite + closed under composition + identity => closed under inverses


@dataclass(frozen=True)
class HomClass:
    """The class ``representative . G_A`` held by its lexicographically least member."""

    representative: Any
    members: tuple

    def __hash__(self):
        return hash(self.representative.key)

    def __eq__(self, other):
        if not isinstance(other, HomClass):
            return NotImplemented
        return self.representative == other.representative and self.members == other.members

    def __len__(self):
        return len(self.members)

    def __contains__(self, f):
        return f in self.members

    @property
    def key(self):
        return self.representative.key

    def to_json(self):
        return {"representative": _jsonable(self.representative), "members": [_jsonable(m) for m in self.members]}


def _jsonable(m):
    if isinstance(m, rsj.RigidSurjection):
        return list(m.values)
    return m.to_json()


def class_of(f, family: GroupFamily, category=DIRECT) -> HomClass:
    cat = get_category(category)
    G = family.group(cat.source(f), cat)
    members = sorted({cat.compose(f, a) for a in G}, key=lambda m: m.key)
    return HomClass(members[0], tuple(members))


def hom_classes(A, B, family: GroupFamily, category=DIRECT) -> list[HomClass]:
    """Partition of hom(A, B) into G_A-classes, sorted by representative."""
    cat = get_category(category)
    G = family.group(A, cat)
    seen = set()
    out = []
    for f in cat.hom(A, B):
        if f.key in seen:
            continue
        members = sorted({cat.compose(f, a) for a in G}, key=lambda m: m.key)
        seen.update(m.key for m in members)
        out.append(HomClass(members[0], tuple(members)))
    out.sort(key=lambda c: c.key)
    return out


def act_left(w, cls: HomClass, family: GroupFamily, category=DIRECT) -> HomClass:
    """``w . (f / ~G) = (w . f) / ~G``."""
    cat = get_category(category)
    return class_of(cat.compose(w, cls.representative), family, cat)


def class_size_law(A, B, family: GroupFamily, category=DIRECT) -> bool:
    """Every class of hom(A, B) has exactly |G_A| members."""
    cat = get_category(category)
    g = len(family.group(A, cat))
    return all(len(c) == g for c in hom_classes(A, B, family, cat))


@dataclass
class Coloring:
    """A total map from ``domain`` (classes or morphisms) to color tokens.

    Tokens are any hashable values: ints, frozensets, tuples.
    """

    domain: list
    assignment: dict
    _lookup: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        missing = [d for d in self.domain if d not in self.assignment]
        if missing:
            raise ValueError(f"coloring is partial: {len(missing)} elements uncolored")

    def __getitem__(self, x):
        return self.assignment[x]

    def colors(self) -> set:
        return set(self.assignment[d] for d in self.domain)

    def color_of_morphism(self, f) -> Hashable:
        """Color of a morphism, looking through classes when the domain is classes."""
        if self._lookup is None:
            lk = {}
            for d in self.domain:
                c = self.assignment[d]
                if isinstance(d, HomClass):
                    for m in d.members:
                        lk[m.key] = c
                else:
                    lk[d.key] = c
            self._lookup = lk
        return self._lookup[f.key]

    def normalized(self) -> "Coloring":
        """Renumber tokens 0, 1, ... in order of first appearance along the domain."""
        ren: dict = {}
        for d in self.domain:
            ren.setdefault(self.assignment[d], len(ren))
        return Coloring(list(self.domain), {d: ren[self.assignment[d]] for d in self.domain})

    def to_json(self):
        return [[_jsonable(d.representative if isinstance(d, HomClass) else d), _token_json(self.assignment[d])] for d in self.domain]


def _token_json(t):
    if isinstance(t, frozenset):
        return sorted(_token_json(x) for x in t)
    if isinstance(t, tuple):
        return [_token_json(x) for x in t]
    if hasattr(t, "key"):
        return list(t.key)
    return t


def image_colors(chi: Coloring, w, hom_AB: Iterable, category=DIRECT) -> set:
    """``chi(w . hom(A, B))`` as a set of tokens (works for class or morphism colorings)."""
    cat = get_category(category)
    return {chi.color_of_morphism(cat.compose(w, f)) for f in hom_AB}
