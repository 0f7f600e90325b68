"""Approximation schemes and star composition at finite truncation.

A scheme approximates an infinite object S (never materialized) by finite
data: an object map F, maps Phi_A sending morphisms F(A) -> S to morphisms
out of A, chosen morphisms iota_B: B -> S and lifts f -> f'.  All quantifiers
over morphisms into S range over a finite window fixed by the caller.

Three schemes are built in:

* ``LinearScheme``: finite linear orders inside omega.
* ``DualScheme``: the opposite category of rigid surjections, S = omega.
* ``EnumeratedScheme``: ordered members of an age inside a finite stage.

The central identity checked by ``verify_scheme`` is
``Phi_A(u . f') == Phi_B(u) . f`` including equality of codomains.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import relstruct as rs
from . import rigidsurj as rsj
from .fraisse import Age, EnumeratedStructure, OnePointExtension, one_point_extension, saturate_stage
from .quotients import DIRECT, DUAL
from .relstruct import Embedding, Structure, linear_order


class TruncationTooSmall(ValueError):
    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


@dataclass(frozen=True)
class OmegaEmbedding:
    """An embedding of a finite order into omega, as its increasing target list."""

    dom: Structure
    targets: tuple

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(x) for x in self.targets))
        if len(self.targets) != self.dom.size:
            raise ValueError(f"{len(self.targets)} targets for a {self.dom.size}-point domain")
        if any(x < 0 for x in self.targets) or any(a >= b for a, b in zip(self.targets, self.targets[1:])):
            raise ValueError(f"targets {self.targets} are not strictly increasing naturals")

    @property
    def key(self):
        return self.targets

    def to_json(self):
        return list(self.targets)


def _morphism_json(m):
    if isinstance(m, rsj.RigidSurjection):
        return m.to_json()
    if isinstance(m, Embedding):
        return {"dom": m.dom.size, "cod": m.cod.size, "map": list(m.map)}
    if isinstance(m, OmegaEmbedding):
        return {"dom": m.dom.size, "targets": list(m.targets)}
    return m


class ApproxScheme:
    """Interface shared by the built-in schemes."""

    name = "abstract"
    category = DIRECT

    def F(self, A):
        raise NotImplementedError

    def lift(self, f):
        raise NotImplementedError

    def phi(self, A, u):
        """Phi_A(u) for u: F(A) -> S; the codomain is carried by the returned morphism."""
        raise NotImplementedError

    def compose_S(self, u, f):
        """u . f for u: Y -> S and f: X -> Y."""
        raise NotImplementedError

    def maps_into_S(self, X, window) -> list:
        raise NotImplementedError

    def iota(self, B):
        raise NotImplementedError

    def h_iota(self, h, X):
        """h . iota_X for a truncated endomorphism h of S."""
        raise NotImplementedError

    def objects(self, max_size) -> list:
        raise NotImplementedError

    def hom(self, A, B) -> list:
        return self.category.hom(A, B)

    def compose(self, g, f):
        return self.category.compose(g, f)

    def identity(self, A):
        return self.category.identity(A)

    def size(self, A) -> int:
        return A.size

    def star(self, h, f):
        """h * f = Phi_B(h . iota_{F(B)}) . f."""
        B = self.category.target(f)
        return self.compose(self.phi(B, self.h_iota(h, self.F(B))), f)


class LinearScheme(ApproxScheme):
    name = "linear"

    def F(self, A):
        return linear_order(A.size + 1)

    def lift(self, f):
        return Embedding._trusted(self.F(f.dom), self.F(f.cod), f.map + (f.cod.size,))

    def phi(self, A, u):
        m = u.targets[-1]
        return Embedding(A, linear_order(m), u.targets[:-1])

    def compose_S(self, u, f):
        return OmegaEmbedding(f.dom, tuple(u.targets[x] for x in f.map))

    def maps_into_S(self, X, window):
        return [OmegaEmbedding(X, c) for c in itertools.combinations(range(window), X.size)]

    def iota(self, B):
        return OmegaEmbedding(B, tuple(range(B.size)))

    def h_iota(self, h, X):
        if h.dom.size < X.size:
            raise TruncationTooSmall(f"h is known on {h.dom.size} points; need {X.size}", required=X.size)
        return OmegaEmbedding(X, h.targets[: X.size])

    def objects(self, max_size):
        return [linear_order(n) for n in range(1, max_size + 1)]


def shift_map(p: int, by: int = 1) -> OmegaEmbedding:
    """The first p values of i -> i + by, an endomorphism of omega."""
    return OmegaEmbedding(linear_order(p), tuple(i + by for i in range(p)))


class DualScheme(ApproxScheme):
    """Objects are order sizes; a morphism A -> B is a rigid surjection B ->> A."""

    name = "dual-linear"
    category = DUAL

    def F(self, A):
        return A + 1

    def lift(self, f):
        return rsj.extend_prime(f)

    def phi(self, A, u):
        if u.cod_size != A + 1:
            raise ValueError(f"Phi_{A} expects a surjection onto {A + 1} points")
        return rsj.phi_restrict(u)

    def compose_S(self, u, f):
        return rsj.compose_rsurj(f, u)

    def maps_into_S(self, X, window):
        return [u for n in range(X, window + 1) for u in rsj.enumerate_rigid_surjections(n, X)]

    def iota(self, B, length=None):
        return rsj.canonical_pi(B, B if length is None else length)

    def h_iota(self, h, X):
        if h.cod_size < X:
            raise TruncationTooSmall(f"h reaches {h.cod_size} points; need {X}", required=X)
        return rsj.compose_rsurj(rsj.canonical_pi(X, h.cod_size), h)

    def objects(self, max_size):
        return list(range(1, max_size + 1))

    def size(self, A):
        return A


class EnumeratedScheme(ApproxScheme):
    """Ordered age members inside a stage whose order is its labelling."""

    def __init__(self, stage: EnumeratedStructure, J: OnePointExtension | None = None, iotas: dict | None = None):
        """``iotas`` pins iota_B for chosen objects B (maps B -> stage); others use the least embedding."""
        self.stage = stage
        self.J = J or one_point_extension(stage.age)
        self.name = f"enumerated:{stage.age.kind}"
        self._pinned = {}
        for B, m in (iotas or {}).items():
            self._pinned[B] = Embedding(B, stage.structure, m)
        self._iota: dict = dict(self._pinned)

    def F(self, A):
        return self.J.apply(A, ordered_top=True)

    def lift(self, f):
        return self.J.lift(f, ordered_top=True)

    def phi(self, A, u):
        m = max(u.map)
        if u.map[-1] != m:
            raise ValueError("the new point of F(A) must map to the top of the image")
        C = rs.induced_substructure(self.stage.structure, range(m))
        return Embedding(A, C, u.map[:-1])

    def compose_S(self, u, f):
        return Embedding._trusted(f.dom, u.cod, tuple(u.map[x] for x in f.map))

    def maps_into_S(self, X, window=None):
        S = self.stage.structure
        if window is not None and window < S.size:
            S = rs.induced_substructure(S, range(window))
            return [Embedding._trusted(X, self.stage.structure, e.map) for e in rs.enumerate_embeddings(X, S)]
        return rs.enumerate_embeddings(X, S)

    def iota(self, B):
        if B not in self._iota:
            embs = rs.enumerate_embeddings(B, self.stage.structure)
            if not embs:
                raise TruncationTooSmall(f"{B!r} does not embed into the stage", required=self.stage.size + 1)
            self._iota[B] = embs[0]
        return self._iota[B]

    def h_iota(self, h, X):
        i = self.iota(X)
        need = max(i.map) + 1
        if h.dom.size < need:
            raise TruncationTooSmall(f"h is known on {h.dom.size} stage points; need {need}", required=need)
        return Embedding(X, h.cod, tuple(h.map[x] for x in i.map))

    def objects(self, max_size):
        return [A for n in range(1, max_size + 1) for A in self.stage.age.members(n, ordered=True)]

    def __getstate__(self):
        return {"stage": self.stage, "J": self.J, "name": self.name, "_pinned": self._pinned, "_iota": dict(self._pinned)}


def scheme_linear_orders() -> LinearScheme:
    return LinearScheme()


def scheme_dual_orders() -> DualScheme:
    return DualScheme()


def scheme_enumerated(stage: EnumeratedStructure, J: OnePointExtension | None = None, iotas: dict | None = None) -> EnumeratedScheme:
    return EnumeratedScheme(stage, J, iotas)


def get_scheme(name: str, rounds: int = 2, seed_size: int = 2) -> ApproxScheme:
    if name == "linear":
        return LinearScheme()
    if name in ("dual", "dual-linear"):
        return DualScheme()
    if name.startswith("enumerated:"):
        return EnumeratedScheme(saturate_stage(Age(name.split(":", 1)[1]), rounds, seed_size))
    raise ValueError(f"unknown scheme {name!r}")


def identity_holds(scheme: ApproxScheme, f, u, f_lift) -> bool:
    A = scheme.category.source(f)
    B = scheme.category.target(f)
    try:
        got = scheme.phi(A, scheme.compose_S(u, f_lift))
    except ValueError:
        return False
    # embeddings compare with their codomains; rigid surjections carry both sizes
    return got == scheme.compose(scheme.phi(B, u), f)


def find_lift(scheme: ApproxScheme, f, u):
    """Least f' in hom(F(A), F(B)) with Phi_A(u . f') = Phi_B(u) . f, or None."""
    A = scheme.category.source(f)
    B = scheme.category.target(f)
    for cand in scheme.hom(scheme.F(A), scheme.F(B)):
        if identity_holds(scheme, f, u, cand):
            return cand
    return None


def star(scheme: ApproxScheme, h, f):
    return scheme.star(h, f)


def _check_pair(args):
    scheme, A, B, window = args
    failures = []
    count = 0
    misses = 0
    us = scheme.maps_into_S(scheme.F(B), window)
    for f in scheme.hom(A, B):
        fl = scheme.lift(f)
        for u in us:
            count += 1
            if identity_holds(scheme, f, u, fl):
                continue
            misses += 1
            if find_lift(scheme, f, u) is not None:
                continue
            failures.append(
                {
                    "instance": {"A": _obj_json(A), "B": _obj_json(B), "f": _morphism_json(f), "u": _morphism_json(u)},
                    "expected": _morphism_json(scheme.compose(scheme.phi(B, u), f)),
                    "got": _morphism_json(_safe_phi(scheme, A, scheme.compose_S(u, fl))),
                }
            )
    return count, misses, failures


def _safe_phi(scheme, A, v):
    try:
        return scheme.phi(A, v)
    except ValueError as exc:
        return {"error": str(exc)}


def _obj_json(A):
    return A if isinstance(A, int) else A.to_json()


def verify_scheme(scheme: ApproxScheme, max_size: int, window: int | None = None, workers: int = 1) -> dict:
    """Check the approximation identity on every A, B up to ``max_size``,
    every f: A -> B and every u: F(B) -> S inside ``window``.

    A failure is an instance where no f' at all satisfies the identity;
    ``lift_misses`` counts instances where the scheme's own lift did not.
    """
    objs = scheme.objects(max_size)
    tasks = [(scheme, A, B, window) for A in objs for B in objs if scheme.size(A) <= scheme.size(B)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_check_pair, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_check_pair(t) for t in tasks]
    failures = [x for r in results for x in r[2]]
    failures.sort(key=lambda d: repr(sorted(d["instance"].items())))
    return {
        "scheme": scheme.name,
        "caps": {"max_size": max_size, "window": window},
        "instances": sum(r[0] for r in results),
        "lift_misses": sum(r[1] for r in results),
        "failures": failures,
    }


def check_lift_functorial(scheme: ApproxScheme, max_size: int) -> list:
    """Instances (as strings) where lift fails to respect identities or composition."""
    bad = []
    objs = scheme.objects(max_size)
    for A in objs:
        if scheme.lift(scheme.identity(A)) != scheme.identity(scheme.F(A)):
            bad.append(f"identity on {A!r}")
    for A, B, C in itertools.product(objs, repeat=3):
        if not scheme.size(A) <= scheme.size(B) <= scheme.size(C):
            continue
        for f in scheme.hom(A, B):
            for g in scheme.hom(B, C):
                if scheme.lift(scheme.compose(g, f)) != scheme.compose(scheme.lift(g), scheme.lift(f)):
                    bad.append(f"composition {f!r} then {g!r}")
    return bad
