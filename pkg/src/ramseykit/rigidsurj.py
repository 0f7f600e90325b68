"""Rigid surjections between finite linear orders ``n = {0 < ... < n-1}``.

Also holds the truncation maps used by the dual compactness argument: the
canonical surjection ``canonical_pi``, the top-point extension ``extend_prime``,
the cut ``phi_restrict`` at the first occurrence of the top value, and
``star_finite`` which strings them together.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence


def rigidity_violation(values: Sequence[int], cod_size: int) -> str | None:
    seen = 0
    for i, v in enumerate(values):
        if v < 0 or v >= cod_size:
            return f"value {v} at {i} outside 0..{cod_size - 1}"
        if v > seen:
            return f"value {v} at {i} appears before {seen}"
        if v == seen:
            seen += 1
    if seen != cod_size:
        return f"not surjective: only 0..{seen - 1} of 0..{cod_size - 1} hit"
    return None


@dataclass(frozen=True, order=True)
class RigidSurjection:
    """A rigid surjection ``dom_size -> cod_size``.

    Rigid means the first occurrence of b precedes the first occurrence of
    b' whenever b < b', so ``values`` is a restricted growth string.
    """

    dom_size: int
    cod_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.dom_size:
            raise ValueError(f"{len(self.values)} values for domain of size {self.dom_size}")
        if self.cod_size < 1:
            raise ValueError("codomain must be nonempty")
        problem = rigidity_violation(self.values, self.cod_size)
        if problem:
            raise ValueError(f"not a rigid surjection: {problem}")

    @classmethod
    def of(cls, values: Sequence[int]) -> "RigidSurjection":
        values = tuple(values)
        return cls(len(values), max(values) + 1 if values else 0, values)

    @classmethod
    def _trusted(cls, dom_size, cod_size, values) -> "RigidSurjection":
        f = object.__new__(cls)
        object.__setattr__(f, "dom_size", dom_size)
        object.__setattr__(f, "cod_size", cod_size)
        object.__setattr__(f, "values", values)
        return f

    @property
    def key(self) -> tuple[int, ...]:
        return self.values

    def __call__(self, i: int) -> int:
        return self.values[i]

    def first_occurrence(self, b: int) -> int:
        return self.values.index(b)

    def to_json(self) -> dict:
        return {"dom": self.dom_size, "cod": self.cod_size, "values": list(self.values)}

    @classmethod
    def from_json(cls, data) -> "RigidSurjection":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls.of(data)
        return cls(int(data["dom"]), int(data["cod"]), tuple(data["values"]))


def identity_rsurj(n: int) -> RigidSurjection:
    return RigidSurjection._trusted(n, n, tuple(range(n)))


def enumerate_rigid_surjections(n: int, m: int) -> list[RigidSurjection]:
    """All of RSurj(n, m), lexicographic in the value vectors."""
    if m < 1 or n < m:
        raise ValueError(f"RSurj({n}, {m}) requires n >= m >= 1")
    out = []
    vals = [0] * n

    def rec(i, seen):
        # seen = number of distinct values used so far; the rest must still fit
        if i == n:
            if seen == m:
                out.append(RigidSurjection._trusted(n, m, tuple(vals)))
            return
        if m - seen > n - i:
            return
        for v in range(min(seen + 1, m)):
            vals[i] = v
            rec(i + 1, seen + 1 if v == seen else seen)

    vals[0] = 0
    rec(1, 1)
    return out


def compose_rsurj(f: RigidSurjection, g: RigidSurjection) -> RigidSurjection:
    """``f o g``: apply g first.  g: n -> m, f: m -> l gives n -> l."""
    if g.cod_size != f.dom_size:
        raise ValueError(f"cannot compose {f.dom_size}->{f.cod_size} after {g.dom_size}->{g.cod_size}")
    fv = f.values
    return RigidSurjection._trusted(g.dom_size, f.cod_size, tuple(fv[x] for x in g.values))


def canonical_pi(m: int, n: int) -> RigidSurjection:
    """Truncation to n points of the surjection j -> min(j, m-1)."""
    if m < 1 or n < m:
        raise ValueError(f"canonical_pi({m}, {n}) requires n >= m >= 1")
    return RigidSurjection._trusted(n, m, tuple(min(j, m - 1) for j in range(n)))


def extend_prime(f: RigidSurjection) -> RigidSurjection:
    """s -> t extended to (s+1) -> (t+1) by sending the new last point to the new top."""
    return RigidSurjection._trusted(f.dom_size + 1, f.cod_size + 1, f.values + (f.cod_size,))


def phi_restrict(f: RigidSurjection) -> RigidSurjection:
    """Cut f: n -> r+1 before the first occurrence of r, giving d -> r."""
    r = f.cod_size - 1
    if r < 1:
        raise ValueError("phi_restrict needs a codomain with at least 2 points")
    d = f.values.index(r)
    return RigidSurjection._trusted(d, r, f.values[:d])


def star_finite(h: RigidSurjection, f: RigidSurjection) -> RigidSurjection:
    """``f o phi_s(pi_{s+1} o h)`` for f: s -> r.  h must reach at least s+1 points."""
    s = f.dom_size
    if h.cod_size < s + 1:
        raise ValueError(f"h has codomain {h.cod_size}; star with a map from {s} needs at least {s + 1}")
    u = compose_rsurj(canonical_pi(s + 1, h.cod_size), h)
    return compose_rsurj(f, phi_restrict(u))
